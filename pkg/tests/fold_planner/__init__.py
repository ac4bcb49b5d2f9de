"""Tests Fold Planner."""
