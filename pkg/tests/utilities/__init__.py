"""Tests Utilities."""
