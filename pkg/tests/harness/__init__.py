"""Tests Harness."""
