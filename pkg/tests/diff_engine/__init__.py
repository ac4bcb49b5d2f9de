"""Tests Diff Engine."""
