"""Tests Sign Data."""
