"""Tests Sign Graph."""
