"""Tests Temporal Ponita."""
