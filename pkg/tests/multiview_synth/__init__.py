"""Tests Multi-view Synth."""
