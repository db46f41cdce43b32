"""Tests for the correlation backends."""
