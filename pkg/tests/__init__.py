"""Tests for corrinv."""
