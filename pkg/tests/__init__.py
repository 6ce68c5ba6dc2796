"""Tests for the power index process."""
