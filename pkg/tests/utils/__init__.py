"""Tests for greensfn utilities."""
