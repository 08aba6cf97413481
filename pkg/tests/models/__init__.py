"""Tests for greensfn models."""
