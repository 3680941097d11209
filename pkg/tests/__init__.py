"""Tests for negshannon."""
