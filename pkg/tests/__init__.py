"""Test suite for fixture-fetcher."""
