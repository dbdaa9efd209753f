"""Capture containers and scene files."""
