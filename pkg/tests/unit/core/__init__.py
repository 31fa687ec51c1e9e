"""Unit tests for the core functionality.

Covers schema validation, budget and certificate resolution, seeds files and JSON records.
"""
