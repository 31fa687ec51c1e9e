"""Tests for the pbb project.

Unit tests exercise each package in process. Integration tests additionally rely on the
installed distribution metadata and drive the console entry end to end.
"""
