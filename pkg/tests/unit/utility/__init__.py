"""Unit tests for the utility functions.

Covers name canonicalization, rational formatting, the plugin base and the exception types.
"""
