"""Tests for semantics"""
