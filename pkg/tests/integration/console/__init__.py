"""Tests for console"""
