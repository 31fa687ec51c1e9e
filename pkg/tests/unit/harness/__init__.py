"""Tests for harness"""
