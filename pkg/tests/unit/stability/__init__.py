"""Tests for stability"""
