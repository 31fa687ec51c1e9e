"""Tests for terms"""
