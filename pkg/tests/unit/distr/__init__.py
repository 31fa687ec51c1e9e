"""Tests for distr"""
