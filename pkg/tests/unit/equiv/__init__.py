"""Tests for equiv"""
