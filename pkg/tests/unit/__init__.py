"""Unit tests for the pbb project"""
