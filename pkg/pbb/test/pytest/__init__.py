"""Pytest plugin for pbb"""
