"""Exact finite-support distributions and their combinatorics"""
