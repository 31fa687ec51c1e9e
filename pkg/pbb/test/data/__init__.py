"""Data for the shipped test helpers"""
