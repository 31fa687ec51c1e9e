"""Operational semantics, combined transitions and weak transitions over a finite universe"""
