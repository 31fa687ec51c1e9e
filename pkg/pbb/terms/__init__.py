"""Syntax of non-deterministic and probabilistic processes"""
