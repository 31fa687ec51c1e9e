"""Test helpers shipped with pbb"""
