"""Core data types, configuration and IO for pbb"""
