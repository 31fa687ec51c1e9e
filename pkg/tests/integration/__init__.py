"""Integration tests for the pbb project.

These need the package installed so that the 'pbb.suite' entry points resolve.
"""
