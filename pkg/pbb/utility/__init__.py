"""Utility definitions shared by the pbb packages"""
