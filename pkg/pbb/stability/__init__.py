"""Stability, stabilization, class vectors and cancellation"""
