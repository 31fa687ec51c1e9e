"""Random generation, brute-force oracles and property suites"""
