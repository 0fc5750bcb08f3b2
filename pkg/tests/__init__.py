"""
Test package for resurf
"""
