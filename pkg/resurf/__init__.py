"""
resurf: exact analysis of cubic pencils and rational elliptic surfaces
"""

__version__ = "0.1.0"
