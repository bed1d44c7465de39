"""
Test Suite
"""

