"""
Test suite for cliquesparse.
"""
