"""
Utility helpers shared by the solvers.
"""
