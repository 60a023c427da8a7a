"""
Seeded corpora and the property suites behind the verify command.
"""
