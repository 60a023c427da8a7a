"""
Graph structures and solvers.

Each module holds one area: graphs and formats, cliques and the quotient,
parameters, generators, decompositions, induced Menger, patterns and rank.
"""
