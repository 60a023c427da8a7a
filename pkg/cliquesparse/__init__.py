"""
cliquesparse

Desk-scale toolkit for clique-sparse graph classes featuring:
- Maximal-clique hypergraphs and the true-twin quotient graph
- Clique-sparsity parameters with exhaustive inequality checks
- Exact mu-treewidth and rankwidth solvers with independent oracles
- Induced Menger linkages and separators lifted through the quotient
- Forbidden-pattern certificates and vertex-minor reductions
"""

__version__ = "1.0.0"
__author__ = "cliquesparse maintainers"
__description__ = "Clique-incidence structure, widths and certificates for small graphs"
