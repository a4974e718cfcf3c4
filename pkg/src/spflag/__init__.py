"""Exact Schubert calculus on symplectic flag manifolds.

Submodules build on each other: weyl (signed permutations), polyring
(exact multivariate polynomials with divided differences), qbasis
(Q-tilde polynomials, type A Schubert polynomials, tableau counts),
symplectic (the c-basis and its structure constants), invforms
(invariant differential forms on the compact group model), arakelov
(Bott-Chern forms and arithmetic intersection numbers), cli.
"""

__version__ = "0.1.0"
