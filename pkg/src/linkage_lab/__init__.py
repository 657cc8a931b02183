"""Token-sliding movement synthesis, slim/regular/stable path-decomposition
machinery, linkage checking, societies, and the counterexample families, at
exhaustively verifiable scale."""

__version__ = "0.1.0"
