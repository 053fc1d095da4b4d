"""qclique - 1-factorization oracles and amplitude amplification for k-CLIQUE search."""

__version__ = "0.1.0"
