"""U(1,1) branching rules verified in finite quotients K/K_N."""

__version__ = "1.0.0"
