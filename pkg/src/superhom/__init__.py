"""Exact weighted homology of graded Lie superalgebras of multivector fields."""

__version__ = "0.1.0"
