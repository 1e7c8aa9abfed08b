"""Exact-arithmetic toolkit: slope mutations of simple bundle data on an
elliptic curve, seed-driven invariant tables with their closed forms and
limit slopes, and Koszul duality of quadratic presentations."""

__version__ = "0.1.0"
