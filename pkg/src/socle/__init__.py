"""Exact computation of socles, indices of reducibility, local-cohomology
invariants and Hilbert-Samuel coefficients for graded rings S/J."""

from .ideals import Ideal, QuotientRingModel
from .poly import QQ, PolyRing, PrimeField

__all__ = ["Ideal", "PolyRing", "PrimeField", "QQ", "QuotientRingModel"]
