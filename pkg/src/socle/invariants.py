"""Finite-length invariants of quotients S/X: length, socle, index of
reducibility, Krull dimension and Hilbert functions."""

from __future__ import annotations

from .ideals import Ideal, colon, maximal_ideal
from .linalg import rank, row_echelon
from .poly import Polynomial
from .staircase import Staircase


class InfiniteLengthError(ValueError):
    pass


def staircase(X):
    return X.staircase()


def is_m_primary(X):
    """True iff S/X is finite dimensional (m-primary for homogeneous X)."""
    return X.staircase().is_finite()


def length(X):
    """dim_k S/X, the number of standard monomials of X's basis."""
    st = X.staircase()
    if not st.is_finite():
        raise InfiniteLengthError("quotient has infinite length")
    return st.count()


def socle_colon(X):
    return colon(X, maximal_ideal(X.ring))


def index_of_reducibility(X):
    """ir(X) = length(X) - length(X : m) = dim_k Soc(S/X)."""
    if not is_m_primary(X):
        raise InfiniteLengthError("index of reducibility needs a finite-length quotient")
    return length(X) - length(socle_colon(X))


def socle_dimension(X, Y=None):
    """dim_k (X : m)/X. Also valid when S/X has infinite length, since m
    kills (X : m)/X: the normal forms of generators of X : m span it."""
    if Y is None:
        Y = socle_colon(X)
    G = X.gb()
    vecs = [G.normal_form(g) for g in Y.gb().generators]
    vecs = [v for v in vecs if not v.is_zero()]
    if not vecs:
        return 0
    monos = sorted({e for v in vecs for e in v.terms})
    zero = X.ring.field.zero
    return rank([[v.terms.get(e, zero) for e in monos] for v in vecs], X.ring.field)


def socle_basis(X):
    """Polynomials in normal form whose classes are a basis of Soc(S/X)."""
    Y = socle_colon(X)
    G = X.gb()
    vecs = [G.normal_form(g) for g in Y.gb().generators]
    vecs = [v for v in vecs if not v.is_zero()]
    if not vecs:
        return []
    monos = sorted({e for v in vecs for e in v.terms}, reverse=True)
    zero = X.ring.field.zero
    rows, _ = row_echelon([[v.terms.get(e, zero) for e in monos] for v in vecs], X.ring.field)
    return [Polynomial(X.ring, {e: c for e, c in zip(monos, r) if c}) for r in rows]


def krull_dim(model_or_ideal):
    """Dimension of S/J via the leading-term ideal of J."""
    J = getattr(model_or_ideal, "J", model_or_ideal)
    return J.staircase().dimension()


def hilbert_function(X, t_max):
    """[dim_k (S/X)_t for t = 0..t_max]; X should be homogeneous."""
    if not X.is_homogeneous():
        raise ValueError("hilbert_function needs a homogeneous ideal")
    return X.staircase().hilbert_function(t_max)


def relative_length(X, Y):
    """length(Y/X) for X inside Y, both of finite colength."""
    return length(X) - length(Y)


__all__ = [
    "InfiniteLengthError",
    "Ideal",
    "Staircase",
    "hilbert_function",
    "index_of_reducibility",
    "is_m_primary",
    "krull_dim",
    "length",
    "relative_length",
    "socle_basis",
    "socle_dimension",
    "staircase",
]
