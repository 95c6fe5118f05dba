from math import comb

import pytest
from hypothesis import given, strategies as st

from socle.ideals import Ideal, QuotientRingModel, colon, ideal_power, maximal_ideal
from socle.invariants import (
    InfiniteLengthError,
    hilbert_function,
    index_of_reducibility,
    is_m_primary,
    krull_dim,
    length,
    socle_basis,
    socle_dimension,
)
from socle.poly import PolyRing, Polynomial, PrimeField

from conftest import ideal

FP = PrimeField(32003)


def test_m_primary(S2, S4):
    assert is_m_primary(ideal(S2, "x", "y"))
    assert not is_m_primary(ideal(S2, "x"))
    assert is_m_primary(ideal(S4, "x*z", "x*w", "y*z", "y*w", "x - z", "y - w"))


def test_lengths(S2, planes, planes_q0):
    assert length(ideal(S2, "x", "y")) == 1
    for n in range(5):
        assert length(ideal_power(maximal_ideal(S2), n + 1)) == comb(n + 2, 2)
    assert length(planes.lift(planes_q0)) == 3
    with pytest.raises(InfiniteLengthError):
        length(ideal(S2, "x"))


def test_index_of_reducibility(S2, planes, planes_q0):
    assert index_of_reducibility(ideal(S2, "x", "y")) == 1
    for n in range(5):
        assert index_of_reducibility(ideal_power(maximal_ideal(S2), n + 1)) == n + 1
    X = planes.lift(planes_q0)
    assert index_of_reducibility(X) == 2
    assert length(X) - length(colon(X, planes.m())) == 2
    assert len(socle_basis(X)) == 2


def test_krull_dim(S2, planes):
    assert krull_dim(QuotientRingModel(S2, [])) == 2
    assert krull_dim(planes) == 2
    assert krull_dim(QuotientRingModel(S2, S2.gens())) == 0


def test_hilbert_functions(S2, planes):
    assert hilbert_function(Ideal(S2, []), 5) == [1, 2, 3, 4, 5, 6]
    assert hilbert_function(planes.J, 5) == [1, 4, 6, 8, 10, 12]
    assert hilbert_function(maximal_ideal(S2), 3) == [1, 0, 0, 0]


def test_socle_dimension_of_principal_parameter(planes, planes_q):
    # (x^2 - z^2) R : m over (x^2 - z^2) R is one dimensional though not of finite length
    X = planes.lift([planes_q[0]])
    assert socle_dimension(X) == 1


def test_socle_dimension_matches_ir(S3):
    X = ideal(S3, "x^2", "y^3", "z^2", "x*y*z")
    assert socle_dimension(X) == index_of_reducibility(X)


# ---- dense linear algebra oracle, independent of Groebner bases

P = 32003
R3 = PolyRing(FP, ["x", "y", "z"])


def _rank_mod_p(rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % P), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], P - 2, P)
        rows[rank] = [x * inv % P for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % P:
                f = rows[i][c]
                rows[i] = [(a - f * b) % P for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _degree_piece(gens, t):
    """Spanning vectors of X_t in the monomial basis of S_t."""
    basis = R3.monomials_of_degree(t)
    index = {e: i for i, e in enumerate(basis)}
    rows = []
    for g in gens:
        dg = g.total_degree()
        if dg > t:
            continue
        for m in R3.monomials_of_degree(t - dg):
            row = [0] * len(basis)
            for e, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] = c
            rows.append(row)
    return basis, rows


def oracle_hilbert(gens, t):
    basis, rows = _degree_piece(gens, t)
    return len(basis) - (_rank_mod_p(rows) if rows else 0)


def oracle_socle_in_degree(gens, t):
    """dim of {f in S_t : x_i f in X_{t+1} for all i} modulo X_t."""
    basis, rows_t = _degree_piece(gens, t)
    up, rows_up = _degree_piece(gens, t + 1)
    index = {e: i for i, e in enumerate(up)}
    r_up = _rank_mod_p(rows_up) if rows_up else 0
    n = len(basis)
    blocks = []
    for i in range(3):
        images = []
        for e in basis:
            row = [0] * len(up)
            f = list(e)
            f[i] += 1
            row[index[tuple(f)]] = 1
            images.append(row)
        blocks.append(images)
    # kernel of S_t -> (S_{t+1}/X_{t+1})^3, f -> (x_i f); X_{t+1} stacked block-diagonally
    stacked = []
    for i in range(3):
        for r in rows_up:
            stacked.append([0] * (i * len(up)) + r + [0] * ((2 - i) * len(up)))
    base_rank = 3 * r_up
    combined = stacked + [sum((blocks[i][j] for i in range(3)), []) for j in range(n)]
    image_rank = _rank_mod_p(combined) - base_rank if combined else 0
    kernel = n - image_rank
    return kernel - (_rank_mod_p(rows_t) if rows_t else 0)


hom = lambda d: st.lists(st.tuples(st.sampled_from(R3.monomials_of_degree(d)), st.integers(1, 100)),
                         min_size=1, max_size=3).map(lambda ts: Polynomial(R3, dict(ts)))


@given(st.lists(hom(2), min_size=1, max_size=3), hom(3))
def test_hilbert_function_matches_linear_algebra(gs, extra):
    X = Ideal(R3, gs + [extra])
    hf = hilbert_function(X, 5)
    assert hf == [oracle_hilbert(X.gens, t) for t in range(6)]


@given(st.lists(hom(2), min_size=1, max_size=3))
def test_socle_matches_linear_algebra(gs):
    X = Ideal(R3, gs + [R3.parse(t) for t in ("x^4", "y^4", "z^4")])
    total = sum(oracle_socle_in_degree(X.gens, t) for t in range(10))
    assert index_of_reducibility(X) == total
    assert length(X) == sum(oracle_hilbert(X.gens, t) for t in range(10))
