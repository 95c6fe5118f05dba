"""Index-of-reducibility sequences for powers of parameter ideals, the
upper bound and equality for them, the socle-ideal colon identity, and
Hilbert-Samuel coefficient fits.

Every ideal of R = S/J is handled through its preimage in S (see
:mod:`socle.ideals`); "(0 :_R m)" lifts to J : m.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .homological import (
    check_parameter_system,
    depth,
    h_vector,
    is_generalized_cm,
    is_standard,
    module_min_gens,
    ext_module,
    quotient_by_h0,
    s_vector,
)
from .ideals import (
    Ideal,
    QuotientRingModel,
    colon,
    ideal_equal,
    ideal_power,
    ideal_sum,
    intersect,
)
from .invariants import index_of_reducibility, krull_dim, length, socle_dimension
from .report import Record


class FitError(ValueError):
    def __init__(self, message, tail=None):
        self.tail = tail
        super().__init__(message)


class HypothesisError(ValueError):
    pass


@dataclass
class ParameterSystem:
    elements: tuple
    name: str = "q"

    def __post_init__(self):
        self.elements = tuple(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def truncation(self, j):
        return self.elements[:j]


def _elements(q):
    return tuple(q.elements) if isinstance(q, ParameterSystem) else tuple(q)


# ---------------------------------------------------------------- caches


def _cached(Rm, key, compute):
    if key not in Rm._cache:
        Rm._cache[key] = compute()
    return Rm._cache[key]


def q_power(Rm, q, n):
    """Preimage J + q^n."""
    q = _elements(q)
    if n == 0:
        return Ideal(Rm.ring, [Rm.ring.one])
    return _cached(Rm, ("qpow", q, n), lambda: Rm.lift(ideal_power(Ideal(Rm.ring, q), n).gens))


def socle_ideal(Rm, X):
    """X : m for a preimage X."""
    return colon(X, Rm.m())


def q_power_colon(Rm, q, n):
    """(J + q^n) : m."""
    q = _elements(q)
    return _cached(Rm, ("qpowcolon", q, n), lambda: socle_ideal(Rm, q_power(Rm, q, n)))


def ir_q_power(Rm, q, n):
    """ir_R(q^{n+1})."""
    X = q_power(Rm, q, n + 1)
    return length(X) - length(q_power_colon(Rm, q, n + 1))


def ir_sequence(Rm, q, N):
    check_parameter_system(Rm, _elements(q))
    return [ir_q_power(Rm, q, n) for n in range(N + 1)]


def ir_ideal_power_sequence(Rm, X, N):
    """[ir_R(X^{n+1}) for n = 0..N] for an m-primary preimage X."""
    out = []
    P = X
    for n in range(N + 1):
        if n > 0:
            P = Rm.product(P, X)
        out.append(index_of_reducibility(P))
    return out


# ---------------------------------------------------------------- formulas


def theorem_a_bound(n, d, s):
    """sum_{i=1}^{d} C(n+d-i, d-i) (sum_{j=1}^{d-i+1} C(d-i, j-1) s_j) + s_0."""
    s = list(s)
    if len(s) != d + 1:
        raise ValueError(f"s must have d+1 = {d + 1} entries")
    total = s[0]
    for i in range(1, d + 1):
        inner = sum(comb(d - i, j - 1) * s[j] for j in range(1, d - i + 2))
        total += comb(n + d - i, d - i) * inner
    return total


def extremal_value(d, s):
    return sum(comb(d, i) * s[i] for i in range(d + 1))


def cm_formula(n, d, s_d):
    return s_d * comb(n + d - 1, d - 1)


def _binom_ext(a, b):
    # C(-1, -1) = 1 and C(a, -1) = 0 otherwise, as in the length formula for standard ideals
    if b < 0:
        return 1 if (a == -1 and b == -1) else 0
    if a < 0:
        return 0
    return comb(a, b)


def socle_ideal_coefficients(d, s, h):
    """Closed forms for e_1..e_d of the socle ideal q : m."""
    s = list(s)
    h = list(h)
    out = []
    for i in range(1, d):
        a = sum(comb(d - i - 1, j - 1) * h[j] for j in range(1, d - i + 1))
        b = sum(comb(d - i, j - 1) * s[j] for j in range(1, d - i + 2))
        out.append((-1) ** i * (a - b))
    out.append((-1) ** d * (h[0] - s[1]))
    return out


def standard_length_formula(n, d, e0, h):
    """length R/q^{n+1} for a standard q: C(n+d,d) e0 + sum_i C(n+d-i,d-i) sum_j C(d-i-1,j-1) h_j."""
    total = comb(n + d, d) * e0
    for i in range(1, d + 1):
        inner = sum(_binom_ext(d - i - 1, j - 1) * h[j] for j in range(0, d - i + 1))
        total += comb(n + d - i, d - i) * inner
    return total


def buchsbaum_e1(d, s, h):
    """e_1 of the socle ideal in the Buchsbaum case: sum_j C(d-2, j-2) h_j + s_d."""
    return sum(_binom_ext(d - 2, j - 2) * h[j] for j in range(1, d)) + s[d]


# ---------------------------------------------------------------- fitting


@dataclass
class SequenceFit:
    values: list
    degree: int
    stab_index: int
    coeffs: list
    alternating: bool = True

    def basis(self, i, n):
        D = self.degree
        sign = (-1) ** i if self.alternating else 1
        return sign * comb(n + D - i, D - i)

    def evaluate(self, n):
        return sum(c * self.basis(i, n) for i, c in enumerate(self.coeffs))

    def reproduces(self):
        return all(self.evaluate(n) == v for n, v in enumerate(self.values) if n >= self.stab_index)


def fit_sequence(values, degree, alternating=True, min_stable=3):
    """Fit sum_i (+-1)^i c_i C(n+D-i, D-i) to the eventually polynomial tail.

    Stable means the D-th finite differences are constant on at least
    ``min_stable`` consecutive samples at the end of the window.
    """
    values = [int(v) for v in values]
    D = degree
    diffs = list(values)
    for _ in range(D):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    if len(diffs) < min_stable:
        raise FitError(f"window of {len(values)} values too small for degree {D}", tail=len(diffs))
    k = len(diffs) - 1
    while k > 0 and diffs[k - 1] == diffs[-1]:
        k -= 1
    tail = len(diffs) - k
    if tail < min_stable:
        raise FitError(f"degree-{D} differences constant only on the last {tail} samples", tail=tail)
    # values a_k .. a_{k+D} determine the polynomial
    pts = list(range(k, k + D + 1))
    sign = (lambda i: (-1) ** i) if alternating else (lambda i: 1)
    rows = [[Fraction(sign(i) * comb(n + D - i, D - i)) for i in range(D + 1)] + [Fraction(values[n])]
            for n in pts]
    coeffs = _solve(rows, D + 1)
    if any(c.denominator != 1 for c in coeffs):
        raise FitError(f"non-integral coefficients {coeffs}")
    coeffs = [int(c) for c in coeffs]
    fit = SequenceFit(values, D, k, coeffs, alternating)
    while fit.stab_index > 0 and fit.evaluate(fit.stab_index - 1) == values[fit.stab_index - 1]:
        fit.stab_index -= 1
    return fit


def _solve(rows, n):
    rows = [list(r) for r in rows]
    for c in range(n):
        p = next(i for i in range(c, n) if rows[i][c] != 0)
        rows[c], rows[p] = rows[p], rows[c]
        piv = rows[c][c]
        rows[c] = [x / piv for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return [rows[i][n] for i in range(n)]


def hilbert_samuel_values(Rm, X, N):
    """[length R/X^{n+1} for n = 0..N] for an m-primary preimage X."""
    out = []
    P = X
    for n in range(N + 1):
        if n > 0:
            P = Rm.product(P, X)
        out.append(length(P))
    return out


def hilbert_samuel_fit(Rm, X, window=6, d=None):
    d = krull_dim(Rm) if d is None else d
    return fit_sequence(hilbert_samuel_values(Rm, X, window), d)


def q_hilbert_samuel_fit(Rm, q, window=6):
    d = krull_dim(Rm)
    vals = [length(q_power(Rm, q, n + 1)) for n in range(window + 1)]
    return fit_sequence(vals, d)


def ir_poly_fit(Rm, q, window=6):
    d = krull_dim(Rm)
    vals = [ir_q_power(Rm, q, n) for n in range(window + 1)]
    return fit_sequence(vals, d - 1)


def multiplicity(Rm, q, window=None):
    """e_0(q), the leading Hilbert-Samuel coefficient."""
    d = krull_dim(Rm)
    window = d + 3 if window is None else window
    return q_hilbert_samuel_fit(Rm, q, window).coeffs[0]


# ---------------------------------------------------------------- predicates


def is_regular(Rm):
    """A graded S/J is regular iff J is generated by linear forms."""
    return all(g.total_degree() == 1 for g in Rm.J.gb().generators)


def is_extremal(Rm, q, s=None):
    """ir(q) = sum_i C(d, i) s_i."""
    q = _elements(q)
    d = check_parameter_system(Rm, q)
    s = s_vector(Rm) if s is None else s
    return ir_q_power(Rm, q, 0) == extremal_value(d, s)


def colon_identity_pairs(Rm, q, i, n):
    """Both sides of the two colon identities for x_i, as preimage ideals."""
    q = _elements(q)
    ring = Rm.ring
    x_i = Ideal(ring, [q[i - 1]])
    prev = Rm.lift(q[: i - 1])
    prev_colon = colon(prev, x_i)
    lhs1 = colon(ideal_sum(q_power(Rm, q, n + 1), prev), x_i)
    rhs1 = ideal_sum(q_power(Rm, q, n), prev_colon)
    lhs2 = intersect(prev_colon, q_power(Rm, q, 1))
    rhs2 = prev
    return (lhs1, rhs1), (lhs2, rhs2)


def colon_identities_hold(Rm, q, samples=(1, 2)):
    d = len(_elements(q))
    for i in range(1, d + 1):
        for n in samples:
            (a, b), (c, e) = colon_identity_pairs(Rm, q, i, n)
            if not ideal_equal(a, b) or not ideal_equal(c, e):
                return False
    return True


# ---------------------------------------------------------------- checks


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int(round(1000 * (time.perf_counter() - self.t0)))


def _rec(check, ring_id, params, n, passed, lhs=None, rhs=None, ms=0, **kw):
    return Record(check=check, ring=ring_id, params=params, n=n, passed=bool(passed),
                  lhs=lhs, rhs=rhs, ms=ms, **kw)


def _name(Rm):
    return Rm.name or "ring"


def _pname(q):
    return q.name if isinstance(q, ParameterSystem) else "q"


def _ideal_witness(passed, A, B):
    return (None, None) if passed else (A, B)


def check_standard(Rm, q):
    with _Timer() as t:
        ok = is_standard(Rm, _elements(q))
    return _rec("standardness", _name(Rm), _pname(q), 0, ok, ok, True, t.ms)


def check_theorem_a(Rm, q, N=4, standard=None):
    """ir(q^{n+1}) <= bound for n = 0..N; rejects non-standard q."""
    elems = _elements(q)
    if standard is None:
        standard = is_standard(Rm, elems)
    if not standard:
        raise HypothesisError("parameter ideal is not standard")
    d = krull_dim(Rm)
    s = s_vector(Rm)
    out = []
    for n in range(N + 1):
        with _Timer() as t:
            ir = ir_q_power(Rm, elems, n)
            bound = theorem_a_bound(n, d, s)
        out.append(_rec("theorem-a", _name(Rm), _pname(q), n, ir <= bound, ir, bound, t.ms,
                        extra={"slack": bound - ir}))
    return out


def check_extremality(Rm, q, expected=None):
    elems = _elements(q)
    d = krull_dim(Rm)
    with _Timer() as t:
        s = s_vector(Rm)
        ir = ir_q_power(Rm, elems, 0)
        target = extremal_value(d, s)
    value = ir == target
    rec = _rec("extremality", _name(Rm), _pname(q), 0, True if expected is None else value == expected,
               ir, target, t.ms, extra={"extremal": value})
    return [rec]


def check_theorem_b(Rm, q, N=4, standard=None):
    """Equality ir(q^{n+1}) = bound for extremal standard q.

    A failing hypothesis yields a single record with note ``hypothesis``."""
    elems = _elements(q)
    if standard is None:
        standard = is_standard(Rm, elems)
    d = krull_dim(Rm)
    s = s_vector(Rm)
    if not standard or not is_extremal(Rm, elems, s):
        return [_rec("theorem-b", _name(Rm), _pname(q), 0, False, ir_q_power(Rm, elems, 0),
                     extremal_value(d, s), note="hypothesis")]
    out = []
    for n in range(N + 1):
        with _Timer() as t:
            ir = ir_q_power(Rm, elems, n)
            bound = theorem_a_bound(n, d, s)
        out.append(_rec("theorem-b", _name(Rm), _pname(q), n, ir == bound, ir, bound, t.ms))
    return out


def socle_colon_sides(Rm, q, n):
    """(J + q^{n+1}) : m and q^n ((J + q) : m) + (J : m) + J."""
    elems = _elements(q)
    lhs = q_power_colon(Rm, elems, n + 1)
    I = q_power_colon(Rm, elems, 1)
    if n == 0:
        head = I
    else:
        head = Rm.product(q_power(Rm, elems, n), I)
    rhs = ideal_sum(head, Rm.socle_ideal_of_zero())
    return lhs, rhs


def check_lemma_4_5(Rm, q, N=4, asserted=True):
    out = []
    for n in range(N + 1):
        with _Timer() as t:
            lhs, rhs = socle_colon_sides(Rm, q, n)
            ok = ideal_equal(lhs, rhs)
        a, b = _ideal_witness(ok, lhs, rhs)
        out.append(_rec("lemma-4.5", _name(Rm), _pname(q), n, ok, a, b, t.ms, asserted=asserted))
    return out


def check_lemma_2_2(Rm, q, samples=(1, 2, 3)):
    elems = _elements(q)
    d = len(elems)
    out = []
    for n in samples:
        with _Timer() as t:
            ok = True
            witness = (None, None)
            for i in range(1, d + 1):
                (a, b), (c, e) = colon_identity_pairs(Rm, elems, i, n)
                if not ideal_equal(a, b):
                    ok, witness = False, (a, b)
                    break
                if not ideal_equal(c, e):
                    ok, witness = False, (c, e)
                    break
        out.append(_rec("lemma-2.2", _name(Rm), _pname(q), n, ok, *witness, ms=t.ms))
    return out


def check_lemma_3_1(Rm, q, N=4):
    elems = _elements(q)
    bar = quotient_by_h0(Rm)
    s0 = s_vector(Rm)[0]
    out = []
    for n in range(1, N + 1):
        with _Timer() as t:
            a = ir_q_power(Rm, elems, n)
            b = ir_q_power(bar, elems, n) + s0
        out.append(_rec("lemma-3.1", _name(Rm), _pname(q), n, a == b, a, b, t.ms))
    return out


def check_lemma_3_2(Rm, x, params="-"):
    """s_1 = length((xR : m)/xR) for a parameter element x when depth > 0."""
    if depth(Rm) == 0:
        raise HypothesisError("depth zero")
    with _Timer() as t:
        X = Rm.lift([x])
        a = socle_dimension(X)
        b = s_vector(Rm)[1]
    return [_rec("lemma-3.2", _name(Rm), params, 0, a == b, a, b, t.ms)]


def check_equality_converse(Rm, q, N=4):
    """Equality for some n >= 1 forces ir over R/H^0 to be extremal."""
    elems = _elements(q)
    d = krull_dim(Rm)
    s = s_vector(Rm)
    bar = quotient_by_h0(Rm)
    target = sum(comb(d, i) * s[i] for i in range(1, d + 1))
    hits = [n for n in range(1, N + 1) if ir_q_power(Rm, elems, n) == theorem_a_bound(n, d, s)]
    ir_bar = ir_q_power(bar, elems, 0)
    if not hits:
        return [_rec("equality-converse", _name(Rm), _pname(q), 0, True, ir_bar, target, note="vacuous")]
    return [_rec("equality-converse", _name(Rm), _pname(q), hits[0], ir_bar == target, ir_bar, target)]


def check_cm_formula(Rm, q, N=4):
    elems = _elements(q)
    d = krull_dim(Rm)
    s = s_vector(Rm)
    out = []
    for n in range(N + 1):
        with _Timer() as t:
            ir = ir_q_power(Rm, elems, n)
            target = cm_formula(n, d, s[d])
        out.append(_rec("cm-formula", _name(Rm), _pname(q), n, ir == target, ir, target, t.ms))
    return out


def check_monotonicity(Rm, q, N=4):
    seq = [ir_q_power(Rm, _elements(q), n) for n in range(N + 1)]
    ok = all(a <= b for a, b in zip(seq, seq[1:]))
    return [_rec("monotonicity", _name(Rm), _pname(q), N, ok, seq, "nondecreasing", asserted=False)]


def socle_ideal_data(Rm, q, window=6):
    """Everything the socle-ideal coefficient check needs, as a dict."""
    elems = _elements(q)
    d = krull_dim(Rm)
    s = s_vector(Rm)
    h = h_vector(Rm)
    I = q_power_colon(Rm, elems, 1)
    I2 = Rm.power(I, 2)
    qI = Rm.product(q_power(Rm, elems, 1), I)
    fit_I = hilbert_samuel_fit(Rm, I, window, d)
    fit_q = q_hilbert_samuel_fit(Rm, elems, window)
    expected = [fit_q.coeffs[0]] + socle_ideal_coefficients(d, s, h)
    return {
        "d": d, "s": s, "h": h, "I": I,
        "square_identity": ideal_equal(I2, qI), "I2": I2, "qI": qI,
        "fit_I": fit_I, "fit_q": fit_q, "expected": expected,
    }


def check_theorem_4_10(Rm, q, window=6, standard=None):
    elems = _elements(q)
    ring_id, pid = _name(Rm), _pname(q)
    problems = []
    if not is_generalized_cm(Rm):
        problems.append("not-generalized-CM")
    if is_regular(Rm):
        problems.append("regular")
    if standard is None:
        standard = is_standard(Rm, elems)
    if not standard:
        problems.append("not-standard")
    elif not is_extremal(Rm, elems):
        problems.append("not-extremal")
    if problems:
        return [_rec("theorem-4.10", ring_id, pid, 0, False, note="hypothesis:" + ",".join(problems))]
    with _Timer() as t:
        data = socle_ideal_data(Rm, elems, window)
    out = []
    ok = data["square_identity"]
    out.append(_rec("theorem-4.10", ring_id, pid, 0, ok, *(_ideal_witness(ok, data["I2"], data["qI"])),
                    ms=t.ms, note="I^2=qI"))
    got = data["fit_I"].coeffs
    for i, (a, b) in enumerate(zip(got, data["expected"])):
        out.append(_rec("theorem-4.10", ring_id, pid, 0, a == b, a, b, note=f"e{i}"))
    return out


def check_f0_bound(Rm, q, window=6):
    elems = _elements(q)
    d = krull_dim(Rm)
    if d < 2:
        raise HypothesisError("needs d >= 2")
    s = s_vector(Rm)
    bound = sum(comb(d - 1, j - 1) * s[j] for j in range(1, d + 1))
    with _Timer() as t:
        fit = ir_poly_fit(Rm, elems, window)
    f0 = fit.coeffs[0]
    return [_rec("f0-bound", _name(Rm), _pname(q), fit.stab_index, f0 <= bound, f0, bound, t.ms,
                 extra={"f": fit.coeffs})]


def check_duality_d0(Rm, q):
    """On the Artinian ring S/(J + q): s_0 via Ext^n equals ir via socles."""
    X = Rm.lift(_elements(q))
    A = QuotientRingModel(Rm.ring, X.gb().generators)
    with _Timer() as t:
        s0 = module_min_gens(ext_module(A, A.nvars))
        ir = index_of_reducibility(X)
    return [_rec("duality-d0", _name(Rm), _pname(q), 0, s0 == ir, s0, ir, t.ms)]


def run_parameter_checks(Rm, q, N=4, window=6, include=None):
    """All checks for one (ring, parameter system) pair, hypotheses permitting."""
    elems = _elements(q)
    want = (lambda c: True) if include is None else (lambda c: c in include)
    out = []
    check_parameter_system(Rm, elems)
    gcm = is_generalized_cm(Rm)
    standard = is_standard(Rm, elems) if gcm else False
    if want("standardness"):
        out.append(_rec("standardness", _name(Rm), _pname(q), 0, True, standard, "-",
                        asserted=False))
    if want("duality-d0"):
        out += check_duality_d0(Rm, q)
    if not gcm or not standard:
        return out
    d = krull_dim(Rm)
    s = s_vector(Rm)
    extremal = is_extremal(Rm, elems, s)
    if want("theorem-a"):
        out += check_theorem_a(Rm, q, N, standard=True)
    if want("extremality"):
        out += check_extremality(Rm, q)
    if want("lemma-2.2"):
        out += check_lemma_2_2(Rm, q, samples=(1, 2))
    if want("lemma-3.1"):
        out += check_lemma_3_1(Rm, q, N)
    if want("equality-converse"):
        out += check_equality_converse(Rm, q, N)
    if want("monotonicity"):
        out += check_monotonicity(Rm, q, N)
    if want("lemma-3.2") and depth(Rm) > 0 and d >= 1:
        out += check_lemma_3_2(Rm, elems[0], params=_pname(q))
    if depth(Rm) == d and want("cm-formula"):
        out += check_cm_formula(Rm, q, N)
    if d >= 2 and want("f0-bound"):
        out += check_f0_bound(Rm, q, window)
    if extremal:
        if want("theorem-b"):
            out += check_theorem_b(Rm, q, N, standard=True)
        if want("lemma-4.5"):
            out += check_lemma_4_5(Rm, q, N)
        if want("theorem-4.10") and not is_regular(Rm):
            out += check_theorem_4_10(Rm, q, window, standard=True)
    elif want("lemma-4.5"):
        out += check_lemma_4_5(Rm, q, N, asserted=False)
    return out


__all__ = [
    "FitError",
    "HypothesisError",
    "ParameterSystem",
    "SequenceFit",
    "buchsbaum_e1",
    "check_cm_formula",
    "check_duality_d0",
    "check_extremality",
    "check_f0_bound",
    "check_lemma_2_2",
    "check_lemma_3_1",
    "check_lemma_3_2",
    "check_lemma_4_5",
    "check_equality_converse",
    "check_theorem_4_10",
    "check_theorem_a",
    "check_theorem_b",
    "fit_sequence",
    "hilbert_samuel_fit",
    "ir_poly_fit",
    "ir_sequence",
    "is_extremal",
    "is_regular",
    "multiplicity",
    "run_parameter_checks",
    "standard_length_formula",
    "socle_ideal_coefficients",
    "theorem_a_bound",
]
