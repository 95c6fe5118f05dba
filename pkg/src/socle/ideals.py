"""Ideals of a polynomial ring S and quotient-ring models R = S/J.

An ideal of R is always carried as its full preimage in S (it contains J),
so sums, products, colons and intersections are plain S-ideal operations.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .groebner import buchberger, ideal_equal as _gb_equal
from .linalg import nullspace
from .poly import (
    GREVLEX,
    Polynomial,
    RingMismatchError,
    elimination,
    mono_div,
    mono_divides,
    ring_contract,
    ring_extend,
)
from .staircase import Staircase

SATURATION_CAP = 50


class Ideal:
    def __init__(self, ring, gens=(), *, gb=None):
        gens = tuple(g for g in gens if not g.is_zero())
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} not in {ring.names}")
        self.ring = ring
        self.gens = gens
        self._gbs = {}
        if gb is not None:
            self._gbs[gb.order] = gb

    @classmethod
    def from_strings(cls, ring, texts):
        return cls(ring, [ring.parse(t) for t in texts])

    def gb(self, order=GREVLEX):
        """Reduced Groebner basis, cached per order."""
        G = self._gbs.get(order)
        if G is None or not G.reduced:
            G = buchberger(self.gens, order, ring=self.ring, reduced=True)
            self._gbs[order] = G
        return G

    def has_gb(self, order=GREVLEX):
        G = self._gbs.get(order)
        return G is not None and G.reduced

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return self.gb().is_unit()

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    def contains(self, p):
        return self.gb().contains(p)

    def contains_ideal(self, other):
        G = self.gb()
        return all(G.contains(g) for g in other.gens)

    def normal_form(self, p):
        return self.gb().normal_form(p)

    def staircase(self):
        return Staircase(self.gb().lead_monomials(), self.ring.nvars)

    def minimal_gens(self):
        return self.gb().generators

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __pow__(self, n):
        return ideal_power(self, n)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def _same_ring(A, B):
    if A.ring != B.ring:
        raise RingMismatchError("ideals live in different rings")


def unit_ideal(ring):
    return Ideal(ring, [ring.one])


def ideal_equal(A, B):
    _same_ring(A, B)
    return _gb_equal(A.gb(), B.gb())


def ideal_sum(A, B):
    """A + B; reuses a cached basis of either summand as a head start."""
    _same_ring(A, B)
    gens = A.gens + B.gens
    out = Ideal(A.ring, gens)
    base, extra = (A, B) if A.has_gb() else (B, A) if B.has_gb() else (None, None)
    if base is not None:
        G = buchberger(extra.gens, GREVLEX, ring=A.ring, known=base.gb(), reduced=True)
        out._gbs[GREVLEX] = G
    return out


def ideal_sum_many(ideals):
    ideals = list(ideals)
    out = ideals[0]
    for I in ideals[1:]:
        out = ideal_sum(out, I)
    return out


def _dedup(polys):
    seen = set()
    out = []
    for p in polys:
        if p.is_zero() or p in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


def ideal_product(A, B):
    _same_ring(A, B)
    return Ideal(A.ring, _dedup(a * b for a in A.gens for b in B.gens))


def ideal_power(A, n):
    """A^n by enumerating all degree-n products of generators."""
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return unit_ideal(A.ring)
    gens = _dedup(A.gens)
    # repeated squaring would repeat products; multiset enumeration does not
    cache = {}

    def prod(combo):
        if combo in cache:
            return cache[combo]
        if len(combo) == 1:
            p = gens[combo[0]]
        else:
            p = prod(combo[:-1]) * gens[combo[-1]]
        cache[combo] = p
        return p

    return Ideal(A.ring, _dedup(prod(c) for c in combinations_with_replacement(range(len(gens)), n)))


# ---------------------------------------------------------------- elimination


def eliminate(A, k):
    """A intersected with the subring on the last ``nvars - k`` variables,
    returned as an ideal of that subring."""
    ring = A.ring
    sub = ring.drop_front(k)
    if k == 0:
        return Ideal(ring, A.gb().generators)
    G = A.gb(elimination(k))
    kept = [ring_contract(g, k, sub) for g in G.generators if not any(any(e[:k]) for e in g.terms)]
    return Ideal(sub, kept)


def intersect(A, B):
    """A cap B as the t-free part of t*A + (1 - t)*B."""
    _same_ring(A, B)
    ring = A.ring
    if A.is_zero() or B.is_zero():
        return Ideal(ring, [])
    names = ring.fresh_names(1)
    t = ring_extend(ring.one, 1, names)
    big = t.ring
    t = big.gens()[0]
    one = big.one
    gens = [t * ring_extend(a, 1, names) for a in A.gens]
    gens += [(one - t) * ring_extend(b, 1, names) for b in B.gens]
    E = eliminate(Ideal(big, gens), 1)
    out = Ideal(ring, [g.to_ring(ring) for g in E.gens])
    return out


def divide_exact(f, g):
    """f / g, raising ValueError when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    lm_g, lc_g = g.leading_term(GREVLEX)
    inv = f.ring.field.inv(lc_g)
    q = {}
    r = f
    norm = f.ring.field.norm
    while not r.is_zero():
        lm_r, lc_r = r.leading_term(GREVLEX)
        if not mono_divides(lm_g, lm_r):
            raise ValueError(f"{g} does not divide {f}")
        m = mono_div(lm_r, lm_g)
        c = norm(lc_r * inv)
        q[m] = c
        r = r - g.mul_monomial(m, c)
    return Polynomial(f.ring, q)


# ---------------------------------------------------------------- colon


def colon_element(A, g):
    """A : g = (1/g) (A cap (g))."""
    if g.is_zero():
        raise ValueError("colon by the zero element")
    if g.is_constant():
        return Ideal(A.ring, A.gens, gb=A.gb())
    inter = intersect(A, Ideal(A.ring, [g]))
    return Ideal(A.ring, [divide_exact(h, g) for h in inter.gb().generators])


def _graded_finite(A):
    """Staircase by degree when A is homogeneous with finite colength."""
    if not A.is_homogeneous():
        return None
    st = A.staircase()
    if not st.is_finite():
        return None
    return st.by_degree()


def graded_colon(A, B, layers=None):
    """A : B for homogeneous A of finite colength and homogeneous B, by
    linear algebra on the graded pieces of S/A."""
    if layers is None:
        layers = _graded_finite(A)
    ring = A.ring
    field = ring.field
    G = A.gb()
    index = [{e: i for i, e in enumerate(layer)} for layer in layers]
    gens_B = [b for b in B.gens]
    new = []
    for t, layer in enumerate(layers):
        rows = []
        for g in gens_B:
            tt = t + g.total_degree()
            if tt >= len(layers):
                continue
            target = index[tt]
            images = []
            for e in layer:
                images.append(G.normal_form(g.mul_monomial(e)))
            for target_mono, row_idx in target.items():
                rows.append([img.terms.get(target_mono, field.zero) for img in images])
        for v in nullspace(rows, len(layer), field):
            new.append(Polynomial(ring, {e: c for e, c in zip(layer, v) if c}))
    out = Ideal(ring, A.gens + tuple(new))
    out._gbs[GREVLEX] = buchberger(new, GREVLEX, ring=ring, known=G, reduced=True)
    return out


def colon(A, B, method="auto"):
    """A : B = {f : f B in A}.

    ``method`` is ``"generic"`` (intersection of the A : g computed through
    intersections), ``"graded"`` (linear algebra on S/A, needs A homogeneous
    of finite colength and B homogeneous) or ``"auto"``.
    """
    _same_ring(A, B)
    if B.is_zero():
        raise ValueError("colon by the zero ideal")
    if any(g.is_zero() for g in B.gens):
        raise ValueError("colon by an ideal with a zero generator")
    if any(g.is_constant() for g in B.gens):
        return Ideal(A.ring, A.gens, gb=A.gb())
    if method in ("auto", "graded") and all(g.is_homogeneous() for g in B.gens):
        layers = _graded_finite(A)
        if layers is not None:
            return graded_colon(A, B, layers)
        if method == "graded":
            raise ValueError("graded colon needs a homogeneous ideal of finite colength")
    parts = [colon_element(A, g) for g in B.gens]
    out = parts[0]
    for P in parts[1:]:
        out = intersect(out, P)
    return out


def saturate(A, B, cap=SATURATION_CAP):
    """Stable value of A : B^k."""
    current = A
    for _ in range(cap):
        nxt = colon(current, B)
        if ideal_equal(nxt, current):
            return current
        current = nxt
    raise RuntimeError(f"saturation did not stabilize within {cap} steps")


def maximal_ideal(ring_or_model):
    ring = getattr(ring_or_model, "ring", ring_or_model)
    return Ideal(ring, ring.gens())


# ---------------------------------------------------------------- R = S/J


class QuotientRingModel:
    """The graded ring S/J with J homogeneous and proper."""

    def __init__(self, ring, J_gens=(), name=None):
        J = J_gens if isinstance(J_gens, Ideal) else Ideal(ring, J_gens)
        for g in J.gens:
            if not g.is_homogeneous():
                raise ValueError(f"defining ideal generator {g} is not homogeneous")
        if J.is_unit():
            raise ValueError("defining ideal is the unit ideal")
        self.ring = ring
        self.J = J
        self.name = name
        self._cache = {}

    @property
    def nvars(self):
        return self.ring.nvars

    @property
    def field(self):
        return self.ring.field

    def gb(self):
        return self.J.gb()

    def m(self):
        if "m" not in self._cache:
            self._cache["m"] = maximal_ideal(self.ring)
        return self._cache["m"]

    def lift(self, elements):
        """Preimage J + (elements) of the R-ideal generated by ``elements``."""
        elements = [e for e in elements if not e.is_zero()]
        out = Ideal(self.ring, self.J.gens + tuple(elements))
        if elements:
            out._gbs[GREVLEX] = buchberger(elements, GREVLEX, ring=self.ring, known=self.gb(), reduced=True)
        else:
            out._gbs[GREVLEX] = self.gb()
        return out

    def reduce_gens(self, X):
        """Generators of the preimage X taken modulo J, zero ones dropped."""
        G = self.gb()
        return _dedup(G.normal_form(g) for g in X.gb().generators)

    def power(self, X, n):
        """Preimage of (X/J)^n."""
        if n == 0:
            return unit_ideal(self.ring)
        return self.lift(ideal_power(Ideal(self.ring, self.reduce_gens(X)), n).gens)

    def product(self, X, Y):
        return self.lift(ideal_product(Ideal(self.ring, self.reduce_gens(X)),
                                       Ideal(self.ring, self.reduce_gens(Y))).gens)

    def socle_ideal_of_zero(self):
        """Preimage of (0 :_R m), i.e. J : m."""
        if "Jm" not in self._cache:
            self._cache["Jm"] = colon(self.J, self.m())
        return self._cache["Jm"]

    def with_field(self, field):
        ring = self.ring.with_field(field)
        return QuotientRingModel(ring, [Polynomial(ring, {e: field(self.field.to_signed(c)) for e, c in g.terms.items()})
                                        for g in self.J.gens], name=self.name)

    def __repr__(self):
        return f"QuotientRingModel({self.ring.names}, J={self.J})"
