"""Buchberger's algorithm for ideals and for submodules of free modules.

Internally every term exponent carries one extra trailing coordinate, the
position in the free module (always 0 for ideals), so one reduction and
pair-processing kernel serves both cases.
"""

from __future__ import annotations

import random
from heapq import heapify, heappop, heappush

from .poly import GREVLEX, Polynomial, RingMismatchError

DEGREE_CAP = 40


class GroebnerError(RuntimeError):
    pass


# ---------------------------------------------------------------- kernel


def ideal_key(order):
    k = order.key
    return lambda e: k(e[:-1])


def top_key(order):
    """Term-over-position; lower position index wins ties."""
    k = order.key
    return lambda e: k(e[:-1]) + (-e[-1],)


def pot_key(order, rank=None):
    """Position-over-term. ``rank[pos]`` larger means more significant;
    default makes position 0 the most significant."""
    k = order.key
    if rank is None:
        return lambda e: (-e[-1],) + k(e[:-1])
    return lambda e: (rank[e[-1]],) + k(e[:-1])


class _Kernel:
    def __init__(self, field, key):
        self.field = field
        self.norm = field.norm
        self.inv = field.inv
        self.key = key
        self._hk = {}

    def heapkey(self, e):
        hk = self._hk.get(e)
        if hk is None:
            hk = tuple(-x for x in self.key(e))
            self._hk[e] = hk
        return hk

    def leading(self, terms):
        return max(terms, key=self.key)

    def monic(self, terms):
        """Split a term dict into (lm, tail) with the tail scaled so lm has coefficient 1."""
        lm = self.leading(terms)
        inv = self.inv(terms[lm])
        norm = self.norm
        tail = [(e, norm(c * inv)) for e, c in terms.items() if e != lm]
        tail.sort(key=lambda t: self.key(t[0]), reverse=True)
        return lm, tail

    @staticmethod
    def find_divisor(e, basis):
        pos = e[-1]
        for elt in basis:
            lm = elt[0]
            if lm[-1] != pos:
                continue
            for a, b in zip(lm, e):
                if a > b:
                    break
            else:
                return elt
        return None

    def reduce(self, terms, basis):
        """Full reduction of ``terms`` (a dict, consumed) modulo ``basis``
        (a list of monic ``(lm, tail)`` pairs). Returns the remainder dict."""
        if not basis:
            return {e: c for e, c in terms.items() if c}
        f = terms
        hk = self.heapkey
        norm = self.norm
        heap = [(hk(e), e) for e in f]
        heapify(heap)
        rem = {}
        find = self.find_divisor
        while heap:
            _, e = heappop(heap)
            c = f.pop(e, None)
            if not c:
                continue
            elt = find(e, basis)
            if elt is None:
                rem[e] = c
                continue
            lm, tail = elt
            shift = tuple(a - b for a, b in zip(e, lm))
            for ge, gc in tail:
                ne = tuple(a + b for a, b in zip(ge, shift))
                old = f.get(ne)
                if old is None:
                    f[ne] = norm(-c * gc)
                    heappush(heap, (hk(ne), ne))
                else:
                    f[ne] = norm(old - c * gc)
        return rem


def _lcm(a, b):
    if a[-1] != b[-1]:
        return None
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b):
    if a[-1] != b[-1]:
        return False
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _coprime(a, b):
    for x, y in zip(a[:-1], b[:-1]):
        if x and y:
            return False
    return True


def _deg(e):
    return sum(e) - e[-1]


def _spoly(kernel, a, b, lcm):
    lm_a, tail_a = a
    lm_b, tail_b = b
    sa = tuple(x - y for x, y in zip(lcm, lm_a))
    sb = tuple(x - y for x, y in zip(lcm, lm_b))
    norm = kernel.norm
    out = {}
    for e, c in tail_a:
        out[tuple(x + y for x, y in zip(e, sa))] = c
    for e, c in tail_b:
        ne = tuple(x + y for x, y in zip(e, sb))
        out[ne] = norm(out.get(ne, 0) - c)
    return out


def _buchberger(kernel, polys, known=(), is_ideal=True, reduced=True,
                degree_cap=DEGREE_CAP, seed=None):
    """Core loop. ``polys`` are term dicts; ``known`` are monic (lm, tail)
    pairs already forming a Groebner basis. Returns monic (lm, tail) pairs."""
    store = []   # all basis elements ever added, as (lm, tail)
    active = []  # indices into store forming the current basis
    pairs = []   # (sortkey, i, j, lcm)
    rng = random.Random(seed) if seed is not None else None

    def sortkey(lcm):
        if rng is not None:
            return (_deg(lcm), rng.random())
        return (_deg(lcm), kernel.key(lcm))

    def update(h):
        lm_h = store[h][0]
        cand = []
        for g in active:
            lcm = _lcm(lm_h, store[g][0])
            if lcm is not None:
                cand.append((g, lcm))
        kept = []
        for idx, (g1, l1) in enumerate(cand):
            if is_ideal and _coprime(lm_h, store[g1][0]):
                kept.append((g1, l1, True))
                continue
            redundant = False
            for g2, l2 in cand[idx + 1:]:
                if _divides(l2, l1):
                    redundant = True
                    break
            if not redundant:
                for g2, l2, _ in kept:
                    if _divides(l2, l1):
                        redundant = True
                        break
            if not redundant:
                kept.append((g1, l1, False))
        new_pairs = []
        for sk, i, j, lcm in pairs:
            if _divides(lm_h, lcm):
                li = _lcm(store[i][0], lm_h)
                lj = _lcm(store[j][0], lm_h)
                if li != lcm and lj != lcm:
                    continue
            new_pairs.append((sk, i, j, lcm))
        for g1, l1, coprime in kept:
            if not coprime:
                new_pairs.append((sortkey(l1), g1, h, l1))
        pairs[:] = new_pairs
        active[:] = [g for g in active if not _divides(lm_h, store[g][0])] + [h]

    def insert(elt, make_pairs=True):
        if degree_cap is not None and _deg(elt[0]) > degree_cap:
            raise GroebnerError(
                f"degree cap {degree_cap} exceeded (new leading term of degree {_deg(elt[0])})")
        store.append(elt)
        h = len(store) - 1
        if make_pairs:
            update(h)
        else:
            active.append(h)

    for elt in known:
        insert(elt, make_pairs=False)

    todo = [p for p in polys if p]
    todo.sort(key=lambda t: kernel.key(kernel.leading(t)))
    for terms in todo:
        basis = [store[g] for g in active]
        r = kernel.reduce(dict(terms), basis)
        if r:
            insert(kernel.monic(r))

    while pairs:
        best = min(range(len(pairs)), key=lambda i: pairs[i][0])
        _, i, j, lcm = pairs.pop(best)
        s = _spoly(kernel, store[i], store[j], lcm)
        basis = [store[g] for g in active]
        r = kernel.reduce(s, basis)
        if r:
            insert(kernel.monic(r))

    basis = [store[g] for g in active]
    if reduced:
        basis = _interreduce(kernel, basis)
    return basis


def _interreduce(kernel, basis):
    # basis is minimal (Gebauer-Moeller keeps only non-divisible leads)
    basis = sorted(basis, key=lambda t: kernel.key(t[0]), reverse=True)
    lms = [lm for lm, _ in basis]
    minimal = [b for b in basis if not any(o != b[0] and _divides(o, b[0]) for o in lms)]
    out = []
    for idx, (lm, tail) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        rest = kernel.reduce(dict(tail), others)
        new_tail = sorted(rest.items(), key=lambda t: kernel.key(t[0]), reverse=True)
        out.append((lm, new_tail))
    return out


# ---------------------------------------------------------------- ideals


def _aug(p):
    return {e + (0,): c for e, c in p.terms.items()}


def _deaug(ring, lm, tail):
    terms = {lm[:-1]: ring.field.one}
    for e, c in tail:
        terms[e[:-1]] = c
    return Polynomial._make(ring, terms)


class GroebnerBasis:
    """A Groebner basis of an ideal; generators are monic and, when
    ``reduced``, sorted by decreasing leading monomial."""

    def __init__(self, ring, order, elements, reduced):
        self.ring = ring
        self.order = order
        self.reduced = reduced
        self._elements = list(elements)
        self.generators = tuple(_deaug(ring, lm, tail) for lm, tail in self._elements)
        self._kernel = None

    def kernel(self):
        if self._kernel is None:
            self._kernel = _Kernel(self.ring.field, ideal_key(self.order))
        return self._kernel

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def lead_monomials(self):
        return [lm[:-1] for lm, _ in self._elements]

    def is_unit(self):
        return any(not any(lm[:-1]) for lm, _ in self._elements)

    def normal_form(self, p):
        if p.ring != self.ring:
            raise RingMismatchError("ring mismatch in normal_form")
        rem = self.kernel().reduce(_aug(p), self._elements)
        return Polynomial._make(self.ring, {e[:-1]: c for e, c in rem.items()})

    def contains(self, p):
        return self.normal_form(p).is_zero()

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.order == other.order
                and self.ring == other.ring and self.generators == other.generators)

    def __hash__(self):
        return hash((self.ring, self.order, self.generators))

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.generators)}])"


def normal_form(p, G):
    return G.normal_form(p)


def _check_gens(gens):
    gens = [g for g in gens]
    if not gens:
        raise ValueError("empty generator list needs an explicit ring")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators live in different rings")
    return ring


def buchberger(gens, order=GREVLEX, *, ring=None, reduced=False, known=None,
               degree_cap=DEGREE_CAP, seed=None):
    """A Groebner basis of the ideal generated by ``gens``.

    ``known`` may be a GroebnerBasis (same ring and order) whose ideal is
    included; its internal pairs are not recomputed.
    """
    gens = list(gens)
    if ring is None:
        ring = known.ring if known is not None else _check_gens(gens)
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generator ring mismatch")
    kernel = _Kernel(ring.field, ideal_key(order))
    known_elts = ()
    if known is not None:
        if known.order != order or known.ring != ring:
            raise ValueError("known basis has a different order or ring")
        known_elts = known._elements
    elts = _buchberger(kernel, [_aug(g) for g in gens if g], known_elts, is_ideal=True,
                       reduced=reduced, degree_cap=degree_cap, seed=seed)
    return GroebnerBasis(ring, order, elts, reduced)


def reduced_gb(gens, order=GREVLEX, **kw):
    return buchberger(gens, order, reduced=True, **kw)


def ideal_member(p, G):
    return G.contains(p)


def ideal_equal(A, B):
    """Equality of ideals given by reduced Groebner bases in the same order."""
    if A.order != B.order:
        raise ValueError("bases use different orders")
    if not A.reduced:
        A = reduced_gb(A.generators, A.order, ring=A.ring, known=A)
    if not B.reduced:
        B = reduced_gb(B.generators, B.order, ring=B.ring, known=B)
    return A.generators == B.generators


def spair_residues(G):
    """Normal forms of all S-polynomials of ``G``; all zero iff G is a Groebner basis."""
    kernel = G.kernel()
    elts = G._elements
    out = []
    for i in range(len(elts)):
        for j in range(i + 1, len(elts)):
            lcm = _lcm(elts[i][0], elts[j][0])
            s = _spoly(kernel, elts[i], elts[j], lcm)
            r = kernel.reduce(s, elts)
            out.append(Polynomial._make(G.ring, {e[:-1]: c for e, c in r.items()}))
    return out


# ---------------------------------------------------------------- modules


class FreeModuleVector:
    """An element of S^r, stored as a tuple of polynomials."""

    __slots__ = ("ring", "components")

    def __init__(self, components, ring=None):
        components = tuple(components)
        if ring is None:
            if not components:
                raise ValueError("rank-0 vector needs an explicit ring")
            ring = components[0].ring
        for c in components:
            if c.ring != ring:
                raise RingMismatchError("component ring mismatch")
        self.ring = ring
        self.components = components

    @property
    def rank(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __add__(self, other):
        return FreeModuleVector([a + b for a, b in zip(self.components, other.components)], self.ring)

    def __sub__(self, other):
        return FreeModuleVector([a - b for a, b in zip(self.components, other.components)], self.ring)

    def __mul__(self, f):
        return FreeModuleVector([c * f for c in self.components], self.ring)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, FreeModuleVector) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def degree(self, shifts=None):
        """Max of ``deg(component_i) + shifts[i]`` over nonzero components."""
        shifts = shifts or [0] * self.rank
        degs = [c.total_degree() + s for c, s in zip(self.components, shifts) if c]
        return max(degs) if degs else None

    def is_homogeneous(self, shifts=None):
        shifts = shifts or [0] * self.rank
        degs = set()
        for c, s in zip(self.components, shifts):
            for e in c.terms:
                degs.add(sum(e) + s)
        return len(degs) <= 1

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _vec_aug(v):
    out = {}
    for i, c in enumerate(v.components):
        for e, a in c.terms.items():
            out[e + (i,)] = a
    return out


def _vec_deaug(ring, rank, terms):
    comps = [dict() for _ in range(rank)]
    for e, c in terms.items():
        comps[e[-1]][e[:-1]] = c
    return FreeModuleVector([Polynomial._make(ring, t) for t in comps], ring)


class ModuleGroebnerBasis:
    def __init__(self, ring, rank, order, key, elements, reduced, kind="top"):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.kind = kind
        self.reduced = reduced
        self._key = key
        self._elements = list(elements)
        self._kernel = _Kernel(ring.field, key)
        self.vectors = tuple(self._to_vector(lm, tail) for lm, tail in self._elements)

    def _to_vector(self, lm, tail):
        terms = {lm: self.ring.field.one}
        terms.update(tail)
        return _vec_deaug(self.ring, self.rank, terms)

    def __len__(self):
        return len(self.vectors)

    def lead_terms(self):
        """Leading terms as ``(monomial, position)``."""
        return [(lm[:-1], lm[-1]) for lm, _ in self._elements]

    def normal_form(self, v):
        rem = self._kernel.reduce(_vec_aug(v), self._elements)
        return _vec_deaug(self.ring, self.rank, rem)

    def contains(self, v):
        return self.normal_form(v).is_zero()


def module_gb(vectors, order=GREVLEX, *, ring=None, rank=None, kind="top", rank_map=None,
              reduced=True, known=None, degree_cap=DEGREE_CAP, seed=None):
    """Groebner basis of the submodule of S^r spanned by ``vectors``.

    ``kind`` is ``"top"`` (term over position) or ``"pot"`` (position over
    term, with optional ``rank_map`` giving each position's significance).
    """
    vectors = list(vectors)
    if ring is None:
        ring = known.ring if known is not None else vectors[0].ring
    if rank is None:
        rank = known.rank if known is not None else vectors[0].rank
    for v in vectors:
        if v.rank != rank or v.ring != ring:
            raise RingMismatchError("inconsistent rank or ring")
    key = top_key(order) if kind == "top" else pot_key(order, rank_map)
    kernel = _Kernel(ring.field, key)
    known_elts = known._elements if known is not None else ()
    elts = _buchberger(kernel, [_vec_aug(v) for v in vectors if not v.is_zero()], known_elts,
                       is_ideal=(rank == 1), reduced=reduced, degree_cap=degree_cap, seed=seed)
    return ModuleGroebnerBasis(ring, rank, order, key, elts, reduced, kind)


def _extend_basis(gb, vectors):
    kernel = gb._kernel
    elts = _buchberger(kernel, [_vec_aug(v) for v in vectors if not v.is_zero()], gb._elements,
                       is_ideal=(gb.rank == 1), reduced=False)
    return ModuleGroebnerBasis(gb.ring, gb.rank, gb.order, gb._key, elts, False, gb.kind)


def minimal_generators(vectors, shifts=None, *, ring=None, rank=None):
    """A subset of ``vectors`` generating the same submodule, minimal when the
    vectors are homogeneous for the grading twisted by ``shifts``."""
    vectors = [v for v in vectors if not v.is_zero()]
    if not vectors:
        return []
    ring = ring or vectors[0].ring
    rank = rank if rank is not None else vectors[0].rank
    order = sorted(range(len(vectors)), key=lambda i: (vectors[i].degree(shifts), i))
    kept = []
    gb = None
    for i in order:
        v = vectors[i]
        if gb is not None and gb.contains(v):
            continue
        kept.append(i)
        if gb is None:
            gb = module_gb([v], ring=ring, rank=rank, reduced=False)
        else:
            gb = _extend_basis(gb, [v])
    kept.sort()
    return [vectors[i] for i in kept]


def syzygies(vectors, *, ring=None, rank=None, minimize=True, ambient_shifts=None):
    """Generators of the module of relations ``r`` with sum r_i v_i = 0.

    Computed by elimination: a position-over-term basis of the vectors
    ``(v_i, e_i)`` in S^(r+k) with the first r positions most significant.
    ``ambient_shifts`` are the degrees of the basis vectors of S^r; they only
    steer the choice of a minimal generating set.
    """
    vectors = list(vectors)
    k = len(vectors)
    if k == 0:
        return []
    ring = ring or vectors[0].ring
    r = rank if rank is not None else vectors[0].rank
    zero = ring.zero
    one = ring.one
    big = []
    for i, v in enumerate(vectors):
        tail = [zero] * k
        tail[i] = one
        big.append(FreeModuleVector(list(v.components) + tail, ring))
    gb = module_gb(big, ring=ring, rank=r + k, kind="pot", reduced=True)
    out = []
    for (mono, pos), vec in zip(gb.lead_terms(), gb.vectors):
        if pos >= r:
            out.append(FreeModuleVector(vec.components[r:], ring))
    if minimize and out:
        shifts = [v.degree(ambient_shifts) or 0 for v in vectors]
        out = minimal_generators(out, shifts, ring=ring, rank=k)
    return out


def combine(coeffs, vectors, ring, rank):
    """Sum of coeffs[i] * vectors[i]."""
    acc = [ring.zero] * rank
    for c, v in zip(coeffs, vectors):
        if c.is_zero():
            continue
        for j in range(rank):
            if not v.components[j].is_zero():
                acc[j] = acc[j] + c * v.components[j]
    return FreeModuleVector(acc, ring)
