"""Free resolutions over S, Ext modules, and the local-cohomology invariants
they compute through graded local duality:

    length H^i_m(R)           = length Ext^{n-i}_S(R, S)
    dim_k Soc H^i_m(R)        = minimal number of generators of Ext^{n-i}_S(R, S)
    ann H^i_m(R)              = ann Ext^{n-i}_S(R, S)

where n is the number of variables of S.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .groebner import FreeModuleVector, module_gb, syzygies, minimal_generators
from .ideals import Ideal, QuotientRingModel, intersect, saturate, unit_ideal
from .invariants import krull_dim, is_m_primary
from .linalg import rank as matrix_rank
from .staircase import Staircase

INFINITE = math.inf
N0_BOUND = 20


class NotGeneralizedCMError(ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"H^{index}_m(R) has infinite length: the ring is not generalized Cohen-Macaulay")


class ParameterSystemError(ValueError):
    pass


# ---------------------------------------------------------------- resolutions


@dataclass
class FreeResolution:
    """maps[i-1] is the matrix of F_i -> F_{i-1} as a list of rows."""

    ring: object
    maps: list
    ranks: list
    degree_twists: list
    minimal: bool = True

    @property
    def length(self):
        return len(self.maps)

    def columns(self, i):
        """Columns of the map F_i -> F_{i-1} as vectors in F_{i-1}."""
        M = self.maps[i - 1]
        r_prev, r_cur = self.ranks[i - 1], self.ranks[i]
        return [FreeModuleVector([M[a][b] for a in range(r_prev)], self.ring) for b in range(r_cur)]

    def betti_numbers(self):
        return list(self.ranks)

    def composition_is_zero(self):
        for k in range(1, len(self.maps)):
            A, B = self.maps[k - 1], self.maps[k]
            for a in range(self.ranks[k - 1]):
                for c in range(self.ranks[k + 1]):
                    acc = self.ring.zero
                    for b in range(self.ranks[k]):
                        acc = acc + A[a][b] * B[b][c]
                    if not acc.is_zero():
                        return False
        return True

    def is_minimal(self):
        """No nonzero constant entries (all entries lie in m)."""
        for M in self.maps:
            for row in M:
                for entry in row:
                    if not entry.is_zero() and entry.constant_coeff() != 0:
                        return False
        return True


def _matrix_from_columns(columns, nrows, ring):
    return [[col.components[a] if col is not None else ring.zero for col in columns] for a in range(nrows)]


def _prune_units(maps, ranks, twists, ring):
    """Cancel unit entries: F_i -> F_{i-1} with a unit at (r, c) splits off a
    trivial summand; the complex is replaced by the isomorphic one with row r
    and column c removed (and the neighbours adjusted)."""
    maps = [[list(row) for row in M] for M in maps]
    ranks = list(ranks)
    twists = [list(t) for t in twists]
    field = ring.field
    changed = True
    while changed:
        changed = False
        for k, A in enumerate(maps):
            hit = None
            for r, row in enumerate(A):
                for c, entry in enumerate(row):
                    if not entry.is_zero() and entry.is_constant():
                        hit = (r, c, entry.constant_coeff())
                        break
                if hit:
                    break
            if hit is None:
                continue
            r, c, u = hit
            inv = field.inv(u)
            col_c = [A[a][c] for a in range(len(A))]
            row_r = A[r]
            newA = []
            for a in range(len(A)):
                if a == r:
                    continue
                factor = col_c[a] * inv
                newA.append([A[a][b] - factor * row_r[b] for b in range(len(row_r)) if b != c])
            maps[k] = newA
            # map below F_{k} -> ... : its F_k index is k+1 in ranks; maps[k] : F_{k+1} -> F_k
            if k > 0:
                maps[k - 1] = [row[:r] + row[r + 1:] for row in maps[k - 1]]
            if k + 1 < len(maps):
                maps[k + 1] = [row for b, row in enumerate(maps[k + 1]) if b != c]
            ranks[k] -= 1
            ranks[k + 1] -= 1
            del twists[k][r]
            del twists[k + 1][c]
            changed = True
            break
    while maps and ranks[-1] == 0:
        maps.pop()
        ranks.pop()
        twists.pop()
    return maps, ranks, twists


def resolve_ideal(J, max_length=None):
    """Minimal graded free resolution of S/J over S."""
    ring = J.ring
    n = ring.nvars
    max_length = n + 1 if max_length is None else max_length
    ranks = [1]
    twists = [[0]]
    maps = []
    if J.is_zero():
        return FreeResolution(ring, maps, ranks, twists, True)
    gens = [FreeModuleVector([g], ring) for g in J.gb().generators]
    gens = minimal_generators(gens, [0], ring=ring, rank=1)
    columns = gens
    prev_shifts = [0]
    while columns:
        if len(maps) >= max_length:
            raise RuntimeError("resolution longer than the number of variables")
        maps.append(_matrix_from_columns(columns, ranks[-1], ring))
        shifts = [c.degree(prev_shifts) or 0 for c in columns]
        ranks.append(len(columns))
        twists.append(shifts)
        columns = syzygies(columns, ring=ring, rank=ranks[-2], ambient_shifts=prev_shifts)
        prev_shifts = shifts
    maps, ranks, twists = _prune_units(maps, ranks, twists, ring)
    res = FreeResolution(ring, maps, ranks, twists, True)
    return res


def free_resolution(Rm):
    if "resolution" not in Rm._cache:
        Rm._cache["resolution"] = resolve_ideal(Rm.J)
    return Rm._cache["resolution"]


def projective_dimension(res):
    return res.length


def depth(Rm):
    """Auslander-Buchsbaum: n - pd(S/J)."""
    return Rm.nvars - free_resolution(Rm).length


# ---------------------------------------------------------------- Ext


@dataclass
class PresentedModule:
    """S^rank / (relations)."""

    ring: object
    rank: int
    relations: list = dc_field(default_factory=list)
    gen_degrees: list = None

    def is_zero_rank(self):
        return self.rank == 0


def ext_from_resolution(res, i):
    """Ext^i_S(S/J, S) as the homology of the dual complex at F_i^*."""
    ring = res.ring
    L = res.length
    if i < 0 or i > L:
        return PresentedModule(ring, 0, [], [])
    r_i = res.ranks[i]
    dual_shifts = [-t for t in res.degree_twists[i]]
    # kernel of F_i^* -> F_{i+1}^*
    if i == L:
        kernel = []
        for a in range(r_i):
            comps = [ring.zero] * r_i
            comps[a] = ring.one
            kernel.append(FreeModuleVector(comps, ring))
    else:
        M = res.maps[i]  # F_{i+1} -> F_i, rows indexed by F_i
        r_next = res.ranks[i + 1]
        cols = [FreeModuleVector([M[a][b] for b in range(r_next)], ring) for a in range(r_i)]
        next_shifts = [-t for t in res.degree_twists[i + 1]]
        kernel = syzygies(cols, ring=ring, rank=r_next, ambient_shifts=next_shifts)
    if not kernel:
        return PresentedModule(ring, 0, [], [])
    # image of F_{i-1}^* -> F_i^*
    image = []
    if i > 0:
        P = res.maps[i - 1]  # F_i -> F_{i-1}
        for c in range(res.ranks[i - 1]):
            v = FreeModuleVector([P[c][a] for a in range(r_i)], ring)
            if not v.is_zero():
                image.append(v)
    m = len(kernel)
    gen_degrees = [k.degree(dual_shifts) or 0 for k in kernel]
    if image:
        rel = syzygies(kernel + image, ring=ring, rank=r_i, ambient_shifts=dual_shifts)
        relations = [FreeModuleVector(v.components[:m], ring) for v in rel]
        relations = [v for v in relations if not v.is_zero()]
    else:
        relations = []
    if relations:
        relations = minimal_generators(relations, gen_degrees, ring=ring, rank=m)
    return PresentedModule(ring, m, relations, gen_degrees)


def ext_module(Rm, i):
    key = ("ext", i)
    if key not in Rm._cache:
        Rm._cache[key] = ext_from_resolution(free_resolution(Rm), i)
    return Rm._cache[key]


def _relation_gb(P):
    key = "_gb"
    gb = getattr(P, key, None)
    if gb is None:
        gb = module_gb(P.relations, ring=P.ring, rank=P.rank) if P.relations else None
        setattr(P, key, gb)
    return gb


def module_length(P):
    """Length of a presented module; ``math.inf`` when infinite."""
    if P.rank == 0:
        return 0
    gb = _relation_gb(P)
    if gb is None:
        return INFINITE
    n = P.ring.nvars
    total = 0
    by_pos = {j: [] for j in range(P.rank)}
    for mono, pos in gb.lead_terms():
        by_pos[pos].append(mono)
    for j in range(P.rank):
        st = Staircase(by_pos[j], n)
        if not st.is_finite():
            return INFINITE
        total += st.count()
    return total


def module_min_gens(P):
    """dim_k P/mP = rank - rank of the relations' constant parts."""
    if P.rank == 0:
        return 0
    field = P.ring.field
    rows = [[c.constant_coeff() for c in v.components] for v in P.relations]
    rows = [r for r in rows if any(r)]
    return P.rank - (matrix_rank(rows, field) if rows else 0)


def module_annihilator(P):
    """ann(P) = intersection over j of (relations : e_j), each read off a
    position-over-term basis in which position j is least significant."""
    ring = P.ring
    if P.rank == 0:
        return unit_ideal(ring)
    if not P.relations:
        return Ideal(ring, [])
    out = None
    for j in range(P.rank):
        rank_map = [1 + p for p in range(P.rank)]
        rank_map[j] = 0
        gb = module_gb(P.relations, ring=ring, rank=P.rank, kind="pot", rank_map=rank_map)
        gens = [vec.components[j] for (mono, pos), vec in zip(gb.lead_terms(), gb.vectors) if pos == j]
        part = Ideal(ring, gens)
        out = part if out is None else intersect(out, part)
    return out


# ---------------------------------------------------------------- invariants


@dataclass
class InvariantBundle:
    d: int
    depth: int
    s: tuple
    h: tuple
    n0: int
    generalized_cm: bool
    e0_q: int = None

    def as_dict(self):
        return {
            "dim": self.d,
            "depth": self.depth,
            "s": list(self.s),
            "h": [x if x != INFINITE else "inf" for x in self.h],
            "n0": self.n0,
            "generalized_cm": self.generalized_cm,
        }


def _local_cohomology_modules(Rm, d):
    n = Rm.nvars
    return [ext_module(Rm, n - i) for i in range(d + 1)]


def s_vector(Rm):
    d = krull_dim(Rm)
    return tuple(module_min_gens(P) for P in _local_cohomology_modules(Rm, d))


def h_lengths(Rm):
    """Lengths of H^i_m(R) for i < d, with ``math.inf`` for infinite ones."""
    d = krull_dim(Rm)
    return tuple(module_length(P) for P in _local_cohomology_modules(Rm, d)[:d])


def h_vector(Rm):
    h = h_lengths(Rm)
    for i, x in enumerate(h):
        if x == INFINITE:
            raise NotGeneralizedCMError(i)
    return h


def is_generalized_cm(Rm):
    return all(x != INFINITE for x in h_lengths(Rm))


def _power_exponent(A, bound):
    """Least t with m^t inside A (A homogeneous); None if beyond ``bound``."""
    if A.is_unit():
        return 0
    st = A.staircase()
    if not st.is_finite():
        return None
    top = max(sum(e) for e in st.standard_monomials())
    return top + 1 if top + 1 <= bound else None


def n0(Rm, bound=N0_BOUND):
    """Least t with m^t H^i_m(R) = 0 for all i < d."""
    d = krull_dim(Rm)
    n = Rm.nvars
    t = 0
    for i in range(d):
        A = module_annihilator(ext_module(Rm, n - i))
        ti = _power_exponent(A, bound)
        if ti is None:
            raise RuntimeError(f"no power m^t with t <= {bound} kills H^{i}_m(R)")
        t = max(t, ti)
    return t


def invariants(Rm):
    d = krull_dim(Rm)
    s = s_vector(Rm)
    h = h_lengths(Rm)
    gcm = all(x != INFINITE for x in h)
    return InvariantBundle(d=d, depth=depth(Rm), s=s, h=h, n0=n0(Rm) if gcm else -1, generalized_cm=gcm)


def quotient_by_h0(Rm):
    """The model of R / H^0_m(R), namely S / (J : m^infinity)."""
    if "h0" not in Rm._cache:
        J = saturate(Rm.J, Rm.m())
        Rm._cache["h0"] = QuotientRingModel(Rm.ring, J.gb().generators, name=Rm.name)
    return Rm._cache["h0"]


# ---------------------------------------------------------------- standardness


def check_parameter_system(Rm, q):
    d = krull_dim(Rm)
    if len(q) != d:
        raise ParameterSystemError(f"expected {d} parameters, got {len(q)}")
    for x in q:
        if not x.is_homogeneous():
            raise ParameterSystemError(f"parameter {x} is not homogeneous")
    if not is_m_primary(Rm.lift(q)):
        raise ParameterSystemError("J + q is not m-primary")
    return d


def truncation_model(Rm, q, j):
    """S/(J + (x_1..x_j)) as a ring model (the module M/q_j M)."""
    if j == 0:
        return Rm
    X = Rm.lift(q[:j])
    return QuotientRingModel(Rm.ring, X.gb().generators)


def annihilates_local_cohomology(Rm, q, j, i):
    """Does every x in q kill H^i_m(M/q_j M)?"""
    N = truncation_model(Rm, q, j)
    P = ext_module(N, N.nvars - i)
    if P.rank == 0:
        return True
    A = module_annihilator(P)
    return all(A.contains(x) for x in q)


def is_standard(Rm, q, mode="verify", prefilter=True):
    """Standardness test: q H^i_m(R/q_j R) = 0 whenever i + j < d.

    ``mode="fast"`` accepts immediately when every parameter has degree at
    least 2 n0 (such ideals are standard); ``"verify"`` always runs the
    full annihilator test.
    """
    d = check_parameter_system(Rm, q)
    if prefilter:
        from .verify import colon_identities_hold
        if not colon_identities_hold(Rm, q, samples=(1,)):
            return False
    if mode == "fast" and is_generalized_cm(Rm):
        bound = 2 * n0(Rm)
        if all(x.total_degree() >= bound for x in q):
            return True
    for j in range(d):
        for i in range(d - j):
            if not annihilates_local_cohomology(Rm, q, j, i):
                return False
    return True
