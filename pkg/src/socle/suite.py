"""The corpus-wide verification run: expectation blocks, homological
self-consistency, and the per-parameter-system checks."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor

from .homological import (
    INFINITE,
    NotGeneralizedCMError,
    depth,
    ext_module,
    free_resolution,
    h_lengths,
    is_generalized_cm,
    is_standard,
    module_min_gens,
    n0,
    s_vector,
)
from .invariants import krull_dim, length
from .report import Record
from .ringfile import RingDescription, corpus, corpus_entry
from .verify import ir_sequence, is_extremal, multiplicity, run_parameter_checks

CHECK_IDS = (
    "expect",
    "resolution",
    "standardness",
    "duality-d0",
    "theorem-a",
    "theorem-b",
    "extremality",
    "lemma-2.2",
    "lemma-3.1",
    "lemma-3.2",
    "lemma-4.5",
    "equality-converse",
    "theorem-4.10",
    "f0-bound",
    "cm-formula",
    "monotonicity",
)


def _normalize(value):
    if value == INFINITE:
        return "inf"
    if isinstance(value, tuple):
        return [_normalize(v) for v in value]
    if isinstance(value, list):
        return [_normalize(v) for v in value]
    return value


def computed_value(desc, Rm, key, N=4):
    """Evaluate one expectation key on the model."""
    base, _, pname = key.partition(".")
    if pname:
        q = desc.parameter_system(pname, Rm.ring)
        if base == "ir":
            return ir_sequence(Rm, q, N)
        if base == "length":
            return length(Rm.lift(q.elements))
        if base == "standard":
            return is_standard(Rm, q.elements)
        if base == "extremal":
            return is_standard(Rm, q.elements) and is_extremal(Rm, q)
        if base == "e0":
            return multiplicity(Rm, q)
    else:
        if base == "dim":
            return krull_dim(Rm)
        if base == "depth":
            return depth(Rm)
        if base == "s":
            return list(s_vector(Rm))
        if base == "h":
            return _normalize(list(h_lengths(Rm)))
        if base == "n0":
            return n0(Rm)
        if base == "generalized_cm":
            return is_generalized_cm(Rm)
    raise KeyError(f"unknown expectation key {key!r}")


def check_expectations(desc, Rm, N=4):
    out = []
    for e in desc.expect:
        t0 = time.perf_counter()
        got = computed_value(desc, Rm, e.key, N)
        want = e.value
        if isinstance(want, list) and e.key.startswith("ir."):
            got = got[: len(want)]
        ms = int(round(1000 * (time.perf_counter() - t0)))
        out.append(Record("expect", desc.name, 0, got == want, got, want, ms, note=e.key))
    return out


def homological_checks(Rm):
    """Composition zero, minimality, Auslander-Buchsbaum against the first
    nonvanishing local cohomology, and grade vanishing below the codimension."""
    name = Rm.name or "ring"
    n = Rm.nvars
    t0 = time.perf_counter()
    res = free_resolution(Rm)
    d = krull_dim(Rm)
    nonzero = [i for i in range(n + 1) if module_min_gens(ext_module(Rm, i)) > 0]
    ms = int(round(1000 * (time.perf_counter() - t0)))
    out = [
        Record("resolution", name, 0, res.composition_is_zero(), ms=ms, note="composition-zero"),
        Record("resolution", name, 0, res.is_minimal(), note="minimal"),
    ]
    # depth = least i with H^i_m(R) != 0 = n - (largest i with Ext^i != 0)
    first = n - max(nonzero)
    out.append(Record("resolution", name, 0, depth(Rm) + res.length == n and first == depth(Rm),
                      depth(Rm) + res.length, n, note="auslander-buchsbaum"))
    codim = n - d
    out.append(Record("resolution", name, 0, min(nonzero) == codim, min(nonzero), codim,
                      note="grade-vanishing"))
    return out


def run_entry(desc, field_spec=None, N=4, window=6, include=None):
    """All records for one corpus entry."""
    Rm = desc.model(field_spec)
    want = (lambda c: True) if include is None else (lambda c: c in include)
    out = []
    if want("expect"):
        out += check_expectations(desc, Rm, N)
    if want("resolution"):
        out += homological_checks(Rm)
    for pname in desc.params:
        q = desc.parameter_system(pname, Rm.ring)
        recs = run_parameter_checks(Rm, q, N=N, window=window, include=include)
        if not is_generalized_cm(Rm):
            recs.append(Record("theorem-a", desc.name, 0, True, params=pname, asserted=False,
                               note="skipped:not-generalized-CM"))
        out += [r for r in recs if want(r.check)]
    return out


def _run_named(args):
    name, field_spec, N, window, include = args
    return run_entry(corpus_entry(name), field_spec, N, window, include)


def run_suite(descs=None, field_spec=None, N=4, window=6, include=None, jobs=1):
    """Records for every entry, in deterministic order regardless of ``jobs``."""
    descs = corpus() if descs is None else list(descs)
    if jobs > 1 and all(isinstance(d, RingDescription) for d in descs):
        shipped = {d.name for d in corpus()}
        if all(d.name in shipped for d in descs):
            tasks = [(d.name, field_spec, N, window, include) for d in descs]
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                chunks = list(ex.map(_run_named, tasks))
            return sorted((r for c in chunks for r in c), key=Record.sort_key)
    out = []
    for d in descs:
        out += run_entry(d, field_spec, N, window, include)
    return sorted(out, key=Record.sort_key)


__all__ = [
    "CHECK_IDS",
    "NotGeneralizedCMError",
    "check_expectations",
    "computed_value",
    "homological_checks",
    "run_entry",
    "run_suite",
]
