"""Monomial staircases: the monomials outside a leading-term ideal."""

from __future__ import annotations

from itertools import combinations

from .poly import mono_divides


def minimize_monomials(monos):
    monos = sorted(set(monos), key=lambda e: (sum(e), e))
    out = []
    for m in monos:
        if not any(mono_divides(o, m) for o in out):
            out.append(m)
    return out


class Staircase:
    """Standard monomials of the monomial ideal generated by ``lead_monomials``."""

    def __init__(self, lead_monomials, nvars):
        self.nvars = nvars
        self.lead_monomials = minimize_monomials(lead_monomials)
        self._std = None

    def is_standard(self, e):
        return not any(mono_divides(m, e) for m in self.lead_monomials)

    def is_finite(self):
        if any(sum(m) == 0 for m in self.lead_monomials):
            return True
        for i in range(self.nvars):
            if not any(m[i] > 0 and sum(m) == m[i] for m in self.lead_monomials):
                return False
        return True

    def iter_degrees(self, t_max=None):
        """Yield the standard monomials degree by degree (lists, sorted)."""
        if any(sum(m) == 0 for m in self.lead_monomials):
            return
        n = self.nvars
        current = [(0,) * n]
        t = 0
        while current and (t_max is None or t <= t_max):
            yield current
            nxt = set()
            for e in current:
                for i in range(n):
                    f = e[:i] + (e[i] + 1,) + e[i + 1:]
                    if f not in nxt and self.is_standard(f):
                        nxt.add(f)
            current = sorted(nxt, reverse=True)
            t += 1

    def standard_monomials(self):
        if not self.is_finite():
            raise ValueError("infinite staircase")
        if self._std is None:
            self._std = [e for layer in self.iter_degrees() for e in layer]
        return self._std

    def by_degree(self):
        if not self.is_finite():
            raise ValueError("infinite staircase")
        return list(self.iter_degrees())

    def count(self):
        return len(self.standard_monomials())

    def hilbert_function(self, t_max):
        values = [len(layer) for layer in self.iter_degrees(t_max)]
        return values + [0] * (t_max + 1 - len(values))

    def dimension(self):
        """Krull dimension of k[x]/(lead monomials): the largest set of
        variables supporting no lead monomial; -1 for the unit ideal."""
        if any(sum(m) == 0 for m in self.lead_monomials):
            return -1
        supports = [frozenset(i for i, x in enumerate(m) if x) for m in self.lead_monomials]
        for size in range(self.nvars, -1, -1):
            for subset in combinations(range(self.nvars), size):
                s = set(subset)
                if not any(sup <= s for sup in supports):
                    return size
        return 0
