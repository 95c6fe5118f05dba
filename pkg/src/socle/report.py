"""Verification records: one newline-delimited key=value line per check."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .poly import format_polynomial

HEADER = (
    "# claims quantified over all n >= 0 and all standard parameter ideals are checked "
    "on a finite window of n and on the shipped corpus only"
)


@dataclass
class Record:
    check: str
    ring: str
    n: int
    passed: bool
    lhs: object = None
    rhs: object = None
    ms: int = 0
    params: str = "-"
    asserted: bool = True
    note: str = ""
    extra: dict = field(default_factory=dict)

    def sort_key(self):
        return (self.ring, self.params, self.check, self.n, self.note)

    def line(self, timing=True):
        parts = [
            f"check={self.check}",
            f"ring={self.ring}",
            f"n={self.n}",
            f"pass={'true' if self.passed else 'false'}",
            f"lhs={render(self.lhs)}",
            f"rhs={render(self.rhs)}",
            f"ms={self.ms if timing else 0}",
            f"params={self.params}",
        ]
        if not self.asserted:
            parts.append("asserted=false")
        for k in sorted(self.extra):
            parts.append(f"{k}={render(self.extra[k])}")
        if self.note:
            parts.append("note=" + self.note.replace(" ", "_"))
        return " ".join(parts)

    @property
    def failed(self):
        return self.asserted and not self.passed


def render(value):
    """Compact, space-free rendering of ints, lists, polynomials and bases."""
    from .groebner import GroebnerBasis
    from .ideals import Ideal

    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Ideal):
        value = value.gb()
    if isinstance(value, GroebnerBasis):
        return "[" + ",".join(format_polynomial(g, spaces=False) for g in value.generators) + "]"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(render(v) for v in value) + "]"
    if hasattr(value, "terms") and hasattr(value, "ring"):
        return format_polynomial(value, spaces=False)
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    return str(value).replace(" ", "")


def format_report(records, timing=True):
    lines = [HEADER]
    for r in sorted(records, key=Record.sort_key):
        lines.append(r.line(timing=timing))
    return "\n".join(lines) + "\n"


def parse_record(line):
    out = {}
    for part in line.split():
        key, _, value = part.partition("=")
        out[key] = value
    return out


def ir_table_csv(rows):
    """rows: iterable of (n, ir, bound). Writes n, ir, bound, slack."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "ir", "bound", "slack"])
    for n, ir, bound in rows:
        w.writerow([n, ir, bound, bound - ir])
    return buf.getvalue()
