"""Line-oriented ring description files.

    field prime 32003          # or: field rational
    vars x y z w
    ideal: x*z, x*w, y*z, y*w
    params q: x^2 - z^2, y^2 - w^2
    expect s = [0, 1, 2] # provenance note

Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .ideals import QuotientRingModel
from .poly import DEFAULT_PRIME, ParseError, PolyRing, field_from_spec, parse_polynomial
from .verify import ParameterSystem

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class RingFileError(ParseError):
    pass


class InhomogeneousError(RingFileError):
    pass


@dataclass
class Expectation:
    key: str
    value: object
    source: str = ""


@dataclass
class RingDescription:
    name: str
    field_spec: str = f"prime {DEFAULT_PRIME}"
    variables: tuple = ()
    ideal: tuple = ()
    params: dict = field(default_factory=dict)
    expect: list = field(default_factory=list)

    def ring(self, field_spec=None):
        return PolyRing(field_from_spec(field_spec or self.field_spec), self.variables)

    def model(self, field_spec=None):
        R = self.ring(field_spec)
        return QuotientRingModel(R, [R.parse(g) for g in self.ideal], name=self.name)

    def parameter_system(self, name, ring):
        if name not in self.params:
            raise KeyError(f"ring {self.name} has no parameter system {name!r}")
        return ParameterSystem([ring.parse(t) for t in self.params[name]], name)

    def expected(self):
        return {e.key: e.value for e in self.expect}

    def to_text(self):
        lines = [f"field {self.field_spec}", "vars " + " ".join(self.variables)]
        lines.append("ideal: " + ", ".join(self.ideal))
        for name, elems in self.params.items():
            lines.append(f"params {name}: " + ", ".join(elems))
        for e in self.expect:
            tail = f" # {e.source}" if e.source else ""
            lines.append(f"expect {e.key} = {format_value(e.value)}{tail}")
        return "\n".join(lines) + "\n"


def _split_list(text, line, col):
    items = []
    pos = 0
    for chunk in text.split(","):
        stripped = chunk.strip()
        if not stripped:
            if text.strip():
                raise RingFileError("empty list entry", line, col + pos)
        else:
            items.append((stripped, col + pos + len(chunk) - len(chunk.lstrip())))
        pos += len(chunk) + 1
    return items


def format_value(value):
    """Inverse of the expectation value parser: JSON with bare ``inf``."""
    if value == "inf":
        return "inf"
    if isinstance(value, list):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    return json.dumps(value)


def _parse_value(text, line, col):
    text = text.strip()
    try:
        return json.loads(re.sub(r'(?<!")\binf\b(?!")', '"inf"', text))
    except json.JSONDecodeError as exc:
        raise RingFileError(f"bad value {text!r}", line, col + exc.pos) from None


def parse_ring_text(text, name="ring"):
    desc = RingDescription(name=name)
    seen_vars = False
    pending = []  # (kind, key, [(poly text, col)], line)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        head, _, rest = stripped.partition(" ")
        col0 = indent + len(head) + 2
        if head == "field":
            spec = rest.split("#")[0].strip()
            try:
                desc.field_spec = field_from_spec(spec).spec()
            except ValueError as exc:
                raise RingFileError(str(exc), lineno, col0) from None
        elif head == "vars":
            names = rest.split("#")[0].split()
            for v in names:
                if not _NAME.match(v):
                    raise RingFileError(f"bad variable name {v!r}", lineno, raw.index(v) + 1)
            if len(set(names)) != len(names):
                raise RingFileError("duplicate variable name", lineno, col0)
            desc.variables = tuple(names)
            seen_vars = True
        elif head in ("ideal:", "ideal"):
            body = stripped[len("ideal"):].lstrip()
            if not body.startswith(":"):
                raise RingFileError("expected ':' after ideal", lineno, indent + len("ideal") + 1)
            offset = indent + stripped.index(":") + 2
            pending.append(("ideal", None, _split_list(body[1:], lineno, offset), lineno))
        elif head == "params":
            key, colon, body = rest.partition(":")
            key = key.strip()
            if not colon or not _NAME.match(key):
                raise RingFileError("expected 'params <name>: ...'", lineno, col0)
            offset = indent + stripped.index(":") + 2
            pending.append(("params", key, _split_list(body, lineno, offset), lineno))
        elif head == "expect":
            body, _, source = rest.partition("#")
            key, eq, value = body.partition("=")
            if not eq or not key.strip():
                raise RingFileError("expected 'expect <key> = <value>'", lineno, col0)
            vcol = indent + stripped.index("=") + 2
            desc.expect.append(Expectation(key.strip(), _parse_value(value, lineno, vcol), source.strip()))
        else:
            raise RingFileError(f"unknown directive {head!r}", lineno, indent + 1)
    if not seen_vars:
        raise RingFileError("missing 'vars' line", 1, 1)
    R = desc.ring()
    for kind, key, items, lineno in pending:
        texts = []
        for t, col in items:
            try:
                p = parse_polynomial(t, R)
            except ParseError as exc:
                raise RingFileError(exc.message, lineno, col + exc.column - 1) from None
            if not p.is_homogeneous():
                raise InhomogeneousError(f"{t!r} is not homogeneous", lineno, col)
            texts.append(t)
        if kind == "ideal":
            desc.ideal = desc.ideal + tuple(texts)
        else:
            desc.params[key] = tuple(texts)
    return desc


def parse_ring_file(path):
    path = Path(path)
    return parse_ring_text(path.read_text(encoding="utf-8"), name=path.stem)


def corpus():
    """The shipped corpus, sorted by id."""
    root = resources.files("socle") / "corpus"
    out = []
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".ring"):
            out.append(parse_ring_text(entry.read_text(encoding="utf-8"), name=entry.name[: -len(".ring")]))
    return out


def corpus_entry(name):
    for d in corpus():
        if d.name == name:
            return d
    raise KeyError(f"no corpus entry named {name!r}")


def load_ring(name_or_path):
    """A corpus id or a path to a ring file."""
    p = Path(name_or_path)
    if p.suffix == ".ring" or p.exists():
        return parse_ring_file(p)
    return corpus_entry(name_or_path)


__all__ = [
    "Expectation",
    "InhomogeneousError",
    "RingDescription",
    "RingFileError",
    "corpus",
    "corpus_entry",
    "load_ring",
    "parse_ring_file",
    "parse_ring_text",
]
