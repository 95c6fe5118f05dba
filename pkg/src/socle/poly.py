"""Exact multivariate polynomials over prime fields and the rationals.

Polynomials are immutable sparse maps ``{exponent tuple: coefficient}``.
Monomial orders are represented by key functions: a larger key means a
larger monomial.
"""

from __future__ import annotations

import re
from fractions import Fraction


class RingMismatchError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        elif column is not None:
            where = f"column {column}: "
        super().__init__(where + message)


# ---------------------------------------------------------------- fields


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


class PrimeField:
    """The field Z/p with representatives in [0, p)."""

    def __init__(self, p=32003):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    zero = 0
    one = 1

    def __call__(self, value):
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def norm(self, a):
        return a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def to_signed(self, a):
        """Symmetric representative, used for printing."""
        return a - self.p if a > self.p // 2 else a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def spec(self):
        return f"prime {self.p}"


class RationalField:
    """The rationals, backed by :class:`fractions.Fraction`."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value):
        return Fraction(value)

    def norm(self, a):
        return a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def to_signed(self, a):
        return a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"

    def spec(self):
        return "rational"


QQ = RationalField()
DEFAULT_PRIME = 32003


def field_from_spec(text):
    """Parse ``"rational"`` or ``"prime <p>"`` (also ``"prime"`` alone)."""
    parts = text.split()
    if parts == ["rational"]:
        return QQ
    if parts and parts[0] == "prime":
        return PrimeField(int(parts[1]) if len(parts) > 1 else DEFAULT_PRIME)
    raise ValueError(f"unknown field spec {text!r}")


# ---------------------------------------------------------------- monomials


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class MonomialOrder:
    """Degree reverse lexicographic, lexicographic, or a two-block
    elimination order (grevlex on the first ``k`` variables, ties broken
    by grevlex on the rest)."""

    def __init__(self, kind="grevlex", k=0):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown order {kind!r}")
        self.kind = kind
        self.k = k if kind == "elim" else 0

    def key(self, e):
        if self.kind == "grevlex":
            return (sum(e),) + tuple(-x for x in reversed(e))
        if self.kind == "lex":
            return tuple(e)
        k = self.k
        head, tail = e[:k], e[k:]
        return ((sum(head),) + tuple(-x for x in reversed(head))
                + (sum(tail),) + tuple(-x for x in reversed(tail)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.k) == (other.kind, other.k)

    def __hash__(self):
        return hash((self.kind, self.k))

    def __repr__(self):
        if self.kind == "elim":
            return f"MonomialOrder('elim', {self.k})"
        return f"MonomialOrder({self.kind!r})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination(k):
    return MonomialOrder("elim", k)


# ---------------------------------------------------------------- rings


class PolyRing:
    def __init__(self, field, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"bad variable name {name!r}")
        self.field = field
        self.names = names
        self.nvars = len(names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {self.names})"

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c)
        if c == 0:
            return self.zero
        return Polynomial._make(self, {(0,) * self.nvars: c})

    def gens(self):
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(Polynomial._make(self, {tuple(e): self.field.one}))
        return out

    def gen(self, name):
        return self.gens()[self.names.index(name)]

    def monomial(self, exps, coeff=1):
        return Polynomial(self, {tuple(exps): coeff})

    def monomials_of_degree(self, t):
        return [e for e in _compositions(t, self.nvars)]

    def with_field(self, field):
        return PolyRing(field, self.names)

    def extend_front(self, new_names):
        """The ring with ``new_names`` prepended as extra variables."""
        return PolyRing(self.field, tuple(new_names) + self.names)

    def drop_front(self, k):
        return PolyRing(self.field, self.names[k:])

    def fresh_names(self, k, stem="t"):
        out = []
        i = 0
        while len(out) < k:
            name = stem if i == 0 else f"{stem}{i}"
            if name not in self.names and name not in out:
                out.append(name)
            i += 1
        return out

    def parse(self, text):
        return parse_polynomial(text, self)


def _compositions(t, n):
    if n == 0:
        if t == 0:
            yield ()
        return
    if n == 1:
        yield (t,)
        return
    for first in range(t, -1, -1):
        for rest in _compositions(t - first, n - 1):
            yield (first,) + rest


# ---------------------------------------------------------------- polynomials


class Polynomial:
    """Immutable sparse polynomial; never stores zero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        field = ring.field
        clean = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != ring.nvars:
                raise RingMismatchError(f"exponent {e} has wrong arity for {ring.names}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = field(c)
            if c != 0:
                clean[e] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, ring, terms):
        # trusted constructor: terms already normalized and zero-free
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- structure

    @property
    def nvars(self):
        return self.ring.nvars

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self):
        return not self.terms or list(self.terms) == [(0,) * self.nvars]

    def constant_coeff(self):
        return self.terms.get((0,) * self.nvars, self.ring.field.zero)

    def total_degree(self):
        """Maximal total degree; 0 for the zero polynomial by convention."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_term(self, order=GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order=GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monic(self, order=GREVLEX):
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=0)

    # -- arithmetic

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return self.ring.constant(other)
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")
        return other

    def __add__(self, other):
        other = self._check(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = norm(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._make(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Polynomial._make(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        field = self.ring.field
        c = field(c)
        if c == 0:
            return self.ring.zero
        norm = field.norm
        return Polynomial._make(self.ring, {e: norm(a * c) for e, a in self.terms.items()})

    def mul_monomial(self, m, c=None):
        out = {mono_mul(e, m): a for e, a in self.terms.items()}
        p = Polynomial._make(self.ring, out)
        return p if c is None else p.scale(c)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        norm = self.ring.field.norm
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._make(self.ring, {e: v for e, v in ((e, norm(v)) for e, v in out.items()) if v})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- conversions

    def change_field(self, field):
        """Image under the coefficient map into ``field`` (e.g. Q -> F_p)."""
        ring = self.ring.with_field(field)
        return Polynomial(ring, {e: field(c) for e, c in self.terms.items()})

    def to_ring(self, ring):
        if ring.nvars != self.nvars:
            raise RingMismatchError("arity mismatch")
        return Polynomial(ring, self.terms)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)


def ring_extend(p, new_vars_front, names=None):
    """View ``p`` in a ring with ``new_vars_front`` variables prepended."""
    if names is None:
        names = p.ring.fresh_names(new_vars_front)
    ring = p.ring.extend_front(names)
    pad = (0,) * new_vars_front
    return Polynomial._make(ring, {pad + e: c for e, c in p.terms.items()})


def ring_contract(p, k, ring=None):
    """Inverse of :func:`ring_extend`; ``p`` must not involve the first k variables."""
    if ring is None:
        ring = p.ring.drop_front(k)
    out = {}
    for e, c in p.terms.items():
        if any(e[:k]):
            raise ValueError("polynomial involves eliminated variables")
        out[e[k:]] = c
    return Polynomial._make(ring, out)


# ---------------------------------------------------------------- text


def _format_coeff(field, c):
    c = field.to_signed(c)
    if isinstance(c, Fraction) and c.denominator == 1:
        c = c.numerator
    return c


def format_polynomial(p, order=GREVLEX, spaces=True):
    if not p.terms:
        return "0"
    names = p.ring.names
    field = p.ring.field
    pieces = []
    for e, c in p.sorted_terms(order):
        c = _format_coeff(field, c)
        neg = c < 0
        mag = -c if neg else c
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        mono = "*".join(factors)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append((neg, body))
    sep_plus, sep_minus = (" + ", " - ") if spaces else ("+", "-")
    first_neg, first_body = pieces[0]
    out = ("-" if first_neg else "") + first_body
    for neg, body in pieces[1:]:
        out += (sep_minus if neg else sep_plus) + body
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        col = m.start(m.lastindex) + 1
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), col))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", column=col)
            tokens.append(("op", ch, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    # expr   := ['-'|'+'] term (('+'|'-') term)*
    # term   := factor ('*' factor)*
    # factor := atom ('^' num)?
    # atom   := num ['/' num] | name | '(' expr ')'

    def __init__(self, text, ring):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, col = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", column=col)

    def parse(self):
        p = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            if kind in ("name", "num") or (kind == "op" and val == "("):
                raise ParseError("implicit multiplication is not allowed; use '*'", column=col)
            raise ParseError(f"unexpected {val!r}", column=col)
        return p

    def expr(self):
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self):
        p = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, n, col = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", column=col)
            p = p ** n
        return p

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv, dcol = self.take()
                if dk != "num" or dv == 0:
                    raise ParseError("bad rational denominator", column=dcol)
                return self.ring.constant(Fraction(val, dv))
            return self.ring.constant(val)
        if kind == "name":
            if val not in self.ring.names:
                raise ParseError(f"unknown variable {val!r}", column=col)
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            raise ParseError("unexpected end of input", column=col)
        raise ParseError(f"unexpected {val!r}", column=col)


def parse_polynomial(text, ring):
    """Parse e.g. ``"x^2 - 3/2*y*z"``; multiplication must be explicit."""
    return _Parser(text, ring).parse()
