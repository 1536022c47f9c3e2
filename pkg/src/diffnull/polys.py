"""Sparse multivariate polynomials over an exact coefficient field.

A monomial is a tuple of ``(variable id, exponent)`` pairs sorted by id with
all exponents positive; the empty tuple is 1.  A :class:`Poly` belongs to a
:class:`PolyRing`, which owns the variable table and the monomial order
(graded reverse lexicographic by default, plain lexicographic available).
Variable priority comes from a per-variable sort key, so tables may grow
without invalidating existing polynomials.

All values are immutable after construction; operations never mutate inputs.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Optional

from .fields import CoefficientField, QQ, RatFunc

Monomial = tuple  # ((vid, exp), ...) sorted by vid, exps > 0
ONE_MONOMIAL: Monomial = ()


# ---------------------------------------------------------------------------
# monomial helpers


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True iff a | b componentwise."""
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b; requires b | a."""
    out = dict(a)
    for v, e in b:
        r = out.get(v, 0) - e
        if r < 0:
            raise ValueError("monomial not divisible")
        if r == 0:
            out.pop(v, None)
        else:
            out[v] = r
    return tuple(sorted(out.items()))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    out = dict(a)
    for v, e in b:
        if out.get(v, 0) < e:
            out[v] = e
    return tuple(sorted(out.items()))


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def monomial_degree_in(m: Monomial, vid: int) -> int:
    for v, e in m:
        if v == vid:
            return e
    return 0


def monomial_vars(m: Monomial):
    return tuple(v for v, _ in m)


class VarInfo:
    """One variable-table entry: display name, priority key, role."""

    __slots__ = ("name", "sort_key", "kind")

    def __init__(self, name: str, sort_key: tuple, kind: str):
        self.name = name
        self.sort_key = sort_key
        self.kind = kind  # 'plain' | 'derivative' | 'slack'

    def __repr__(self):
        return f"VarInfo({self.name!r}, {self.sort_key!r}, {self.kind!r})"


class PolyRing:
    """Variable table + coefficient field + monomial order.

    The table is append-only; priority keys are intrinsic to each variable,
    so interning new variables never reorders existing monomials.  Slack
    variables always rank below every other variable, which keeps
    elimination pressure on the original ones.
    """

    def __init__(self, field: CoefficientField = QQ, order: str = "grevlex"):
        if order not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {order!r}")
        self.field = field
        self.order = order
        self._vars: list[VarInfo] = []
        self._mcmp_key = functools.cmp_to_key(self.monomial_cmp)

    # -- variables ---------------------------------------------------------
    def add_var(self, name: str, sort_key: Optional[tuple] = None, kind: str = "plain") -> int:
        vid = len(self._vars)
        if sort_key is None:
            if kind == "slack":
                sort_key = (-1, -vid)
            else:
                sort_key = (0, -vid)  # earlier variables rank higher
        self._vars.append(VarInfo(name, sort_key, kind))
        return vid

    def add_slack_var(self) -> int:
        return self.add_var(f"~z{len(self._vars)}", kind="slack")

    def var_info(self, vid: int) -> VarInfo:
        return self._vars[vid]

    def var_key(self, vid: int) -> tuple:
        return self._vars[vid].sort_key

    def num_vars(self) -> int:
        return len(self._vars)

    def new_var(self, name: str) -> "Poly":
        return self.var_poly(self.add_var(name))

    def var_poly(self, vid: int) -> "Poly":
        return Poly(self, {((vid, 1),): self.field.one})

    # -- monomial order -----------------------------------------------------
    def monomial_cmp(self, a: Monomial, b: Monomial) -> int:
        if a == b:
            return 0
        if self.order == "grevlex":
            da, db = monomial_degree(a), monomial_degree(b)
            if da != db:
                return -1 if da < db else 1
            ea, eb = dict(a), dict(b)
            merged = sorted(
                set(ea) | set(eb), key=lambda v: self._vars[v].sort_key
            )  # ascending priority: least variable first
            for v in merged:
                xa, xb = ea.get(v, 0), eb.get(v, 0)
                if xa != xb:
                    # in grevlex, less of the least variable wins
                    return 1 if xa < xb else -1
            return 0
        # lex: scan from the greatest variable down
        ea, eb = dict(a), dict(b)
        merged = sorted(
            set(ea) | set(eb), key=lambda v: self._vars[v].sort_key, reverse=True
        )
        for v in merged:
            xa, xb = ea.get(v, 0), eb.get(v, 0)
            if xa != xb:
                return 1 if xa > xb else -1
        return 0

    def monomial_sort_key(self, m: Monomial):
        return self._mcmp_key(m)

    # -- construction --------------------------------------------------------
    def poly(self, terms: dict) -> "Poly":
        return Poly(self, {m: c for m, c in terms.items() if c})

    def const(self, value) -> "Poly":
        c = self.field.from_fraction(Fraction(value)) if not isinstance(value, RatFunc) else value
        return Poly(self, {ONE_MONOMIAL: c} if c else {})

    def coeff_const(self, c) -> "Poly":
        return Poly(self, {ONE_MONOMIAL: c} if c else {})

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return Poly(self, {ONE_MONOMIAL: self.field.one})

    def clone(self, order: Optional[str] = None) -> "PolyRing":
        """Copy sharing variable identity but possibly a different order."""
        other = PolyRing(self.field, order or self.order)
        other._vars = self._vars  # shared append-only table
        return other

    # -- printing --------------------------------------------------------------
    def monomial_str(self, m: Monomial) -> str:
        if not m:
            return "1"
        factors = sorted(m, key=lambda p: self._vars[p[0]].sort_key, reverse=True)
        parts = []
        for v, e in factors:
            name = self._vars[v].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"PolyRing({self.field.name}, {self.order}, {len(self._vars)} vars)"


class Poly:
    """Immutable sparse polynomial; ``terms`` maps monomial -> nonzero coeff."""

    __slots__ = ("ring", "terms", "_lm", "_deg", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        if terms:
            self._lm = max(terms, key=ring._mcmp_key)
            self._deg = max(monomial_degree(m) for m in terms)
        else:
            self._lm = None
            self._deg = 0
        self._hash = None

    # -- basic structure ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONOMIAL in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(ONE_MONOMIAL, self.ring.field.zero)

    @property
    def lm(self) -> Monomial:
        if self._lm is None:
            raise ValueError("zero polynomial has no leading monomial")
        return self._lm

    @property
    def lc(self):
        return self.terms[self.lm]

    @property
    def total_degree(self) -> int:
        return self._deg

    def degree_in(self, vid: int) -> int:
        return max((monomial_degree_in(m, vid) for m in self.terms), default=0)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def univariate_view(self, vid: int) -> dict:
        """Map degree-in-vid -> coefficient Poly free of vid."""
        buckets: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = monomial_degree_in(m, vid)
            rest = tuple(p for p in m if p[0] != vid)
            buckets.setdefault(e, {})[rest] = c
        return {e: Poly(self.ring, t) for e, t in buckets.items()}

    def coefficient_of(self, vid: int, power: int) -> "Poly":
        out: dict = {}
        for m, c in self.terms.items():
            if monomial_degree_in(m, vid) == power:
                out[tuple(p for p in m if p[0] != vid)] = c
        return Poly(self.ring, out)

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.ring is not other.ring:
            raise ValueError("operands live in different rings")

    def __add__(self, other):
        other = self._as_poly(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._as_poly(other))

    def __mul__(self, other):
        other = self._as_poly(other)
        self._check(other)
        if not self.terms or not other.terms:
            return self.ring.zero
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = monomial_mul(ma, mb)
                s = out.get(m)
                s = ca * cb if s is None else s + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(self.ring, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        """Multiply by a field element."""
        if not c:
            return self.ring.zero
        return Poly(self.ring, {m: co * c for m, co in self.terms.items()})

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.lc
        one = self.ring.field.one
        if lc == one:
            return self
        return Poly(self.ring, {m: c / lc for m, c in self.terms.items()})

    def _as_poly(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        if isinstance(other, RatFunc):
            return self.ring.coeff_const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __radd__(self, other):
        return self + other

    def __rsub__(self, other):
        return (-self) + other

    # -- comparisons ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                return self.is_constant() and self.constant_value() == self.ring.field.from_fraction(Fraction(other))
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            items = []
            for m, c in self.terms.items():
                items.append((m, c))
            self._hash = hash(frozenset(items))
        return self._hash

    def sorted_terms(self) -> list:
        """Terms in strictly descending monomial order."""
        return sorted(self.terms.items(), key=lambda t: self.ring._mcmp_key(t[0]), reverse=True)

    def sort_string(self) -> str:
        return str(self)

    def convert(self, ring: PolyRing) -> "Poly":
        """Reinterpret in a ring sharing the same variable table."""
        if ring._vars is not self.ring._vars:
            raise ValueError("target ring has a different variable table")
        return Poly(ring, dict(self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(_term_str(self.ring, m, c))
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self):
        return f"Poly({self})"


def _term_str(ring: PolyRing, m: Monomial, c) -> str:
    ms = ring.monomial_str(m)
    if isinstance(c, RatFunc):
        if c.is_constant():
            c = c.constant_value()
        else:
            cs = repr(c)
            return cs if not m else f"({cs})*{ms}"
    if not m:
        return str(c)
    if c == 1:
        return ms
    if c == -1:
        return f"-{ms}"
    return f"{c}*{ms}"


def pseudo_divide(g: Poly, b: Poly, vid: int):
    """Pseudo-division of g by b viewed as univariate polynomials in vid.

    Returns ``(quotient, remainder, e)`` with the exact identity
    ``init^e * g == quotient*b + remainder`` where ``init`` is the leading
    coefficient of b in vid, ``deg_vid(remainder) < deg_vid(b)`` and
    ``e <= deg_vid(g) - deg_vid(b) + 1``.
    """
    g._check(b)
    d = b.degree_in(vid)
    if d == 0:
        raise ValueError("divisor must have positive degree in the division variable")
    init = b.coefficient_of(vid, d)
    ring = g.ring
    q = ring.zero
    r = g
    e = 0
    while not r.is_zero():
        dr = r.degree_in(vid)
        if dr < d:
            break
        lead = r.coefficient_of(vid, dr)
        shift = Poly(ring, {((vid, dr - d),): ring.field.one}) if dr > d else ring.one
        q = init * q + lead * shift
        r = init * r - lead * shift * b
        e += 1
    return q, r, e
