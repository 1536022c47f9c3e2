"""The differential polynomial ring k{y1,...,yn} with m commuting derivations.

Derivatives theta(y_j) are interned as ordinary polynomial variables in a
growing table keyed by (indeterminate, multi-index), so prolongation reuses
variable ids and runs stay reproducible.  The ranking (orderly by default)
induces the variable priority of the underlying monomial order: derivatives
of higher rank are greater variables, slack variables sit below everything.

Rankings compare derivatives; leaders, initials, separants, differentiation,
prolongation and the order/degree statistics of systems all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .fields import CoefficientField, QQ, RationalFunctionField
from .polys import (
    ONE_MONOMIAL,
    Monomial,
    Poly,
    PolyRing,
    monomial_degree_in,
)

DerivativeOperator = tuple  # multi-index (k1, ..., km)


def op_order(op: DerivativeOperator) -> int:
    return sum(op)


def op_mul(a: DerivativeOperator, b: DerivativeOperator) -> DerivativeOperator:
    return tuple(x + y for x, y in zip(a, b))


def op_divides(a: DerivativeOperator, b: DerivativeOperator) -> bool:
    return all(x <= y for x, y in zip(a, b))


def ops_up_to(m: int, h: int):
    """All multi-indices of m entries with total order <= h, graded then lex."""
    out = []
    for total in range(h + 1):
        for comp in itertools.product(range(total + 1), repeat=m):
            if sum(comp) == total:
                out.append(comp)
    return out


@dataclass(frozen=True)
class Derivative:
    """theta(y_j): an algebraic indeterminate of the differential ring."""

    indet: int  # 0-based index into the ring's indeterminate list
    op: DerivativeOperator

    @property
    def order(self) -> int:
        return op_order(self.op)


@dataclass(frozen=True)
class Ranking:
    """Total order on derivatives satisfying theta(u) >= u and
    u >= v  =>  theta(u) >= theta(v).

    * ``orderly``: (total order, indeterminate index, multi-index lex); the
      default, and the only kind used by the decomposition pipeline.
    * ``elimination``: (indeterminate index, total order, multi-index lex);
      satisfies both ranking axioms but is not orderly; kept for tests.
    """

    kind: str = "orderly"

    def key(self, d: Derivative) -> tuple:
        if self.kind == "orderly":
            return (d.order, d.indet, d.op)
        if self.kind == "elimination":
            return (d.indet, d.order, d.op)
        raise ValueError(f"unknown ranking kind {self.kind!r}")

    def compare(self, u: Derivative, v: Derivative) -> int:
        ku, kv = self.key(u), self.key(v)
        return -1 if ku < kv else (0 if ku == kv else 1)

    def is_orderly(self) -> bool:
        return self.kind == "orderly"


class DiffRing(PolyRing):
    """Differential polynomial ring; also the PolyRing its elements live in."""

    def __init__(
        self,
        m: int,
        names: Sequence[str],
        field: CoefficientField = QQ,
        ranking: Optional[Ranking] = None,
        order: str = "grevlex",
    ):
        if m < 1:
            raise ValueError("need at least one derivation")
        if not names:
            raise ValueError("need at least one differential indeterminate")
        if isinstance(field, RationalFunctionField) and m != 1:
            raise ValueError("Q(x) coefficients require an ordinary ring (m = 1)")
        super().__init__(field, order)
        self.m = m
        self.names = tuple(names)
        self.n = len(self.names)
        self.ranking = ranking or Ranking()
        self._derivative_ids: dict[Derivative, int] = {}
        self._id_derivative: dict[int, Derivative] = {}

    # -- derivative interning -------------------------------------------------
    def derivative_id(self, indet: int, op: DerivativeOperator) -> int:
        if not (0 <= indet < self.n):
            raise ValueError(f"indeterminate index {indet} out of range")
        if len(op) != self.m:
            raise ValueError(f"multi-index arity {len(op)} != m = {self.m}")
        d = Derivative(indet, tuple(op))
        vid = self._derivative_ids.get(d)
        if vid is None:
            key = (1,) + self.ranking.key(d)
            vid = self.add_var(self._derivative_name(d), sort_key=key, kind="derivative")
            self._derivative_ids[d] = vid
            self._id_derivative[vid] = d
        return vid

    def derivative_of(self, vid: int) -> Derivative:
        d = self._id_derivative.get(vid)
        if d is None:
            raise ValueError(f"variable {vid} is not a derivative")
        return d

    def is_derivative_var(self, vid: int) -> bool:
        return vid in self._id_derivative

    def _derivative_name(self, d: Derivative) -> str:
        base = self.names[d.indet]
        if all(k == 0 for k in d.op):
            return base
        return f"{base}[{','.join(str(k) for k in d.op)}]"

    def dvar(self, name_or_index, op=None) -> Poly:
        """Polynomial for one derivative; ``op`` may be an int when m == 1."""
        if isinstance(name_or_index, str):
            indet = self.names.index(name_or_index)
        else:
            indet = name_or_index
        if op is None:
            op = (0,) * self.m
        elif isinstance(op, int):
            if self.m != 1:
                raise ValueError("integer multi-index shorthand needs m = 1")
            op = (op,)
        return self.var_poly(self.derivative_id(indet, tuple(op)))

    def clone(self, order: Optional[str] = None) -> "DiffRing":
        other = DiffRing(self.m, self.names, self.field, self.ranking, order or self.order)
        other._vars = self._vars
        other._derivative_ids = self._derivative_ids
        other._id_derivative = self._id_derivative
        return other


# ---------------------------------------------------------------------------
# differentiation


def differentiate(f: Poly, i: int) -> Poly:
    """Apply the i-th derivation (0-based) exactly, Leibniz term by term."""
    ring = f.ring
    if not isinstance(ring, DiffRing):
        raise ValueError("differentiation needs a differential ring")
    if not (0 <= i < ring.m):
        raise ValueError(f"derivation index {i} out of range")
    unit = tuple(1 if j == i else 0 for j in range(ring.m))
    out: dict = {}

    def bump(mono: Monomial, coeff):
        if not coeff:
            return
        s = out.get(mono)
        s = coeff if s is None else s + coeff
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)

    for mono, c in f.terms.items():
        dc = ring.field.derivative(c)
        if dc:
            bump(mono, dc)
        for idx, (vid, e) in enumerate(mono):
            d = ring.derivative_of(vid)
            dvid = ring.derivative_id(d.indet, op_mul(d.op, unit))
            rest = list(mono)
            if e == 1:
                del rest[idx]
            else:
                rest[idx] = (vid, e - 1)
            new = dict(rest)
            new[dvid] = new.get(dvid, 0) + 1
            bump(tuple(sorted(new.items())), c * e)
    return Poly(ring, out)


def apply_operator(f: Poly, op: DerivativeOperator) -> Poly:
    """Apply a derivative operator (iterated differentiate; order irrelevant)."""
    ring = f.ring
    if len(op) != ring.m:
        raise ValueError("multi-index arity mismatch")
    out = f
    for i, k in enumerate(op):
        for _ in range(k):
            out = differentiate(out, i)
    return out


# ---------------------------------------------------------------------------
# leaders


@dataclass(frozen=True)
class LeaderData:
    """Leader decomposition f = initial * u^degree + lower-degree terms."""

    leader: Derivative
    leader_vid: int
    degree: int
    initial: Poly
    separant: Poly

    @property
    def rank(self):
        return (self.leader, self.degree)


def leader_data(f: Poly) -> LeaderData:
    ring = f.ring
    if not isinstance(ring, DiffRing):
        raise ValueError("leaders need a differential ring")
    if f.is_constant():
        raise ValueError("constant polynomial has no leader")
    rk = ring.ranking
    best_vid = None
    best_key = None
    for vid in f.variables():
        d = ring.derivative_of(vid)  # raises on slack variables
        k = rk.key(d)
        if best_key is None or k > best_key:
            best_key, best_vid = k, vid
    d = ring.derivative_of(best_vid)
    deg = f.degree_in(best_vid)
    initial = f.coefficient_of(best_vid, deg)
    sep: dict = {}
    for mono, c in f.terms.items():
        e = monomial_degree_in(mono, best_vid)
        if e == 0:
            continue
        rest = [(v, x) for v, x in mono if v != best_vid]
        if e > 1:
            rest.append((best_vid, e - 1))
        mono2 = tuple(sorted(rest))
        s = sep.get(mono2)
        s = c * e if s is None else s + c * e
        if s:
            sep[mono2] = s
        else:
            sep.pop(mono2, None)
    return LeaderData(d, best_vid, deg, initial, Poly(ring, sep))


def rank_key(f: Poly):
    """Sort key for ranks: (ranking key of leader, degree)."""
    ld = leader_data(f)
    return (f.ring.ranking.key(ld.leader), ld.degree)


def poly_order(f: Poly) -> int:
    """Maximal order of a derivative appearing effectively; 0 for constants."""
    ring = f.ring
    best = 0
    for vid in f.variables():
        best = max(best, ring.derivative_of(vid).order)
    return best


# ---------------------------------------------------------------------------
# statistics and prolongation


@dataclass(frozen=True)
class SystemStats:
    """Order/degree statistics of a generator set and optional target."""

    h_per_indet: tuple
    H: int
    D: int
    ord_f: Optional[int] = None
    D_f: Optional[int] = None

    @property
    def H_with_target(self) -> int:
        return max(self.H, self.ord_f or 0)

    @property
    def D_with_target(self) -> int:
        return max(self.D, self.D_f or 0)


def order_stats(F: Sequence[Poly], f: Optional[Poly] = None) -> SystemStats:
    polys = [p for p in F if not p.is_zero()]
    ring = polys[0].ring if polys else (f.ring if f is not None else None)
    n = ring.n if ring is not None else 0
    h = [0] * n
    D = 0
    for p in polys:
        D = max(D, p.total_degree)
        for vid in p.variables():
            d = p.ring.derivative_of(vid)
            h[d.indet] = max(h[d.indet], d.order)
    stats_ord_f = None
    stats_D_f = None
    if f is not None:
        stats_ord_f = poly_order(f)
        stats_D_f = f.total_degree
    return SystemStats(tuple(h), max(h, default=0), D, stats_ord_f, stats_D_f)


def prolong(F: Sequence[Poly], h: int) -> list:
    """All derivatives theta(g), g in F, ord theta <= h; zero results dropped.

    Deterministic order: generators in input order, operators graded-lex.
    """
    if h < 0:
        raise ValueError("prolongation order must be non-negative")
    out = []
    seen = set()
    for g in F:
        if g.is_zero():
            continue
        ring = g.ring
        level = {(0,) * ring.m: g}
        for op in ops_up_to(ring.m, h):
            if sum(op) == 0:
                p = g
            else:
                i = next(j for j, k in enumerate(op) if k)
                parent = tuple(k - 1 if j == i else k for j, k in enumerate(op))
                p = differentiate(level[parent], i)
                level[op] = p
            if not p.is_zero() and p not in seen:
                seen.add(p)
                out.append(p)
    return out


@dataclass
class DiffSystem:
    """A generator set F with an optional target polynomial (default 1)."""

    ring: DiffRing
    generators: list
    target: Optional[Poly] = None

    def __post_init__(self):
        for g in self.generators:
            if g.ring is not self.ring:
                raise ValueError("generator lives in a different ring")
        if self.target is not None and self.target.ring is not self.ring:
            raise ValueError("target lives in a different ring")

    @property
    def target_or_one(self) -> Poly:
        return self.target if self.target is not None else self.ring.one

    def stats(self) -> SystemStats:
        return order_stats(self.generators, self.target)
