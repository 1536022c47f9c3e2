"""Ritt reduction machinery: reducedness, pseudo-remainders, triangular and
autoreduced sets, characteristic sets, delta polynomials, coherence, and rank
comparison of autoreduced sets.

Conventions used throughout:

* a triangular set has pairwise distinct leaders and no constants;
* an autoreduced set is pairwise fully reduced (algebraically autoreduced
  demands only the degree condition);
* algebraic pseudo-remainders reduce against elements in strictly decreasing
  leader order, which guarantees the result is algebraically reduced with
  respect to every element;
* ties between equal-rank candidates are broken by deterministic input order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .diffring import (
    Derivative,
    DiffRing,
    apply_operator,
    leader_data,
    op_divides,
    op_order,
    ops_up_to,
    poly_order,
    rank_key,
)
from .groebner import ResourceCaps, buchberger, ideal_membership, normal_form
from .polys import Poly, pseudo_divide


class RankOrder(enum.Enum):
    LOWER = "lower"
    EQUAL = "equal"
    HIGHER = "higher"


# ---------------------------------------------------------------------------
# reducedness


def reducedness(f: Poly, g: Poly) -> Tuple[bool, bool, bool]:
    """(partially, algebraically, fully) reduced flags of f w.r.t. g.

    Partially: no proper derivative of g's leader appears in f.
    Algebraically: deg of f in g's leader is below g's.
    """
    if g.is_constant():
        raise ValueError("reducedness against a constant is undefined")
    ring = g.ring
    ld = leader_data(g)
    partially = True
    for vid in f.variables():
        d = ring.derivative_of(vid)
        if (
            d.indet == ld.leader.indet
            and d.op != ld.leader.op
            and op_divides(ld.leader.op, d.op)
        ):
            partially = False
            break
    algebraically = f.degree_in(ld.leader_vid) < ld.degree
    return partially, algebraically, partially and algebraically


def is_reduced(f: Poly, g: Poly) -> bool:
    return reducedness(f, g)[2]


# ---------------------------------------------------------------------------
# triangular / autoreduced sets


class TriangularSet:
    """Non-constant polynomials with pairwise distinct leaders, rank-sorted."""

    def __init__(self, elements: Iterable[Poly]):
        elems = list(elements)
        for p in elems:
            if p.is_constant():
                raise ValueError("triangular sets cannot contain constants")
        elems.sort(key=lambda p: (rank_key(p), str(p)))
        leaders = [leader_data(p).leader for p in elems]
        if len(set(leaders)) != len(leaders):
            raise ValueError("leaders of a triangular set must be distinct")
        self.elements: tuple = tuple(elems)
        self.leaders: tuple = tuple(leaders)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __bool__(self):
        return bool(self.elements)

    def ranks(self) -> tuple:
        return tuple(rank_key(p) for p in self.elements)

    def __repr__(self):
        inner = ", ".join(str(p) for p in self.elements)
        return f"TriangularSet([{inner}])"


class AutoreducedSet(TriangularSet):
    """Triangular set carrying pairwise-reducedness flags."""

    def __init__(self, elements: Iterable[Poly]):
        super().__init__(elements)
        alg = True
        full = True
        for i, p in enumerate(self.elements):
            for j, q in enumerate(self.elements):
                if i == j:
                    continue
                partially, algebraically, _ = reducedness(p, q)
                alg = alg and algebraically
                full = full and partially and algebraically
        self.algebraically_autoreduced = alg
        self.fully_autoreduced = full

    def require_fully_autoreduced(self):
        if not self.fully_autoreduced:
            raise ValueError("set is not fully autoreduced")

    def __repr__(self):
        inner = ", ".join(str(p) for p in self.elements)
        return f"AutoreducedSet([{inner}])"


def compare_rank(A: AutoreducedSet, B: AutoreducedSet) -> RankOrder:
    """Rank comparison of rank-sorted sets: elementwise on the common prefix,
    then the longer set (with equal prefix) ranks lower."""
    ra, rb = A.ranks(), B.ranks()
    for x, y in zip(ra, rb):
        if x < y:
            return RankOrder.LOWER
        if x > y:
            return RankOrder.HIGHER
    if len(ra) > len(rb):
        return RankOrder.LOWER
    if len(ra) < len(rb):
        return RankOrder.HIGHER
    return RankOrder.EQUAL


# ---------------------------------------------------------------------------
# algebraic pseudo-remainder


@dataclass(frozen=True)
class ReductionStep:
    divisor: Poly
    initial: Poly
    exponent: int
    quotient: Poly


def algebraic_remainder(g: Poly, B, with_chain: bool = False):
    """Algebraic pseudo-remainder of g against a triangular set B.

    Reduces against elements in strictly decreasing leader order; the result
    is algebraically reduced w.r.t. every element of B, and the recorded
    chain witnesses P*g - r in (B) for P the product of used initial powers.
    """
    elems = list(B.elements if isinstance(B, TriangularSet) else B)
    if not elems:
        return (g, []) if with_chain else g
    ring = g.ring
    order = sorted(
        range(len(elems)),
        key=lambda i: rank_key(elems[i]),
        reverse=True,
    )
    r = g
    chain: List[ReductionStep] = []
    for i in order:
        b = elems[i]
        ld = leader_data(b)
        if r.degree_in(ld.leader_vid) < ld.degree:
            continue
        q, r, e = pseudo_divide(r, b, ld.leader_vid)
        if e:
            chain.append(ReductionStep(b, ld.initial, e, q))
    return (r, chain) if with_chain else r


def expand_chain(g: Poly, chain: Sequence[ReductionStep], remainder: Poly) -> bool:
    """Exact check of the pseudo-division identity P*g == sum(q_i*b_i) + r."""
    if not chain:
        return g == remainder
    ring = g.ring
    lhs = g
    acc = ring.zero
    for step in chain:
        lhs = (step.initial ** step.exponent) * lhs
        acc = (step.initial ** step.exponent) * acc + step.quotient * step.divisor
    return lhs == acc + remainder


# ---------------------------------------------------------------------------
# partial (Ritt) reduction


def _proper_derivative_targets(f: Poly, A: Sequence[Poly]):
    """Derivatives in f that are proper derivatives of some leader of A,
    with the matching element chosen to have the greatest leader."""
    ring = f.ring
    leaders = [(leader_data(a), a) for a in A]
    hits = []
    for vid in f.variables():
        d = ring.derivative_of(vid)
        best = None
        for ld, a in leaders:
            if (
                d.indet == ld.leader.indet
                and d.op != ld.leader.op
                and op_divides(ld.leader.op, d.op)
            ):
                if best is None or ring.ranking.key(ld.leader) > ring.ranking.key(best[0].leader):
                    best = (ld, a)
        if best is not None:
            hits.append((ring.ranking.key(d), d, vid, best[0], best[1]))
    hits.sort(reverse=True)
    return hits


def partial_remainder(f: Poly, A) -> Tuple[Poly, int]:
    """Ritt partial pseudo-remainder of f w.r.t. a fully autoreduced set.

    Returns (g, order_used): g is partially reduced w.r.t. every element of
    A and h*f - g lies in the ideal of prolongations of A up to order_used
    for some product h of separants.  Under an orderly ranking order_used
    never exceeds max(0, ord f - min ord over A).
    """
    if isinstance(A, AutoreducedSet):
        A.require_fully_autoreduced()
        elems = list(A.elements)
    else:
        elems = list(A)
    if not elems:
        return f, 0
    ring = f.ring
    g = f
    order_used = 0
    while True:
        hits = _proper_derivative_targets(g, elems)
        if not hits:
            return g, order_used
        _, d, vid, ld, a = hits[0]
        theta = tuple(x - y for x, y in zip(d.op, ld.leader.op))
        prolonged = apply_operator(a, theta)
        order_used = max(order_used, op_order(theta))
        _, g, _ = pseudo_divide(g, prolonged, vid)


def full_remainder(f: Poly, A) -> Poly:
    """Partial reduction followed by algebraic reduction; zero certifies
    membership in the saturation of [A] by initials and separants."""
    g, _ = partial_remainder(f, A)
    elems = list(A.elements if isinstance(A, TriangularSet) else A)
    if not elems:
        return g
    return algebraic_remainder(g, TriangularSet(elems))


# ---------------------------------------------------------------------------
# minimal triangular subsets and characteristic sets


def minimal_triangular_subset(S: Sequence[Poly]) -> TriangularSet:
    """A least-rank triangular subset: per leader, the least-rank element,
    earliest input position breaking ties; all leaders participate."""
    chosen: dict = {}
    for idx, p in enumerate(S):
        if p.is_constant():
            raise ValueError("constants are not allowed in triangular subsets")
        ld = leader_data(p)
        cur = chosen.get(ld.leader)
        key = (rank_key(p), idx)
        if cur is None or key < cur[0]:
            chosen[ld.leader] = (key, p)
    return TriangularSet(p for _, p in chosen.values())


def characteristic_set(S: Sequence[Poly]) -> AutoreducedSet:
    """Greedy Ritt basic set: ascending by rank, keep each element fully
    reduced w.r.t. everything kept so far.  Minimality of the resulting rank
    is cross-checked against exhaustive search at test scale."""
    items = [p for p in S]
    for p in items:
        if p.is_constant():
            raise ValueError("constants are not allowed in characteristic sets")
    items.sort(key=lambda p: (rank_key(p), str(p)))
    kept: List[Poly] = []
    for p in items:
        if all(is_reduced(p, q) for q in kept):
            kept.append(p)
    return AutoreducedSet(kept)


# ---------------------------------------------------------------------------
# delta polynomials and coherence


def delta_polynomials(C) -> List[Poly]:
    """Cross-derivative S-polynomials for pairs of elements whose leaders
    share the least common derivative v: s_B * (A prolonged to v) minus
    s_A * (B prolonged to v).  Zero results are discarded."""
    elems = list(C.elements if isinstance(C, TriangularSet) else C)
    out: List[Poly] = []
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            d = _delta_pair(elems[i], elems[j])
            if d is not None and not d.is_zero():
                out.append(d)
    return out


def _delta_pair(a: Poly, b: Poly) -> Optional[Poly]:
    la, lb = leader_data(a), leader_data(b)
    if la.leader.indet != lb.leader.indet:
        return None
    common = tuple(max(x, y) for x, y in zip(la.leader.op, lb.leader.op))
    psi = tuple(x - y for x, y in zip(common, la.leader.op))
    phi = tuple(x - y for x, y in zip(common, lb.leader.op))
    return lb.separant * apply_operator(a, psi) - la.separant * apply_operator(b, phi)


def _lower_prolongations(C: Sequence[Poly], v: Derivative) -> List[Poly]:
    """Elements of C and their derivatives with leader strictly below v."""
    ring = C[0].ring
    vkey = ring.ranking.key(v)
    out = []
    for c in C:
        base = leader_data(c).leader
        budget = v.order - base.order
        if budget < 0:
            continue
        for op in ops_up_to(ring.m, budget):
            lead = Derivative(base.indet, tuple(x + y for x, y in zip(base.op, op)))
            if ring.ranking.key(lead) < vkey:
                p = apply_operator(c, op)
                if not p.is_zero():
                    out.append(p)
    return out


def is_coherent(C, mode: str = "fast", caps: Optional[ResourceCaps] = None) -> bool:
    """Coherence of a fully autoreduced set.

    fast: every delta polynomial pseudo-reduces to zero against a least-rank
    triangular subset of the prolongations below the common derivative
    (sufficient).  exact: membership in the saturation of those
    prolongations by all initials and separants, decided by a Groebner basis
    with a fresh slack variable.
    """
    if isinstance(C, AutoreducedSet):
        C.require_fully_autoreduced()
        elems = list(C.elements)
    else:
        elems = list(C)
    if len(elems) < 2:
        return True
    ring = elems[0].ring
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            a, b = elems[i], elems[j]
            la, lb = leader_data(a), leader_data(b)
            if la.leader.indet != lb.leader.indet:
                continue
            delta = _delta_pair(a, b)
            if delta is None or delta.is_zero():
                continue
            vop = tuple(max(x, y) for x, y in zip(la.leader.op, lb.leader.op))
            v = Derivative(la.leader.indet, vop)
            lower = _lower_prolongations(elems, v)
            if mode == "fast":
                if not lower:
                    return False
                tri = minimal_triangular_subset(lower)
                if not algebraic_remainder(delta, tri).is_zero():
                    return False
            elif mode == "exact":
                if not _saturation_membership(delta, lower, elems, caps):
                    return False
            else:
                raise ValueError(f"unknown coherence mode {mode!r}")
    return True


def _saturation_membership(
    f: Poly, ideal_gens: Sequence[Poly], C: Sequence[Poly], caps: Optional[ResourceCaps]
) -> bool:
    """f in (ideal_gens) : (initials and separants of C)^infinity, by the
    slack-variable saturation trick."""
    ring = f.ring
    prod = ring.one
    for c in C:
        ld = leader_data(c)
        if not ld.initial.is_constant():
            prod = prod * ld.initial
        if not ld.separant.is_constant():
            prod = prod * ld.separant
    if prod.is_constant():
        if not ideal_gens:
            return f.is_zero()
        return ideal_membership(f, list(ideal_gens), caps)
    w = ring.add_slack_var()
    witness = ring.one - ring.var_poly(w) * prod
    gens = list(ideal_gens) + [witness]
    gb = buchberger(gens, caps)
    return normal_form(f, gb, caps).is_zero()
