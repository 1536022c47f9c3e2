"""Finite antichain sequences of integer tuples under componentwise domination.

A sequence t_1, t_2, ... of n-tuples is dicksonian when no earlier tuple is
componentwise <= a later one; by Dickson's lemma every such sequence is
finite.  This module checks the property, bounds sequence growth against an
increasing function, generates unit-growth sequences (maximal coordinate
rising by exactly one each step) by backtracking, performs the padding
construction that converts a growth-bounded sequence into one of unit
growth at the cost of extra coordinates, and exhaustively searches for
maximal lengths at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .bounds import DEFAULT_BIT_CAP, ack_int

NTuple = Tuple[int, ...]


class ConstructionInfeasibleError(RuntimeError):
    """The padding construction could not realize a required inner sequence."""


@dataclass(frozen=True)
class GrowthFn:
    """Increasing growth bound: affine a*i + b or an explicit table f(1..k)."""

    affine: Optional[Tuple[int, int]] = None  # (a, b) with a >= 1
    table: Optional[tuple] = None

    def __post_init__(self):
        if (self.affine is None) == (self.table is None):
            raise ValueError("specify exactly one of affine or table")
        if self.affine is not None:
            a, b = self.affine
            if a < 1:
                raise ValueError("affine growth must be strictly increasing (a >= 1)")
        else:
            t = tuple(self.table)
            if any(t[i + 1] <= t[i] for i in range(len(t) - 1)):
                raise ValueError("growth table must be strictly increasing")
            object.__setattr__(self, "table", t)

    @classmethod
    def from_table(cls, values) -> "GrowthFn":
        return cls(table=tuple(int(v) for v in values))

    @classmethod
    def from_affine(cls, a: int, b: int) -> "GrowthFn":
        return cls(affine=(a, b))

    def __call__(self, i: int) -> int:
        if i < 1:
            raise ValueError("growth functions are indexed from 1")
        if self.affine is not None:
            a, b = self.affine
            return a * i + b
        if i > len(self.table):
            raise ValueError(f"growth table has no entry {i}")
        return self.table[i - 1]

    def domain_limit(self) -> Optional[int]:
        return None if self.affine is not None else len(self.table)


def is_dicksonian(seq: Sequence[Sequence[int]]) -> bool:
    """True iff no earlier tuple is componentwise <= a later tuple."""
    tuples = [tuple(t) for t in seq]
    if tuples and any(len(t) != len(tuples[0]) for t in tuples):
        raise ValueError("all tuples must have the same length")
    for i in range(len(tuples)):
        for j in range(i + 1, len(tuples)):
            if all(x <= y for x, y in zip(tuples[i], tuples[j])):
                return False
    return True


def growth_bounded(seq: Sequence[Sequence[int]], f: GrowthFn) -> bool:
    """True iff max coordinate of the j-th tuple (1-based) is <= f(j)."""
    limit = f.domain_limit()
    if limit is not None and len(seq) > limit:
        raise ValueError("growth table shorter than the sequence")
    return all(max(t) <= f(j) for j, t in enumerate(seq, start=1))


def inverse_ceil(f: GrowthFn, x: int) -> int:
    """Least k >= 1 with f(k) >= x."""
    if f.affine is not None:
        a, b = f.affine
        if b >= x:
            return 1
        return -((b - x) // a)  # ceil((x - b) / a)
    for k, v in enumerate(f.table, start=1):
        if v >= x:
            return k
    raise ValueError(f"growth table never reaches {x}")


# ---------------------------------------------------------------------------
# unit-growth sequences


def _unit_growth_candidates(d: int, cap: int) -> List[NTuple]:
    """All d-tuples with maximal coordinate exactly cap, descending lex."""
    out = []

    def rec(prefix: List[int], saw_cap: bool):
        if len(prefix) == d:
            if saw_cap:
                out.append(tuple(prefix))
            return
        for v in range(cap, -1, -1):
            prefix.append(v)
            rec(prefix, saw_cap or v == cap)
            prefix.pop()

    rec([], False)
    return out


def unit_growth_sequence(d: int, m: int, length: int, bit_cap: int = DEFAULT_BIT_CAP) -> Optional[List[NTuple]]:
    """A dicksonian sequence of d-tuples starting at (m,...,m) whose maximal
    coordinate is exactly m+i-1 at step i, of the requested length; found by
    backtracking.  None when no such sequence exists (the requested length
    exceeds the true maximum A(d, m-1) - m when that bound is evaluable)."""
    if d < 1 or m < 1 or length < 1:
        raise ValueError("need d >= 1, m >= 1, length >= 1")
    bound = ack_int(d, m - 1, bit_cap)
    if bound is not None and length > bound - m:
        return None
    first = (m,) * d
    seq = [first]

    def extend() -> bool:
        if len(seq) == length:
            return True
        cap = m + len(seq)
        for cand in _unit_growth_candidates(d, cap):
            if any(all(x <= y for x, y in zip(t, cand)) for t in seq):
                continue
            seq.append(cand)
            if extend():
                return True
            seq.pop()
        return False

    return seq if extend() else None


def max_unit_growth_length(d: int, m: int, length_cap: int = 64):
    """Exhaustive maximum length of a unit-growth dicksonian sequence whose
    first tuple has maximal coordinate m (any such tuple), with a witness."""
    best: dict = {"len": 0, "witness": []}

    def rec(seq: List[NTuple]):
        if len(seq) > best["len"]:
            best["len"] = len(seq)
            best["witness"] = list(seq)
        if len(seq) >= length_cap:
            return
        cap = m + len(seq)
        for cand in _unit_growth_candidates(d, cap):
            if any(all(x <= y for x, y in zip(t, cand)) for t in seq):
                continue
            seq.append(cand)
            rec(seq)
            seq.pop()

    for start in _unit_growth_candidates(d, m):
        rec([start])
    return best["len"], best["witness"]


# ---------------------------------------------------------------------------
# the padding construction


def pad_construction(
    seq: Sequence[Sequence[int]], f: GrowthFn, d: int, bit_cap: int = DEFAULT_BIT_CAP
) -> List[NTuple]:
    """Convert a growth-bounded dicksonian sequence of n-tuples into a
    unit-growth dicksonian sequence of (n+d)-tuples.

    Block i starts with the original tuple padded by d copies of f(i), then
    f(i+1)-f(i)-1 fillers repeating the original coordinates while the last
    d coordinates walk a unit-growth sequence from (f(i),...,f(i)).  The
    result has length f(k)-f(1)+1 and its maximal coordinate grows by
    exactly one per step.
    """
    tuples = [tuple(t) for t in seq]
    if not tuples:
        raise ValueError("sequence must be non-empty")
    if not is_dicksonian(tuples):
        raise ValueError("input sequence must be dicksonian")
    if not growth_bounded(tuples, f):
        raise ValueError("input sequence must respect the growth bound")
    if d < 1:
        raise ValueError("need at least one padding coordinate")
    k = len(tuples)
    for i in range(1, k):
        step = f(i + 1) - f(i)
        limit = ack_int(d, f(i) - 1, bit_cap)
        if limit is not None and step > limit:
            raise ValueError(
                f"increment f({i + 1})-f({i}) = {step} exceeds the admissible A({d}, {f(i) - 1})"
            )
    out: List[NTuple] = []
    for i, t in enumerate(tuples, start=1):
        out.append(t + (f(i),) * d)
        if i == k:
            break
        inner_len = f(i + 1) - f(i)
        if inner_len <= 1:
            continue
        inner = unit_growth_sequence(d, f(i), inner_len, bit_cap)
        if inner is None:
            raise ConstructionInfeasibleError(
                f"no unit-growth inner sequence of length {inner_len} from ({f(i)},...)"
            )
        for filler in inner[1:]:
            out.append(t + filler)
    return out


# ---------------------------------------------------------------------------
# exhaustive maximal-length search


@dataclass
class SearchResult:
    length: int
    witness: List[NTuple]
    conclusive: bool


def search_max_length(n: int, f: GrowthFn, coord_cap: int, length_cap: int = 64) -> SearchResult:
    """Exhaustive maximum length of a dicksonian sequence of n-tuples with
    growth bounded by f and coordinates capped at coord_cap.

    The result is flagged inconclusive when the coordinate cap actually
    excluded candidates, or when a tabulated f ran out before the search
    did; otherwise the reported length is the true maximum.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    limit = f.domain_limit()
    best: dict = {"len": 0, "witness": []}
    state = {"capped": False, "table_out": False}

    class _Done(Exception):
        pass

    def candidates(step: int) -> List[NTuple]:
        hi = f(step)
        if hi > coord_cap:
            state["capped"] = True
            hi = coord_cap
        vals = range(hi, -1, -1)
        out: List[NTuple] = []

        def rec(prefix: List[int]):
            if len(prefix) == n:
                out.append(tuple(prefix))
                return
            for v in vals:
                prefix.append(v)
                rec(prefix)
                prefix.pop()

        rec([])
        return out

    def rec(seq: List[NTuple]):
        if len(seq) > best["len"]:
            best["len"] = len(seq)
            best["witness"] = list(seq)
            if limit is not None and best["len"] >= limit:
                state["table_out"] = True
                raise _Done  # the table cannot admit anything longer
        if len(seq) >= length_cap:
            state["capped"] = True
            return
        step = len(seq) + 1
        if limit is not None and step > limit:
            state["table_out"] = True
            return
        for cand in candidates(step):
            if any(all(x <= y for x, y in zip(t, cand)) for t in seq):
                continue
            seq.append(cand)
            rec(seq)
            seq.pop()

    try:
        rec([])
    except _Done:
        pass
    conclusive = not state["capped"] and not state["table_out"]
    return SearchResult(best["len"], best["witness"], conclusive)
