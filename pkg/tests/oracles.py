"""Independent test oracles: Macaulay-matrix linear-algebra membership,
exhaustive subset-rank searches, and small random generators.

These deliberately avoid the library's Groebner/reduction code paths so the
two sides can check each other.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from diffnull.polys import Poly, monomial_mul
from diffnull.reduction import rank_key, reducedness


# ---------------------------------------------------------------------------
# Macaulay-matrix membership


def monomials_up_to(vids, degree):
    """All monomials over vids with total degree <= degree."""
    out = [()]
    for d in range(1, degree + 1):
        for combo in itertools.combinations_with_replacement(sorted(vids), d):
            counts = {}
            for v in combo:
                counts[v] = counts.get(v, 0) + 1
            out.append(tuple(sorted(counts.items())))
    return out


class _RowSpace:
    """Incremental row space over Q with dict rows keyed by monomials."""

    def __init__(self):
        self.pivots = {}  # monomial -> reduced row (dict)

    def _reduce(self, row):
        row = dict(row)
        while row:
            m = max(row)  # any fixed total order on monomial keys works
            piv = self.pivots.get(m)
            if piv is None:
                return row, m
            c = row[m]
            for mm, cc in piv.items():
                s = row.get(mm, Fraction(0)) - c * cc
                if s:
                    row[mm] = s
                else:
                    row.pop(mm, None)
        return row, None

    def add(self, row):
        red, m = self._reduce(row)
        if m is None:
            return
        lead = red[m]
        self.pivots[m] = {k: v / lead for k, v in red.items()}

    def contains(self, row) -> bool:
        red, m = self._reduce(row)
        return m is None


def macaulay_membership(f: Poly, F, degree: int) -> bool:
    """True iff f is a polynomial combination of F with every product
    bounded by the given total degree; exact linear algebra over Q."""
    vids = set(f.variables())
    for g in F:
        vids |= g.variables()
    space = _RowSpace()
    for g in F:
        if g.is_zero():
            continue
        room = degree - g.total_degree
        if room < 0:
            continue
        for mu in monomials_up_to(vids, room):
            row = {monomial_mul(mu, m): Fraction(c) for m, c in g.terms.items()}
            space.add(row)
    target = {m: Fraction(c) for m, c in f.terms.items()}
    return space.contains(target)


def macaulay_radical_membership(f: Poly, F, max_power: int, degree_slack: int = 2):
    """Search for the least k <= max_power with f^k a bounded-degree
    combination of F; None when the search is exhausted."""
    for k in range(1, max_power + 1):
        fk = f**k
        deg = fk.total_degree + max(g.total_degree for g in F) + degree_slack
        if macaulay_membership(fk, F, deg):
            return k
    return None


# ---------------------------------------------------------------------------
# exhaustive rank searches


def set_rank_is_lower(ra, rb) -> bool:
    """Strictly lower set rank: elementwise-lower on the common prefix, or
    longer with an equal prefix."""
    for x, y in zip(ra, rb):
        if x < y:
            return True
        if x > y:
            return False
    return len(ra) > len(rb)


def _is_triangular(subset) -> bool:
    from diffnull.diffring import leader_data

    leaders = [leader_data(p).leader for p in subset]
    return len(set(leaders)) == len(leaders)


def _is_fully_autoreduced(subset) -> bool:
    for i, p in enumerate(subset):
        for j, q in enumerate(subset):
            if i != j and not reducedness(p, q)[2]:
                return False
    return True


def _min_rank_over(S, predicate):
    best = None
    for r in range(1, len(S) + 1):
        for combo in itertools.combinations(S, r):
            if not predicate(list(combo)):
                continue
            ranks = tuple(sorted(rank_key(p) for p in combo))
            if best is None or set_rank_is_lower(ranks, best):
                best = ranks
    return best


def exhaustive_min_triangular_rank(S):
    return _min_rank_over(S, _is_triangular)


def exhaustive_min_autoreduced_rank(S):
    return _min_rank_over(S, _is_fully_autoreduced)


# ---------------------------------------------------------------------------
# random generators


def random_poly(ring, vids, rng: random.Random, max_terms=3, max_deg=3, coeff_range=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_deg)
        counts = {}
        for _ in range(deg):
            v = rng.choice(vids)
            counts[v] = counts.get(v, 0) + 1
        mono = tuple(sorted(counts.items()))
        c = 0
        while c == 0:
            c = rng.randint(-coeff_range, coeff_range)
        terms[mono] = ring.field.from_int(c)
    return ring.poly(terms)


def random_diff_poly(ring, rng: random.Random, max_order=2, max_terms=3, max_deg=3):
    vids = []
    for indet in range(ring.n):
        from diffnull.diffring import ops_up_to

        for op in ops_up_to(ring.m, max_order):
            vids.append(ring.derivative_id(indet, op))
    return random_poly(ring, vids, rng, max_terms=max_terms, max_deg=max_deg)
