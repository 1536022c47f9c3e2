"""Buchberger Groebner bases, normal forms, and ideal/radical membership.

The public surface works on sparse :class:`~diffnull.polys.Poly` values; the
engine converts to dense exponent tuples over a frozen snapshot of the
variables actually present, which gives native tuple-comparison monomial
keys.  Pair handling uses the Gebauer-Moeller refinements of Buchberger's
two elimination criteria with normal selection (lowest lcm first).

Configurable resource caps (basis size, term count, wall time) convert
runaway computations into :class:`CappedResourceError` carrying the partial
basis; a capped run never returns a wrong answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .polys import Poly, PolyRing


@dataclass(frozen=True)
class ResourceCaps:
    max_basis_size: int = 5000
    max_poly_terms: int = 500_000
    wall_seconds: Optional[float] = None


DEFAULT_CAPS = ResourceCaps()


class CappedResourceError(RuntimeError):
    """A configured resource cap was exceeded; carries partial state."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, inter-reduced, deterministically sorted."""

    generators: tuple
    ring: PolyRing
    reduced: bool = True

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_unit_ideal(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()


# ---------------------------------------------------------------------------
# dense engine


def _snapshot(ring: PolyRing, polys: Sequence[Poly]):
    vids = set()
    for p in polys:
        vids.update(p.variables())
    order = sorted(vids, key=ring.var_key, reverse=True)  # greatest first
    pos = {v: i for i, v in enumerate(order)}
    return order, pos


def _to_dense(p: Poly, pos: dict, n: int) -> dict:
    out = {}
    for m, c in p.terms.items():
        e = [0] * n
        for v, ex in m:
            e[pos[v]] = ex
        out[tuple(e)] = c
    return out


def _from_dense(d: dict, vids: list, ring: PolyRing) -> Poly:
    terms = {}
    for e, c in d.items():
        m = tuple(sorted((vids[i], ex) for i, ex in enumerate(e) if ex))
        terms[m] = c
    return Poly(ring, terms)


def _keyfn(order: str):
    if order == "grevlex":
        def key(e):
            return (sum(e), tuple(-x for x in reversed(e)))
    else:  # lex
        def key(e):
            return e
    return key


def _e_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _e_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _e_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _e_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class _Engine:
    def __init__(self, order: str, nvars: int, caps: ResourceCaps, ring: PolyRing, vids):
        self.key = _keyfn(order)
        self.nvars = nvars
        self.caps = caps
        self.ring = ring
        self.vids = vids
        self.t0 = time.monotonic()
        self._tick = 0

    def check_caps(self, basis=None):
        self._tick += 1
        if self.caps.wall_seconds is not None and (self._tick & 0xFF) == 0:
            if time.monotonic() - self.t0 > self.caps.wall_seconds:
                raise CappedResourceError("wall-time cap exceeded", self._partial(basis))
        if basis is not None and len(basis) > self.caps.max_basis_size:
            raise CappedResourceError("basis-size cap exceeded", self._partial(basis))

    def check_terms(self, p: dict, basis=None):
        if len(p) > self.caps.max_poly_terms:
            raise CappedResourceError("term-count cap exceeded", self._partial(basis))

    def _partial(self, basis):
        if basis is None:
            return None
        return [_from_dense(g, self.vids, self.ring) for g in basis]

    # full normal form: every monomial reduced
    def normal_form(self, p: dict, basis: list, lms: list) -> dict:
        work = dict(p)
        rem: dict = {}
        key = self.key
        while work:
            self.check_caps()
            m = max(work, key=key)
            c = work.pop(m)
            hit = -1
            for i, lm in enumerate(lms):
                if _e_divides(lm, m):
                    hit = i
                    break
            if hit < 0:
                rem[m] = c
                continue
            g = basis[hit]
            shift = _e_div(m, lms[hit])
            for mg, cg in g.items():
                if mg == lms[hit]:
                    continue
                mm = _e_mul(mg, shift)
                s = work.get(mm)
                s = -c * cg if s is None else s - c * cg
                if s:
                    work[mm] = s
                else:
                    work.pop(mm, None)
            self.check_terms(work, basis)
        return rem

    def spoly(self, f: dict, lmf, g: dict, lmg) -> dict:
        lcm = _e_lcm(lmf, lmg)
        sf, sg = _e_div(lcm, lmf), _e_div(lcm, lmg)
        out: dict = {}
        for m, c in f.items():
            out[_e_mul(m, sf)] = c
        for m, c in g.items():
            mm = _e_mul(m, sg)
            s = out.get(mm)
            s = -c if s is None else s - c
            if s:
                out[mm] = s
            else:
                out.pop(mm, None)
        return out


def _monic(p: dict) -> dict:
    if not p:
        return p
    # leading coefficient under any order works for scaling; use max key order
    # caller guarantees p nonzero and passes via engine where needed
    return p


def _make_monic(p: dict, key) -> dict:
    lm = max(p, key=key)
    lc = p[lm]
    one_like = lc / lc
    if lc == one_like:
        return p
    return {m: c / lc for m, c in p.items()}


def _update_pairs(G: list, lms: list, P: set, f: dict, key):
    """Gebauer-Moeller pair update for a new basis element f."""
    lmf = max(f, key=key)
    new_idx = len(G)
    # drop old pairs strictly dominated by the newcomer (chain criterion)
    kept = set()
    for (i, j) in P:
        lij = _e_lcm(lms[i], lms[j])
        if (
            not _e_divides(lmf, lij)
            or lij == _e_lcm(lms[i], lmf)
            or lij == _e_lcm(lms[j], lmf)
        ):
            kept.add((i, j))
    P = kept
    # build candidate pairs with the newcomer, minimalized by lcm divisibility
    lcm_groups: dict = {}
    for i in range(len(G)):
        lcm_groups.setdefault(_e_lcm(lms[i], lmf), []).append(i)
    minimal = []
    for L in sorted(lcm_groups, key=key):
        if all(not _e_divides(Lp, L) for Lp in minimal):
            minimal.append(L)
    prod_free = []
    for L in minimal:
        # Buchberger's first criterion: skip groups with a coprime member
        if any(_e_lcm(lms[i], lmf) == _e_mul(lms[i], lmf) for i in lcm_groups[L]):
            continue
        prod_free.append((min(lcm_groups[L]), new_idx))
    G.append(f)
    lms.append(lmf)
    return P | set(prod_free)


def _interreduce(G: list, engine: _Engine) -> list:
    """Minimalize then fully reduce; returns monic polys sorted by lm."""
    key = engine.key
    G = [g for g in G if g]
    G.sort(key=lambda g: key(max(g, key=key)))
    minimal = []
    min_lms = []
    for g in G:
        lm = max(g, key=key)
        if any(_e_divides(l, lm) for l in min_lms):
            continue
        minimal.append(g)
        min_lms.append(lm)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        lms = [max(h, key=key) for h in others]
        r = engine.normal_form(g, others, lms)
        if r:
            reduced.append(_make_monic(r, key))
    reduced.sort(key=lambda g: key(max(g, key=key)))
    return reduced


def buchberger(F: Sequence[Poly], caps: Optional[ResourceCaps] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by F in its ring's order."""
    F = [f for f in F if not f.is_zero()]
    if not F:
        raise ValueError("cannot compute a basis for an empty generator list")
    ring = F[0].ring
    for f in F:
        if f.ring is not ring:
            raise ValueError("generators live in different rings")
    caps = caps or DEFAULT_CAPS
    vids, pos = _snapshot(ring, F)
    n = len(vids)
    engine = _Engine(ring.order, n, caps, ring, vids)
    key = engine.key

    dense = [_to_dense(f, pos, n) for f in F]
    # constant generator -> unit ideal
    for d in dense:
        if len(d) == 1 and tuple([0] * n) in d:
            return GroebnerBasis((ring.one,), ring)

    dense = [_make_monic(d, key) for d in dense]
    dense.sort(key=lambda g: key(max(g, key=key)))

    G: list = []
    lms: list = []
    P: set = set()
    for d in dense:
        r = engine.normal_form(d, G, lms) if G else d
        if not r:
            continue
        r = _make_monic(r, key)
        if len(r) == 1 and sum(max(r, key=key)) == 0:
            return GroebnerBasis((ring.one,), ring)
        P = _update_pairs(G, lms, P, r, key)
        engine.check_caps(G)

    while P:
        pair = min(P, key=lambda ij: (key(_e_lcm(lms[ij[0]], lms[ij[1]])), ij))
        P.remove(pair)
        i, j = pair
        s = engine.spoly(G[i], lms[i], G[j], lms[j])
        r = engine.normal_form(s, G, lms)
        if not r:
            continue
        r = _make_monic(r, key)
        if sum(max(r, key=key)) == 0:
            return GroebnerBasis((ring.one,), ring)  # unit ideal: stop early
        P = _update_pairs(G, lms, P, r, key)
        engine.check_caps(G)

    final = _interreduce(G, engine)
    gens = tuple(_from_dense(g, vids, ring) for g in final)
    return GroebnerBasis(gens, ring)


def normal_form(g: Poly, G: Union[GroebnerBasis, Sequence[Poly]], caps: Optional[ResourceCaps] = None) -> Poly:
    """Remainder of g on full division by G; g - result lies in (G)."""
    gens = list(G.generators) if isinstance(G, GroebnerBasis) else list(G)
    gens = [h for h in gens if not h.is_zero()]
    if not gens:
        raise ValueError("divisor list must be non-empty")
    ring = g.ring
    for h in gens:
        if h.ring is not ring:
            raise ValueError("polynomials live in different rings")
    caps = caps or DEFAULT_CAPS
    vids, pos = _snapshot(ring, gens + [g])
    n = len(vids)
    engine = _Engine(ring.order, n, caps, ring, vids)
    key = engine.key
    dense_g = [_make_monic(_to_dense(h, pos, n), key) for h in gens]
    lms = [max(h, key=key) for h in dense_g]
    r = engine.normal_form(_to_dense(g, pos, n), dense_g, lms)
    return _from_dense(r, vids, ring)


def ideal_membership(f: Poly, F: Sequence[Poly], caps: Optional[ResourceCaps] = None) -> bool:
    """True iff f lies in the ideal generated by F."""
    if f.is_zero():
        return True
    gb = buchberger(F, caps)
    return normal_form(f, gb, caps).is_zero()


def radical_membership(f: Poly, F: Sequence[Poly], caps: Optional[ResourceCaps] = None) -> bool:
    """True iff some power of f lies in (F).

    Uses the slack-variable trick: f is in the radical iff
    1 in (F + {1 - z*f}) for a fresh variable z, which lands last in the
    variable priority.  Constant f short-circuits to a membership test of 1.
    """
    if f.is_zero():
        return True
    if f.is_constant():
        return ideal_membership(f.ring.one, F, caps)
    ring = f.ring
    z = ring.add_slack_var()
    zf = f * ring.var_poly(z)
    witness = ring.one - zf
    return ideal_membership(ring.one, list(F) + [witness], caps)
