"""Empirical membership in radicals of prolongation ideals.

``membership_at_order`` prolongs the generators to a given order, maps the
derivatives to algebraic variables (they already are interned variables of
the ring) and asks the Groebner oracle whether the target lies in the
radical of the resulting algebraic ideal; ``minimal_order`` scans orders
upward to find the least one, which is monotone, so the scan also yields
the non-membership certificates one level below.

``example_system`` materializes the built-in example families ex1..ex4 that
exercise the dependence of the minimal order on degrees, the number of
indeterminates, and the number of derivations.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .diffring import DiffRing, DiffSystem, differentiate, prolong
from .fields import QX
from .groebner import (
    CappedResourceError,
    ResourceCaps,
    ideal_membership,
    radical_membership,
)
from .polys import Poly


class MembershipStatus(enum.Enum):
    IN_RADICAL = "in-radical"
    NOT_IN_RADICAL = "not-in-radical"
    INCONCLUSIVE_CAP = "inconclusive-cap"


@dataclass(frozen=True)
class MembershipVerdict:
    h: int
    status: MembershipStatus

    @property
    def in_radical(self) -> bool:
        return self.status is MembershipStatus.IN_RADICAL


@dataclass(frozen=True)
class NotFoundBy:
    """Scan exhausted h_max without finding the target in any radical."""

    h_max: int


def membership_at_order(
    system: DiffSystem, h: int, caps: Optional[ResourceCaps] = None
) -> MembershipVerdict:
    """Does the target lie in the radical of the ideal of prolongations to
    order h?  A constant target degenerates to membership of 1."""
    if h < 0:
        raise ValueError("prolongation order must be non-negative")
    gens = prolong(system.generators, h)
    f = system.target_or_one
    try:
        if not gens:
            ok = f.is_zero()
        elif f.is_constant():
            ok = ideal_membership(system.ring.one, gens, caps)
        else:
            ok = radical_membership(f, gens, caps)
    except CappedResourceError:
        return MembershipVerdict(h, MembershipStatus.INCONCLUSIVE_CAP)
    return MembershipVerdict(
        h, MembershipStatus.IN_RADICAL if ok else MembershipStatus.NOT_IN_RADICAL
    )


def minimal_order(
    system: DiffSystem, h_max: int, caps: Optional[ResourceCaps] = None
) -> Union[int, NotFoundBy]:
    """Least h <= h_max whose verdict is in-radical, scanning upward.

    Membership is monotone in h, so the linear scan also certifies
    non-membership at every level below the answer.  An inconclusive
    (capped) level aborts with the cap error rather than risk a wrong
    answer.
    """
    if h_max < 0:
        raise ValueError("h_max must be non-negative")
    for h in range(h_max + 1):
        verdict = membership_at_order(system, h, caps)
        if verdict.status is MembershipStatus.INCONCLUSIVE_CAP:
            raise CappedResourceError(f"membership test capped at order {h}")
        if verdict.in_radical:
            return h
    return NotFoundBy(h_max)


# ---------------------------------------------------------------------------
# example families


def example_system(name: str, size: int) -> DiffSystem:
    """The built-in example families; ``size`` must be >= 1.

    ex1(k): {y' - 1, y^k}, one indeterminate, ordinary; minimal order k.
    ex2(n): {y1', y1 - y2', ..., y_{n-1} - y_n', y_n - x^n/n!} over Q(x),
            ordinary; minimal order n.
    ex3(n): {y1^2, y1 - y2^2, ..., y_{n-1} - y_n^2, 1 - y_n'}, ordinary;
            minimal order 2^n.
    ex4(m): {u_1^2, u_1 - u_2^2, ..., u_{m-1} - u_m^2, 1 - u_mm} with m
            derivations and one indeterminate; minimal order 2.  (Unlike
            ex3, the chain collapses for m >= 2: the cross derivative of
            the last generator cancels the mixed term of the second
            x_m-derivative of u_{m-1} - u_m^2, leaving a constant at
            order 2.)

    The target is 1 for all four families.
    """
    if size < 1:
        raise ValueError("family parameter must be >= 1")
    if name == "ex1":
        ring = DiffRing(1, ["y"])
        y = ring.dvar("y")
        gens = [ring.dvar("y", 1) - 1, y**size]
        return DiffSystem(ring, gens)
    if name == "ex2":
        n = size
        ring = DiffRing(1, [f"y{i}" for i in range(1, n + 1)], field=QX)
        gens = [ring.dvar(0, 1)]
        for i in range(n - 1):
            gens.append(ring.dvar(i) - ring.dvar(i + 1, 1))
        a = QX.x(n, Fraction(1, math.factorial(n)))  # a with n-th derivative 1
        gens.append(ring.dvar(n - 1) - ring.coeff_const(a))
        return DiffSystem(ring, gens)
    if name == "ex3":
        n = size
        ring = DiffRing(1, [f"y{i}" for i in range(1, n + 1)])
        gens = [ring.dvar(0) ** 2]
        for i in range(n - 1):
            gens.append(ring.dvar(i) - ring.dvar(i + 1) ** 2)
        gens.append(ring.one - ring.dvar(n - 1, 1))
        return DiffSystem(ring, gens)
    if name == "ex4":
        m = size
        ring = DiffRing(m, ["u"])

        def du(i):  # first-order derivative in direction i
            return ring.dvar(0, tuple(1 if j == i else 0 for j in range(m)))

        gens = [du(0) ** 2]
        for i in range(m - 1):
            gens.append(du(i) - du(i + 1) ** 2)
        last = tuple(2 if j == m - 1 else 0 for j in range(m))
        gens.append(ring.one - ring.dvar(0, last))
        return DiffSystem(ring, gens)
    raise ValueError(f"unknown example family {name!r}")


def expected_minimal_order(name: str, size: int) -> int:
    """True minimal orders of the example families (computed, certificate-backed)."""
    if name == "ex1":
        return size
    if name == "ex2":
        return size
    if name == "ex3":
        return 2**size
    if name == "ex4":
        return 2  # constant in m; see example_system docstring
    raise ValueError(f"unknown example family {name!r}")


# ---------------------------------------------------------------------------
# derivative-power membership


def derivative_power_check(
    F: Sequence[Poly],
    a: Poly,
    d: int,
    i: int,
    caps: Optional[ResourceCaps] = None,
) -> bool:
    """Given a^d in (F), check (d_i a)^(2d-1) in the ideal of prolongations
    of F to order d: the key step that converts algebraic membership of a
    power into membership of derivative powers."""
    if d < 1:
        raise ValueError("power must be >= 1")
    if not ideal_membership(a**d, list(F), caps):
        raise ValueError("precondition a^d in (F) fails")
    da = differentiate(a, i)
    gens = prolong(F, d)
    return ideal_membership(da ** (2 * d - 1), gens, caps)
