"""Groebner engine: normal forms, bases, membership, caps, and the
linear-algebra cross-check."""

import random

import pytest

from diffnull.diffring import DiffRing
from diffnull.groebner import (
    CappedResourceError,
    ResourceCaps,
    buchberger,
    ideal_membership,
    normal_form,
    radical_membership,
)
from diffnull.polys import PolyRing

from oracles import macaulay_membership, macaulay_radical_membership, random_poly


@pytest.fixture
def ring():
    return PolyRing()


def test_normal_form_single_step(ring):
    x, y = ring.new_var("x"), ring.new_var("y")
    assert normal_form(x * x * y, [x * x - y]) == y * y


def test_normal_form_unit_ideal(ring):
    x = ring.new_var("x")
    assert normal_form(x * x + x + 5, [ring.one]).is_zero()


def test_normal_form_two_reducers(ring):
    x, y = ring.new_var("x"), ring.new_var("y")
    assert normal_form(x * y, [x - y, y * y]).is_zero()


def test_normal_form_difference_in_ideal(ring):
    rng = random.Random(5)
    x, y = ring.new_var("x"), ring.new_var("y")
    G = [x * x - y, y * y + x]
    for _ in range(10):
        g = random_poly(ring, [0, 1], rng, max_terms=4, max_deg=4)
        r = normal_form(g, G)
        assert ideal_membership(g - r, G)


def test_buchberger_unit(ring):
    x = ring.new_var("x")
    gb = buchberger([x, 1 - x])
    assert gb.is_unit_ideal()


def test_buchberger_already_basis(ring):
    x, y = ring.new_var("x"), ring.new_var("y")
    gb = buchberger([x - y, y * y])
    assert set(gb.generators) == {x - y, y * y}


def test_buchberger_derivative_cube():
    D = DiffRing(1, ["y"])
    y, y1, y2 = D.dvar("y"), D.dvar("y", 1), D.dvar("y", 2)
    gens = [y * y, 2 * y * y1, 2 * y1 * y1 + 2 * y * y2]
    gb = buchberger(gens)
    assert normal_form(y1 ** 3, gb).is_zero()
    # independent confirmation by exact linear algebra
    assert macaulay_membership(y1 ** 3, gens, 4)


def test_spolys_reduce_to_zero(ring):
    rng = random.Random(23)
    for name in "xyz":
        ring.new_var(name)
    F = [random_poly(ring, [0, 1, 2], rng, max_terms=3, max_deg=2) for _ in range(3)]
    F = [f for f in F if not f.is_zero()]
    gb = buchberger(F)
    gens = list(gb.generators)
    if gb.is_unit_ideal():
        return
    from diffnull.polys import monomial_div, monomial_lcm, Poly

    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            a, b = gens[i], gens[j]
            lcm = monomial_lcm(a.lm, b.lm)
            ma = Poly(ring, {monomial_div(lcm, a.lm): ring.field.one})
            mb = Poly(ring, {monomial_div(lcm, b.lm): ring.field.one})
            s = ma * a - mb * b
            if not s.is_zero():
                assert normal_form(s, gb).is_zero()


def test_reduced_basis_shape(ring):
    x, y = ring.new_var("x"), ring.new_var("y")
    gb = buchberger([x * x - y, x * y - x])
    for g in gb.generators:
        assert g.lc == ring.field.one
        others = [h for h in gb.generators if h is not g]
        if others:
            r = normal_form(g, others)
            assert r == g  # no generator reducible by the rest


def test_basis_order_independent_as_ideal():
    rg = PolyRing(order="grevlex")
    x, y, z = (rg.new_var(n) for n in "xyz")
    F = [x * y - z, y * y - x]
    gb_g = buchberger(F)
    rl = rg.clone(order="lex")
    gb_l = buchberger([f.convert(rl) for f in F])
    for g in gb_g.generators:
        assert normal_form(g.convert(rl), gb_l).is_zero()
    for g in gb_l.generators:
        assert normal_form(g.convert(rg), gb_g).is_zero()


def test_ideal_membership_trivials(ring):
    x, y = ring.new_var("x"), ring.new_var("y")
    assert ideal_membership(ring.one, [x, 1 - x])
    assert not ideal_membership(y, [y * y])


def test_radical_membership_basics(ring):
    y = ring.new_var("y")
    assert radical_membership(y, [y * y])
    assert not radical_membership(ring.one, [y])


def test_radical_membership_derived_cases():
    # values computed by the Macaulay brute-force oracle, not assumed
    ring = PolyRing()
    a, b = ring.new_var("a"), ring.new_var("b")
    # (a*b)^2 = b^2 * a^2 lies in (a^2), so a*b IS in the radical
    k = macaulay_radical_membership(a * b, [a ** 2, b ** 3], max_power=4)
    assert k == 2
    assert radical_membership(a * b, [a ** 2, b ** 3]) is True
    # a + b - b = a is in the radical of (a^2)
    assert macaulay_radical_membership(a + b - b, [a ** 2], max_power=4) == 2
    assert radical_membership(a + b - b, [a ** 2]) is True
    # genuine negative: a + 1 has no power in (a^2)
    assert macaulay_radical_membership(a + 1, [a ** 2], max_power=4) is None
    assert radical_membership(a + 1, [a ** 2]) is False


def test_caps_raise_with_partial_state(ring):
    x, y = ring.new_var("x"), ring.new_var("y")
    caps = ResourceCaps(max_basis_size=1)
    with pytest.raises(CappedResourceError):
        buchberger([x * x * y - 1, x * y * y - x, y ** 3 - x * x], caps)


def test_membership_agrees_with_macaulay_randomized():
    rng = random.Random(42)
    checked = 0
    while checked < 25:
        ring = PolyRing()
        nv = rng.randint(2, 3)
        for i in range(nv):
            ring.new_var(f"x{i}")
        vids = list(range(nv))
        F = [random_poly(ring, vids, rng, max_terms=3, max_deg=2) for _ in range(2)]
        F = [f for f in F if not f.is_zero()]
        if not F:
            continue
        # member by construction
        h1 = random_poly(ring, vids, rng, max_terms=2, max_deg=1)
        member = h1 * F[0] + (F[1] if len(F) > 1 else ring.zero)
        deg = max((p.total_degree for p in [member] + F), default=0) + 1
        if not member.is_zero():
            assert ideal_membership(member, F)
            assert macaulay_membership(member, F, max(deg, member.total_degree))
        # random probe: directions must agree
        probe = random_poly(ring, vids, rng, max_terms=2, max_deg=2)
        gb_says = ideal_membership(probe, F)
        if gb_says:
            found = any(macaulay_membership(probe, F, d) for d in range(probe.total_degree, 9))
            assert found
        else:
            assert not macaulay_membership(probe, F, probe.total_degree + 3)
        checked += 1
