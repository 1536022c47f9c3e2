"""Exact coefficient fields: the rationals Q and univariate rational functions Q(x).

Field elements are plain values supporting ``+ - * /``, equality and ``bool``
(false iff zero): ``fractions.Fraction`` for Q and :class:`RatFunc` for Q(x).
A field object bundles construction, the derivation that the enclosing
differential ring applies to coefficients (zero on Q, d/dx on Q(x)), and
formatting.  Univariate polynomials inside :class:`RatFunc` are little-endian
tuples of Fractions with no trailing zeros, the denominator kept monic and
coprime to the numerator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

# ---------------------------------------------------------------------------
# univariate polynomial helpers (little-endian Fraction tuples)

ZERO_POLY: tuple = ()
ONE_POLY = (Fraction(1),)


def _strip(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def _padd(a, b):
    n = max(len(a), len(b))
    return _strip(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ZERO_POLY
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _strip(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and _strip(r):
        r = list(_strip(r))
        if len(r) - 1 < db:
            break
        k = len(r) - 1 - db
        c = r[-1] / lb
        q[k] = c
        for i, cb in enumerate(b):
            r[k + i] -= c * cb
        r = r[:-1]
    return _strip(q), _strip(r)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        lead = a[-1]
        a = tuple(c / lead for c in a)  # monic gcd
    return a


def _pderiv(a):
    return _strip(i * c for i, c in enumerate(a) if i > 0)


def _pstr(a, var: str = "x") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            xs = var if i == 1 else f"{var}^{i}"
            parts.append(xs if c == 1 else f"{c}*{xs}")
    return " + ".join(parts).replace("+ -", "- ")


class RatFunc:
    """A reduced rational function num/den over Q, den monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE_POLY, _normalized=False):
        if _normalized:
            self.num, self.den = num, den
            return
        num = _strip(Fraction(c) for c in num)
        den = _strip(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = ZERO_POLY, ONE_POLY
            return
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        self.num, self.den = num, den

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_fraction(cls, q) -> "RatFunc":
        q = Fraction(q)
        return cls((q,) if q else (), ONE_POLY, _normalized=True)

    @classmethod
    def x_power(cls, k: int, scale=1) -> "RatFunc":
        s = Fraction(scale)
        if not s:
            return cls.from_fraction(0)
        return cls((Fraction(0),) * k + (s,), ONE_POLY, _normalized=True)

    # -- predicates --------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and self.den == ONE_POLY

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return self.num[0] if self.num else Fraction(0)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc.from_fraction(1) / self ** (-k)
        out = RatFunc.from_fraction(1)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "RatFunc":
        """d/dx by the quotient rule; exact."""
        n, d = self.num, self.den
        return RatFunc(
            _padd(_pmul(_pderiv(n), d), _pneg(_pmul(n, _pderiv(d)))),
            _pmul(d, d),
        )

    # -- comparisons / hashing -----------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def sort_key(self):
        return (self.num, self.den)

    def __repr__(self):
        if self.den == ONE_POLY:
            return _pstr(self.num)
        return f"({_pstr(self.num)})/({_pstr(self.den)})"


Coefficient = Union[Fraction, RatFunc]


class CoefficientField:
    """Common surface of the two coefficient fields."""

    name: str

    def from_int(self, k: int):
        raise NotImplementedError

    def from_fraction(self, q):
        raise NotImplementedError

    def derivative(self, c):
        """Image of a coefficient under the (single) base derivation."""
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def __repr__(self):
        return self.name


class RationalField(CoefficientField):
    """Q; elements are fractions.Fraction, all derivations act as zero."""

    name = "Q"

    def from_int(self, k: int):
        return Fraction(k)

    def from_fraction(self, q):
        return Fraction(q)

    def derivative(self, c):
        return Fraction(0)


class RationalFunctionField(CoefficientField):
    """Q(x); elements are RatFunc, the base derivation is d/dx.

    Only meaningful with a single derivation: d/dx is the coefficient
    action of that derivation, so rings over Q(x) must be ordinary.
    """

    name = "Q(x)"

    def from_int(self, k: int):
        return RatFunc.from_fraction(k)

    def from_fraction(self, q):
        return RatFunc.from_fraction(q)

    def x(self, power: int = 1, scale=1) -> RatFunc:
        return RatFunc.x_power(power, scale)

    def derivative(self, c):
        return c.derivative()


QQ = RationalField()
QX = RationalFunctionField()
