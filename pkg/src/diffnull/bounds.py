"""Order/degree bound calculus over symbolic Ackermann expressions.

Bound values here grow past anything numerically representable, so they are
first-class expression trees; a partial evaluator collapses any subtree
whose exact value fits a configurable bit budget and leaves the rest
symbolic.  Nothing is ever approximated: a node either evaluates exactly or
stays as structure.

Expressions print in a prefix text form, e.g. ``(ack 9 (max 1 1 2))``, and
round-trip through JSON.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

DEFAULT_BIT_CAP = 4096

# internal guard for materializing helper integers (bits)
_MATERIAL_LIMIT = 4_000_000


# ---------------------------------------------------------------------------
# expression nodes


class BoundExpr:
    __slots__ = ()


@dataclass(frozen=True)
class Const(BoundExpr):
    value: int


@dataclass(frozen=True)
class Ack(BoundExpr):
    level: int
    arg: BoundExpr


@dataclass(frozen=True)
class Max(BoundExpr):
    args: tuple


@dataclass(frozen=True)
class Add(BoundExpr):
    args: tuple


@dataclass(frozen=True)
class Mul(BoundExpr):
    args: tuple


@dataclass(frozen=True)
class Sub(BoundExpr):
    a: BoundExpr
    b: BoundExpr


@dataclass(frozen=True)
class Pow(BoundExpr):
    base: BoundExpr
    exp: BoundExpr


@dataclass(frozen=True)
class Log2Ceil(BoundExpr):
    arg: BoundExpr


@dataclass(frozen=True)
class Binom(BoundExpr):
    n: BoundExpr
    k: BoundExpr


def C(x) -> BoundExpr:
    return x if isinstance(x, BoundExpr) else Const(int(x))


# ---------------------------------------------------------------------------
# exact evaluation with bit budget


def _fits(v: int, bit_cap: int) -> bool:
    return v.bit_length() <= bit_cap


def _max_evaluable_arg(level: int, bit_cap: int) -> Optional[int]:
    """Largest n with A(level, n) within the bit budget; None means every
    (machine-representable) n works, -1 means none does."""
    if level <= 2:
        return None  # linear growth: any concrete argument fits
    if level == 3:
        return bit_cap - 3  # value needs n+3 bits
    if level == 4:
        h, t, hmax = 1, 2, 0
        while t.bit_length() <= bit_cap:
            hmax = h
            if t > bit_cap:  # the next tower level cannot fit
                break
            t = 1 << t
            h += 1
        return hmax - 3
    prev = _max_evaluable_arg(level - 1, bit_cap)
    if prev is not None and prev < 1:
        return -1  # even A(level, 0) = A(level-1, 1) is out of budget
    v = ack_int(level - 1, 1, bit_cap)
    if v is None:
        return -1
    n = 0
    while n < 64:  # safety bound; realistic budgets stop immediately
        if prev is not None and v > prev:
            return n
        v = ack_int(level - 1, v, bit_cap)
        if v is None:
            return n
        n += 1
    return n


def ack_int(level: int, n: int, bit_cap: int = DEFAULT_BIT_CAP) -> Optional[int]:
    """Exact Ackermann value A(level, n) when it fits the bit budget.

    Closed forms: A(0,n) = n+1, A(1,n) = n+2, A(2,n) = 2n+3,
    A(3,n) = 2^(n+3) - 3, A(4,n) = (tower of n+3 twos) - 3; higher levels
    recurse through A(level, 0) = A(level-1, 1) and
    A(level, n) = A(level-1, A(level, n-1)), with an evaluability
    pre-check so unreachable values return None without descending.
    """
    if level < 0 or n < 0:
        raise ValueError("Ackermann arguments must be non-negative")
    if level == 0:
        v = n + 1
    elif level == 1:
        v = n + 2
    elif level == 2:
        v = 2 * n + 3
    else:
        nmax = _max_evaluable_arg(level, bit_cap)
        if nmax is not None and n > nmax:
            return None
        if level == 3:
            v = (1 << (n + 3)) - 3
        elif level == 4:
            t = _tower(n + 3, bit_cap)
            if t is None:
                return None
            v = t - 3
        else:
            inner = ack_int(level, n - 1, bit_cap) if n > 0 else 1
            if inner is None:
                return None
            v = ack_int(level - 1, inner, bit_cap)
            if v is None:
                return None
    return v if _fits(v, bit_cap) else None


def _tower(height: int, bit_cap: int) -> Optional[int]:
    """2^2^...^2 (height twos), or None when it exceeds the bit budget."""
    if height == 0:
        return 1
    v = 2
    for _ in range(height - 1):
        if v > bit_cap:
            return None
        v = 1 << v
    return v if _fits(v, bit_cap) else None


def ackermann_recursive(level: int, n: int, _memo=None) -> int:
    """Textbook double recursion with memoization; only for tiny arguments.

    Used as an independent oracle against the closed forms.
    """
    if _memo is None:
        _memo = {}
    key = (level, n)
    if key in _memo:
        return _memo[key]
    if level == 0:
        v = n + 1
    elif n == 0:
        v = ackermann_recursive(level - 1, 1, _memo)
    else:
        v = ackermann_recursive(level - 1, ackermann_recursive(level, n - 1, _memo), _memo)
    _memo[key] = v
    return v


def evaluate(expr: BoundExpr, bit_cap: int = DEFAULT_BIT_CAP) -> Optional[int]:
    """Exact integer value of the expression, or None if any needed subtree
    exceeds the bit budget."""
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Ack):
        a = evaluate(expr.arg, bit_cap)
        return None if a is None else ack_int(expr.level, a, bit_cap)
    if isinstance(expr, Max):
        vals = [evaluate(a, bit_cap) for a in expr.args]
        return None if any(v is None for v in vals) else max(vals)
    if isinstance(expr, Add):
        vals = [evaluate(a, bit_cap) for a in expr.args]
        if any(v is None for v in vals):
            return None
        v = sum(vals)
        return v if _fits(v, bit_cap) else None
    if isinstance(expr, Mul):
        vals = [evaluate(a, bit_cap) for a in expr.args]
        if any(v is None for v in vals):
            return None
        if sum(max(v, 1).bit_length() for v in vals) > bit_cap + len(vals):
            return None
        v = 1
        for x in vals:
            v *= x
        return v if _fits(v, bit_cap) else None
    if isinstance(expr, Sub):
        a, b = evaluate(expr.a, bit_cap), evaluate(expr.b, bit_cap)
        return None if a is None or b is None else a - b
    if isinstance(expr, Pow):
        b, e = evaluate(expr.base, bit_cap), evaluate(expr.exp, bit_cap)
        if b is None or e is None:
            return None
        if e < 0:
            raise ValueError("negative exponent in bound expression")
        if b in (0, 1) or e == 0:
            return b**e
        if e * b.bit_length() > bit_cap + 1:
            return None
        v = b**e
        return v if _fits(v, bit_cap) else None
    if isinstance(expr, Log2Ceil):
        a = evaluate(expr.arg, bit_cap)
        if a is None:
            return None
        if a < 1:
            raise ValueError("log2ceil needs a positive argument")
        return (a - 1).bit_length()
    if isinstance(expr, Binom):
        n, k = evaluate(expr.n, bit_cap), evaluate(expr.k, bit_cap)
        if n is None or k is None:
            return None
        if n > bit_cap:
            return None
        v = math.comb(n, k) if 0 <= k <= n else 0
        return v if _fits(v, bit_cap) else None
    raise TypeError(f"unknown bound expression {expr!r}")


def simplify(expr: BoundExpr, bit_cap: int = DEFAULT_BIT_CAP) -> BoundExpr:
    """Collapse every subtree whose exact value fits the budget."""
    v = evaluate(expr, bit_cap)
    if v is not None:
        return Const(v)
    if isinstance(expr, Ack):
        return Ack(expr.level, simplify(expr.arg, bit_cap))
    if isinstance(expr, Max):
        return Max(tuple(simplify(a, bit_cap) for a in expr.args))
    if isinstance(expr, Add):
        return Add(tuple(simplify(a, bit_cap) for a in expr.args))
    if isinstance(expr, Mul):
        return Mul(tuple(simplify(a, bit_cap) for a in expr.args))
    if isinstance(expr, Sub):
        return Sub(simplify(expr.a, bit_cap), simplify(expr.b, bit_cap))
    if isinstance(expr, Pow):
        return Pow(simplify(expr.base, bit_cap), simplify(expr.exp, bit_cap))
    if isinstance(expr, Log2Ceil):
        return Log2Ceil(simplify(expr.arg, bit_cap))
    if isinstance(expr, Binom):
        return Binom(simplify(expr.n, bit_cap), simplify(expr.k, bit_cap))
    return expr


# ---------------------------------------------------------------------------
# text and JSON forms


def to_text(expr: BoundExpr) -> str:
    if isinstance(expr, Const):
        return str(expr.value)
    if isinstance(expr, Ack):
        return f"(ack {expr.level} {to_text(expr.arg)})"
    if isinstance(expr, Max):
        return "(max " + " ".join(to_text(a) for a in expr.args) + ")"
    if isinstance(expr, Add):
        return "(add " + " ".join(to_text(a) for a in expr.args) + ")"
    if isinstance(expr, Mul):
        return "(mul " + " ".join(to_text(a) for a in expr.args) + ")"
    if isinstance(expr, Sub):
        return f"(sub {to_text(expr.a)} {to_text(expr.b)})"
    if isinstance(expr, Pow):
        return f"(pow {to_text(expr.base)} {to_text(expr.exp)})"
    if isinstance(expr, Log2Ceil):
        return f"(log2ceil {to_text(expr.arg)})"
    if isinstance(expr, Binom):
        return f"(binom {to_text(expr.n)} {to_text(expr.k)})"
    raise TypeError(f"unknown bound expression {expr!r}")


def parse_text(text: str) -> BoundExpr:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    expr, rest = _parse_tokens(tokens)
    if rest:
        raise ValueError(f"trailing tokens in bound expression: {rest!r}")
    return expr


def _parse_tokens(tokens: List[str]):
    if not tokens:
        raise ValueError("empty bound expression")
    tok, rest = tokens[0], tokens[1:]
    if tok != "(":
        try:
            return Const(int(tok)), rest
        except ValueError:
            raise ValueError(f"unexpected token {tok!r}")
    op, rest = rest[0], rest[1:]
    args: List[BoundExpr] = []
    if op == "ack":
        level = int(rest[0])
        rest = rest[1:]
        while rest and rest[0] != ")":
            a, rest = _parse_tokens(rest)
            args.append(a)
        if len(args) != 1 or not rest:
            raise ValueError("ack takes a level and one argument")
        return Ack(level, args[0]), rest[1:]
    while rest and rest[0] != ")":
        a, rest = _parse_tokens(rest)
        args.append(a)
    if not rest:
        raise ValueError("unbalanced parentheses in bound expression")
    rest = rest[1:]
    if op == "max":
        return Max(tuple(args)), rest
    if op == "add":
        return Add(tuple(args)), rest
    if op == "mul":
        return Mul(tuple(args)), rest
    if op == "sub":
        return Sub(args[0], args[1]), rest
    if op == "pow":
        return Pow(args[0], args[1]), rest
    if op == "log2ceil":
        return Log2Ceil(args[0]), rest
    if op == "binom":
        return Binom(args[0], args[1]), rest
    raise ValueError(f"unknown operator {op!r}")


def to_json(expr: BoundExpr) -> dict:
    if isinstance(expr, Const):
        return {"op": "const", "value": expr.value}
    if isinstance(expr, Ack):
        return {"op": "ack", "level": expr.level, "arg": to_json(expr.arg)}
    name_args = {
        Max: "max",
        Add: "add",
        Mul: "mul",
    }
    for cls, name in name_args.items():
        if isinstance(expr, cls):
            return {"op": name, "args": [to_json(a) for a in expr.args]}
    if isinstance(expr, Sub):
        return {"op": "sub", "args": [to_json(expr.a), to_json(expr.b)]}
    if isinstance(expr, Pow):
        return {"op": "pow", "args": [to_json(expr.base), to_json(expr.exp)]}
    if isinstance(expr, Log2Ceil):
        return {"op": "log2ceil", "arg": to_json(expr.arg)}
    if isinstance(expr, Binom):
        return {"op": "binom", "args": [to_json(expr.n), to_json(expr.k)]}
    raise TypeError(f"unknown bound expression {expr!r}")


def from_json(data: dict) -> BoundExpr:
    op = data["op"]
    if op == "const":
        return Const(int(data["value"]))
    if op == "ack":
        return Ack(int(data["level"]), from_json(data["arg"]))
    if op == "max":
        return Max(tuple(from_json(a) for a in data["args"]))
    if op == "add":
        return Add(tuple(from_json(a) for a in data["args"]))
    if op == "mul":
        return Mul(tuple(from_json(a) for a in data["args"]))
    if op == "sub":
        a, b = data["args"]
        return Sub(from_json(a), from_json(b))
    if op == "pow":
        a, b = data["args"]
        return Pow(from_json(a), from_json(b))
    if op == "log2ceil":
        return Log2Ceil(from_json(data["arg"]))
    if op == "binom":
        a, b = data["args"]
        return Binom(from_json(a), from_json(b))
    raise ValueError(f"unknown operator {op!r}")


# ---------------------------------------------------------------------------
# named bounds


def binom(n: int, k: int) -> int:
    return math.comb(n, k)


def ackermann(level: int, n: int, bit_cap: int = DEFAULT_BIT_CAP) -> BoundExpr:
    """A(level, n) as an exact Const when it fits, else a symbolic node."""
    v = ack_int(level, n, bit_cap)
    return Const(v) if v is not None else Ack(level, Const(n))


@dataclass(frozen=True)
class ReportEntry:
    name: str
    formula: str
    expr: BoundExpr

    def value(self, bit_cap: int = DEFAULT_BIT_CAP) -> Optional[int]:
        return evaluate(self.expr, bit_cap)


@dataclass
class BoundReport:
    entries: List[ReportEntry]

    def __getitem__(self, name: str) -> ReportEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def names(self):
        return [e.name for e in self.entries]

    def to_json(self, bit_cap: int = DEFAULT_BIT_CAP) -> list:
        out = []
        for e in self.entries:
            v = evaluate(e.expr, bit_cap)
            out.append(
                {
                    "name": e.name,
                    "formula": e.formula,
                    "expression": to_text(simplify(e.expr, bit_cap)),
                    "value": v,
                }
            )
        return out


def bound_seed(H: int, D: int, n: int, bit_cap: int = DEFAULT_BIT_CAP) -> BoundExpr:
    """max(9, n, 2^(9H), D): the seed that feeds the iteration-count and
    size bounds of the decomposition."""
    return simplify(
        Max((Const(9), Const(n), Pow(Const(2), Const(9 * H)), Const(D))), bit_cap
    )


def structural_bounds(H: int, D: int, m: int, n: int, bit_cap: int = DEFAULT_BIT_CAP) -> BoundReport:
    """Iteration-count bound log2(A(m+7, seed-1)) and the order/degree
    ceiling A(m+7, seed-1) for every polynomial the decomposition touches."""
    if m < 1:
        raise ValueError("need at least one derivation")
    seed = bound_seed(H, D, n, bit_cap)
    ceiling = Ack(m + 7, Sub(seed, Const(1)))
    entries = [
        ReportEntry("seed", "max(9, n, 2^(9H), D)", seed),
        ReportEntry("iteration-bound", "log2ceil(A(m+7, seed-1))", Log2Ceil(ceiling)),
        ReportEntry("size-ceiling", "A(m+7, seed-1)", ceiling),
    ]
    return BoundReport([simplify_entry(e, bit_cap) for e in entries])


def simplify_entry(e: ReportEntry, bit_cap: int) -> ReportEntry:
    return ReportEntry(e.name, e.formula, simplify(e.expr, bit_cap))


def degree_growth_step(D: int, H: int, m: int, bit_cap: int = DEFAULT_BIT_CAP) -> BoundExpr:
    """One-iteration degree ceiling (4D)^(C(2H+m, m)+1)."""
    if m < 1:
        raise ValueError("need at least one derivation")
    if D < 0 or H < 0:
        raise ValueError("degree and order statistics must be non-negative")
    expr = Pow(Const(4 * D), Add((Binom(Const(2 * H + m), Const(m)), Const(1))))
    return simplify(expr, bit_cap)


def partial_reduction_order(ord_f: int, min_ord_A: int) -> int:
    """Prolongation depth sufficient for one partial pseudo-reduction:
    max(0, ord f - min ord over the autoreduced set)."""
    return max(0, ord_f - min_ord_A)


def lifting_bounds(
    H: int,
    D: int,
    m: int,
    n: int,
    ord_f: int,
    D_f: int,
    min_ord_A: int = 0,
    k_factors: int = 1,
    d_power: int = 1,
    t_G: Union[int, BoundExpr] = 0,
    bit_cap: int = DEFAULT_BIT_CAP,
) -> BoundReport:
    """Pieces that lift the decomposition bound to the membership order:

    * q: prolongation depth for partial reduction of the target;
    * component-count bound n*2^(H+m);
    * the derivative-power exponent 4^((k+1)H+1)*d;
    * the degree bound d = max(D_f, A(m+7, seed-1))^(n*2^(H*2^L + m + ord f));
    * the one-step right-hand side
      ord f + H*2^L + 4^((n*2^(H*2^L+1)+1)*t_G+1)*d,
      with t_G = 0 exposing the single-step form.
    """
    seed = bound_seed(H, D, n, bit_cap)
    L = Log2Ceil(Ack(m + 7, Sub(seed, Const(1))))
    q = partial_reduction_order(ord_f, min_ord_A)
    p_bound = Mul((Const(n), Pow(Const(2), Const(H + m))))
    dl_exp = Mul(
        (Pow(Const(4), Const((k_factors + 1) * H + 1)), Const(d_power))
    )
    H2L = Mul((Const(H), Pow(Const(2), L)))
    d_formula = Pow(
        Max((Const(D_f), Ack(m + 7, Sub(seed, Const(1))))),
        Mul((Const(n), Pow(Const(2), Add((H2L, Const(m + ord_f)))))),
    )
    tg = C(t_G)
    rhs = Add(
        (
            Const(ord_f),
            H2L,
            Mul(
                (
                    Pow(
                        Const(4),
                        Add(
                            (
                                Mul(
                                    (
                                        Add(
                                            (
                                                Mul(
                                                    (
                                                        Const(n),
                                                        Pow(Const(2), Add((H2L, Const(1)))),
                                                    )
                                                ),
                                                Const(1),
                                            )
                                        ),
                                        tg,
                                    )
                                ),
                                Const(1),
                            )
                        ),
                    ),
                    d_formula,
                )
            ),
        )
    )
    entries = [
        ReportEntry("partial-reduction-depth", "max(0, ord f - min ord A)", Const(q)),
        ReportEntry("component-count-bound", "n*2^(H+m)", p_bound),
        ReportEntry("derivative-power-exponent", "4^((k+1)H+1)*d", dl_exp),
        ReportEntry("degree-bound", "max(D_f, A(m+7, seed-1))^(n*2^(H*2^L+m+ord f))", d_formula),
        ReportEntry("one-step-order-bound", "ord f + H*2^L + 4^((n*2^(H*2^L+1)+1)*t_G+1)*d", rhs),
    ]
    return BoundReport([simplify_entry(e, bit_cap) for e in entries])


def closed_form_order_bound(
    H_with_target: int, D_with_target: int, m: int, n: int
) -> BoundExpr:
    """The closed-form ceiling A(m+8, max(n, H, D)) on the minimal
    prolongation order, H and D taken over generators and target together."""
    if n < 1 or m < 1:
        raise ValueError("need m >= 1 and n >= 1")
    return Ack(m + 8, Const(max(n, H_with_target, D_with_target)))


# ---------------------------------------------------------------------------
# recurrence consistency checks


def _icbrt(v: int) -> int:
    """Integer floor cube root."""
    if v < 0:
        raise ValueError("cube root of a negative number")
    if v == 0:
        return 0
    x = 1 << ((v.bit_length() + 2) // 3)
    while True:
        y = (2 * x + v // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > v:
        x -= 1
    return x


@dataclass
class RecurrenceRow:
    k: int
    H: int
    D: Optional[int]
    u_repr: str
    order_ok: Optional[bool]
    degree_ok: Optional[bool]


@dataclass
class RecurrenceReport:
    rows: List[RecurrenceRow]
    verified_steps: int
    requested_steps: int
    truncated: bool
    x_inequality: List[Tuple[int, bool]]

    @property
    def ok(self) -> bool:
        return all(
            r.order_ok in (True, None) and r.degree_ok in (True, None) for r in self.rows
        ) and all(ok for _, ok in self.x_inequality)


def _u_le_check(value: int, u) -> Optional[bool]:
    """Exact value <= u where u is an int or ('pow2', e)."""
    if isinstance(u, int):
        return value <= u
    _, e = u
    bl = value.bit_length()
    return bl <= e or (bl == e + 1 and value == 1 << e)


def _u_advance(u):
    """Next lower-bound iterate 2^(floor(cbrt u) * (2 + floor(log2 u)));
    exact and <= the true successor.  None when not materializable."""
    if isinstance(u, int):
        c = _icbrt(u)
        l = u.bit_length() - 1
        return ("pow2", c * (2 + l))
    _, e = u
    if e > _MATERIAL_LIMIT:
        return None
    c = _icbrt(1 << e)
    return ("pow2", c * (2 + e))


def x_growth_inequality(x: int, scale_bits: int = 6) -> bool:
    """Certify 2^(cbrt(x)*(2+log2 x)) <= 2^(x+2) - 3 with exact integers.

    Uses dyadic upper bounds c >= cbrt(x) and l >= log2(x) at the given
    scale, then compares 2^(p*(2^(s+1)+a)) against (2^(x+2)-3)^(2^(2s)):
    a pass implies the real inequality.
    """
    if x < 1:
        raise ValueError("x must be positive")
    s = scale_bits
    # least p with (p/2^s)^3 >= x
    target = x << (3 * s)
    p = _icbrt(target)
    if p * p * p < target:
        p += 1
    # least a with 2^(a/2^s) >= x, i.e. 2^a >= x^(2^s)
    xp = x ** (1 << s)
    a = xp.bit_length() - 1
    if (1 << a) < xp:
        a += 1
    lhs_exp = p * ((1 << (s + 1)) + a)
    rhs = ((1 << (x + 2)) - 3) ** (1 << (2 * s))
    return (1 << lhs_exp) <= rhs


def recurrence_check(
    H1: int,
    D1: int,
    m: int,
    n: int,
    steps: int,
    x_samples: Optional[Sequence[int]] = None,
    bit_cap: int = DEFAULT_BIT_CAP,
) -> RecurrenceReport:
    """Tabulate the order/degree/seed recurrences and verify their
    invariants on the exactly-computable prefix:

    H doubles each step, the degree follows the one-iteration growth bound,
    and the seed iterate u satisfies 2^(9*H_k) <= u_k and D_k <= u_k, using
    integer lower bounds for u so a pass implies the real inequalities.
    Separately certifies the growth inequality on sampled x.
    """
    if m < 1:
        raise ValueError("need at least one derivation")
    rows: List[RecurrenceRow] = []
    H = H1
    D: Optional[int] = D1
    u = max(n, 9, 1 << (9 * H1), D1)
    truncated = False
    verified = 0
    for k in range(1, steps + 1):
        if u is None:
            truncated = True
            break
        order_ok = _u_le_check(1 << (9 * H), u)
        degree_ok = _u_le_check(D, u) if D is not None else None
        u_repr = str(u) if isinstance(u, int) else f"2^{u[1]}"
        rows.append(RecurrenceRow(k, H, D, u_repr, order_ok, degree_ok))
        if order_ok is not None and degree_ok is not None:
            verified = k
        if k == steps:
            break
        # advance
        if D is not None:
            exp = binom(2 * H + m, m) + 1
            if exp * (4 * D).bit_length() <= _MATERIAL_LIMIT:
                D = (4 * D) ** exp
            else:
                D = None
        H = 2 * H
        u = _u_advance(u)
        if isinstance(u, tuple) and u[1] <= _MATERIAL_LIMIT // 2 and u[1] <= bit_cap * 8:
            u = 1 << u[1]
    if len(rows) < steps:
        truncated = True
    samples = list(x_samples) if x_samples is not None else list(range(9, 65))
    x_ineq = [(x, x_growth_inequality(x)) for x in samples]
    return RecurrenceReport(rows, verified, steps, truncated, x_ineq)
