"""Problem-file parsing and rendering.

One INI-like grammar serves every command:

    [ring]
    derivations = 1
    indeterminates = y1, y2
    field = Q            # or Q(x)

    [system]
    F = y1[1] - 1; y1^2  # ';'-separated generators
    f = 1                # optional target, default 1

    [ranking]
    type = orderly

A derivative token ``y2[1,0]`` is the derivative of y2 with multi-index
(1,0); the arity must equal the number of derivations; a bare name is the
order-zero derivative.  ``x`` is the base variable, legal only over Q(x).
Coefficients are integers or ``p/q``.  ``#`` starts a comment.  Parse errors
carry line and column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .diffring import DiffRing, DiffSystem, Ranking
from .fields import QQ, QX, RatFunc
from .polys import Poly


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# tokenizer


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'name' | 'int' | 'sym'
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int) -> List[_Tok]:
    toks: List[_Tok] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        col = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], line, col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], line, col))
            i = j
        elif ch in "+-*/^()[],;":
            toks.append(_Tok("sym", ch, line, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    return toks


class _PolyParser:
    """Recursive-descent parser for one polynomial over a fixed ring."""

    def __init__(self, ring: DiffRing, toks: List[_Tok], line: int):
        self.ring = ring
        self.toks = toks
        self.pos = 0
        self.line = line

    def _peek(self) -> Optional[_Tok]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _next(self) -> _Tok:
        t = self._peek()
        if t is None:
            raise ParseError("unexpected end of polynomial", self.line, len(self.toks) + 1)
        self.pos += 1
        return t

    def _expect_sym(self, s: str) -> _Tok:
        t = self._next()
        if t.kind != "sym" or t.text != s:
            raise ParseError(f"expected {s!r}", t.line, t.col)
        return t

    def parse(self) -> Poly:
        p = self.expr()
        t = self._peek()
        if t is not None:
            raise ParseError(f"unexpected token {t.text!r}", t.line, t.col)
        return p

    def expr(self) -> Poly:
        neg = False
        t = self._peek()
        if t is not None and t.kind == "sym" and t.text in "+-":
            self._next()
            neg = t.text == "-"
        p = self.term()
        if neg:
            p = -p
        while True:
            t = self._peek()
            if t is None or t.kind != "sym" or t.text not in "+-":
                return p
            self._next()
            q = self.term()
            p = p - q if t.text == "-" else p + q

    def term(self) -> Poly:
        p = self.factor()
        while True:
            t = self._peek()
            if t is None or t.kind != "sym" or t.text not in "*/":
                return p
            self._next()
            if t.text == "*":
                p = p * self.factor()
            else:
                d = self._next()
                if d.kind != "int":
                    raise ParseError("'/' needs an integer denominator", d.line, d.col)
                p = p.scale(self.ring.field.from_fraction(Fraction(1, int(d.text))))

    def factor(self) -> Poly:
        p = self.atom()
        t = self._peek()
        if t is not None and t.kind == "sym" and t.text == "^":
            self._next()
            e = self._next()
            if e.kind != "int":
                raise ParseError("exponent must be a non-negative integer", e.line, e.col)
            p = p ** int(e.text)
        return p

    def atom(self) -> Poly:
        t = self._next()
        if t.kind == "int":
            return self.ring.const(int(t.text))
        if t.kind == "sym" and t.text == "(":
            p = self.expr()
            self._expect_sym(")")
            return p
        if t.kind == "name":
            return self._name_atom(t)
        raise ParseError(f"unexpected token {t.text!r}", t.line, t.col)

    def _name_atom(self, t: _Tok) -> Poly:
        ring = self.ring
        if t.text == "x" and "x" not in ring.names:
            if ring.field is not QX and ring.field.name != "Q(x)":
                raise ParseError("base variable 'x' needs field Q(x)", t.line, t.col)
            return ring.coeff_const(QX.x(1))
        if t.text not in ring.names:
            raise ParseError(f"unknown name {t.text!r}", t.line, t.col)
        indet = ring.names.index(t.text)
        nxt = self._peek()
        if nxt is None or nxt.kind != "sym" or nxt.text != "[":
            return ring.dvar(indet)
        self._next()
        comps: List[int] = []
        while True:
            c = self._next()
            if c.kind != "int":
                raise ParseError("multi-index entries must be integers", c.line, c.col)
            comps.append(int(c.text))
            s = self._next()
            if s.kind == "sym" and s.text == "]":
                break
            if not (s.kind == "sym" and s.text == ","):
                raise ParseError("expected ',' or ']' in multi-index", s.line, s.col)
        if len(comps) != ring.m:
            raise ParseError(
                f"multi-index arity {len(comps)} != {ring.m} derivations", t.line, t.col
            )
        return ring.dvar(indet, tuple(comps))


# ---------------------------------------------------------------------------
# file-level parsing


def parse_problem(text: str) -> DiffSystem:
    sections: dict = {}
    current = None
    order: List[Tuple[str, str, int]] = []  # (section, line text, line number)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", lineno, len(line))
            current = stripped[1:-1].strip()
            sections.setdefault(current, {})
            continue
        if current is None:
            raise ParseError("entry outside any section", lineno, 1)
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1)
        key, value = line.split("=", 1)
        sections[current][key.strip()] = (value.strip(), lineno)

    ring_sec = sections.get("ring")
    if ring_sec is None:
        raise ParseError("missing [ring] section", 1, 1)

    def need(sec, key, secname):
        if key not in sec:
            raise ParseError(f"missing '{key}' in [{secname}]", 1, 1)
        return sec[key]

    m_text, m_line = need(ring_sec, "derivations", "ring")
    try:
        m = int(m_text)
    except ValueError:
        raise ParseError("derivations must be an integer", m_line, 1)
    if m < 1:
        raise ParseError("need at least one derivation", m_line, 1)
    names_text, _ = need(ring_sec, "indeterminates", "ring")
    names = [s.strip() for s in names_text.split(",") if s.strip()]
    field_text, f_line = need(ring_sec, "field", "ring")
    if field_text == "Q":
        fld = QQ
    elif field_text == "Q(x)":
        if m != 1:
            raise ParseError("Q(x) requires exactly one derivation", f_line, 1)
        fld = QX
    else:
        raise ParseError(f"unknown field {field_text!r}", f_line, 1)

    rank_sec = sections.get("ranking", {})
    if rank_sec:
        rtype, r_line = rank_sec.get("type", ("orderly", 0))
        if rtype != "orderly":
            raise ParseError(f"unsupported ranking type {rtype!r}", r_line, 1)

    ring = DiffRing(m, names, field=fld, ranking=Ranking("orderly"))

    sys_sec = sections.get("system")
    if sys_sec is None:
        raise ParseError("missing [system] section", 1, 1)
    F_text, F_line = need(sys_sec, "F", "system")
    gens = []
    for chunk in F_text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        gens.append(_PolyParser(ring, _tokenize(chunk, F_line), F_line).parse())
    target = None
    if "f" in sys_sec:
        f_text, fl = sys_sec["f"]
        target = _PolyParser(ring, _tokenize(f_text, fl), fl).parse()
    return DiffSystem(ring, gens, target)


# ---------------------------------------------------------------------------
# rendering


def render_poly(p: Poly) -> str:
    """Canonical reparseable text of a polynomial (terms in descending
    order; Q(x) coefficients expanded into rational * x-power factors)."""
    ring = p.ring
    if p.is_zero():
        return "0"
    pieces: List[Tuple[Fraction, int, tuple]] = []  # (rational, x-power, monomial)
    for mono, c in p.sorted_terms():
        if isinstance(c, RatFunc):
            if c.den != (Fraction(1),):
                raise ValueError("cannot render a non-polynomial coefficient")
            for k in range(len(c.num) - 1, -1, -1):
                if c.num[k]:
                    pieces.append((c.num[k], k, mono))
        else:
            pieces.append((Fraction(c), 0, mono))
    parts: List[str] = []
    for q, k, mono in pieces:
        factors: List[str] = []
        mag = abs(q)
        if k:
            factors.append("x" if k == 1 else f"x^{k}")
        if mono:
            vinfo = sorted(mono, key=lambda t: ring.var_key(t[0]), reverse=True)
            for vid, e in vinfo:
                name = ring.var_info(vid).name
                factors.append(name if e == 1 else f"{name}^{e}")
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        term = "*".join(factors)
        if not parts:
            parts.append(term if q >= 0 else f"-{term}")
        else:
            parts.append(("+ " if q >= 0 else "- ") + term)
    return " ".join(parts)


def render_problem(system: DiffSystem) -> str:
    ring = system.ring
    lines = [
        "[ring]",
        f"derivations = {ring.m}",
        f"indeterminates = {', '.join(ring.names)}",
        f"field = {ring.field.name}",
        "",
        "[system]",
        "F = " + "; ".join(render_poly(g) for g in system.generators),
        f"f = {render_poly(system.target_or_one)}",
        "",
        "[ranking]",
        "type = orderly",
        "",
    ]
    return "\n".join(lines)
