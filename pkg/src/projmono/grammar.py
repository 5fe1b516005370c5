"""Parsers for the polynomial text grammar and the line-family chart format.

Polynomials::

    3*x0^2*x1 - (1+2i)*x2^4 + 1/2*x1^3      # comments run to end of line

Numbers are exact: integers, decimals (``0.25`` is 1/4), ``a/b`` via the
division operator (constant divisors only), and an ``i`` suffix or bare
``i`` for the imaginary unit.  ``^`` and ``**`` both denote powers.

Family charts (parameters ``u1..u4``)::

    # lines joining two skew lines
    params 2
    p = 1, u1, 0, 0
    q = -1, -u1, 1, u2

or, in hyperplane mode, ``a1 = ...`` ... ``an = ...`` lines (covectors).
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .poly import MultiPoly
from .scalars import QQi

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^(),=])
""", re.VERBOSE)


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _tokenize(text, line0=1):
    toks = []
    pos, line, linestart = 0, line0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - linestart + 1, text)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), line, pos - linestart + 1))
        nl = m.group().count("\n")
        if nl:
            line += nl
            linestart = pos + m.group().rfind("\n") + 1
        pos = m.end()
    toks.append(_Tok("end", "", line, pos - linestart + 1))
    return toks


def _number(text):
    imag = text.endswith("i")
    if imag:
        text = text[:-1]
    value = Fraction(text)  # decimal strings convert exactly
    return QQi(0, value) if imag else QQi(value)


class _Parser:
    def __init__(self, toks, resolve, num_vars, src):
        self.toks, self.pos = toks, 0
        self.resolve = resolve
        self.n = num_vars
        self.src = src

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col, self.src)

    def expect(self, text):
        t = self.take()
        if t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}", t)
        return t

    def expr(self):
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -1 if self.take().text == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                out = out * rhs
            else:
                if rhs.degree() > 0:
                    self.error("division by a non-constant", op)
                if rhs.is_zero():
                    self.error("division by zero", op)
                c = rhs.coefficient((0,) * self.n)
                out = out * (QQi(1) / c)
        return out

    def unary(self):
        if self.peek().kind == "op" and self.peek().text in ("+", "-"):
            neg = self.take().text == "-"
            val = self.unary()
            return -val if neg else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text in ("^", "**"):
            self.take()
            t = self.take()
            if t.kind != "num" or not t.text.isdigit():
                self.error("exponent must be a nonnegative integer", t)
            base = base ** int(t.text)
        return base

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return MultiPoly.const(_number(t.text), self.n)
        if t.kind == "name":
            if t.text == "i":
                return MultiPoly.const(QQi(0, 1), self.n)
            idx = self.resolve(t.text)
            if idx is None or idx >= self.n:
                self.error(f"unknown variable {t.text!r}", t)
            return MultiPoly.var(idx, self.n, QQi(1))
        if t.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        self.error(f"unexpected {t.text or 'end of input'!r}", t)


def _x_resolver(name):
    m = re.fullmatch(r"x(\d)", name)
    return int(m.group(1)) if m else None


def _u_resolver(name):
    m = re.fullmatch(r"u([1-4])", name)
    return int(m.group(1)) - 1 if m else None


def _max_index(toks, resolve):
    idx = [resolve(t.text) for t in toks if t.kind == "name" and t.text != "i"]
    idx = [i for i in idx if i is not None]
    return max(idx) + 1 if idx else 0


def parse_poly(text: str, num_vars: int | None = None, line0: int = 1) -> MultiPoly:
    """Parse a polynomial in ``x0..x9`` (exact coefficients)."""
    toks = _tokenize(text, line0)
    n = _max_index(toks, _x_resolver)
    if num_vars is not None:
        if n > num_vars:
            bad = next(t for t in toks if t.kind == "name" and (_x_resolver(t.text) or 0) >= num_vars)
            raise ParseError(f"variable {bad.text} exceeds {num_vars} variables", bad.line, bad.col, text)
        n = num_vars
    if len(toks) == 1:
        raise ParseError("empty polynomial", toks[0].line, toks[0].col, text)
    p = _Parser(toks, _x_resolver, n, text)
    out = p.expr()
    if p.peek().kind != "end":
        p.error(f"unexpected {p.peek().text!r}")
    return out


def parse_param_poly(text: str, n_params: int, line0: int = 1) -> MultiPoly:
    """Parse a polynomial in the parameters ``u1..u{n_params}``."""
    toks = _tokenize(text, line0)
    p = _Parser(toks, _u_resolver, n_params, text)
    out = p.expr()
    if p.peek().kind != "end":
        p.error(f"unexpected {p.peek().text!r}")
    return out


def _split_top(text):
    """Split on commas not nested in parentheses; returns (piece, offset)."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def parse_point(text: str):
    """Comma-separated exact coordinates, e.g. ``1,0,0`` or ``1, 1/2, (2+i)``."""
    coords = []
    for piece, off in _split_top(text):
        if not piece.strip():
            raise ParseError("empty coordinate", 1, off + 1, text)
        try:
            val = parse_poly(piece, num_vars=0)
        except ParseError as exc:
            raise ParseError(str(exc).split(": ", 1)[-1], 1, off + exc.column, text) from None
        coords.append(val.coefficient(()) if not val.is_zero() else QQi(0))
    return [c if isinstance(c, QQi) else QQi(c) for c in coords]


def parse_family(text: str):
    """Parse a family-chart file into a dict consumed by ``focal.LineFamilyChart``."""
    n_params = None
    vectors = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("params"):
            try:
                n_params = int(line.split()[1])
            except (IndexError, ValueError):
                raise ParseError("expected 'params <n>'", lineno, 1, text) from None
            if not 1 <= n_params <= 4:
                raise ParseError("params must be between 1 and 4", lineno, 1, text)
            continue
        if "=" not in line:
            raise ParseError("expected '<name> = <entries>'", lineno, 1, text)
        if n_params is None:
            raise ParseError("'params' must precede vectors", lineno, 1, text)
        name, rhs = line.split("=", 1)
        name = name.strip()
        if not re.fullmatch(r"p|q|a[1-9]", name):
            raise ParseError(f"unknown vector name {name!r}", lineno, 1, text)
        col0 = raw.index("=") + 2
        entries = []
        for piece, off in _split_top(rhs):
            if not piece.strip():
                raise ParseError("empty entry", lineno, col0 + off, text)
            try:
                entries.append(parse_param_poly(piece, n_params, lineno))
            except ParseError as exc:
                raise ParseError(str(exc).split(": ", 1)[-1], lineno, col0 + off + exc.column - 1,
                                 text) from None
        vectors[name] = entries
    if n_params is None:
        raise ParseError("missing 'params' line", 1, 1, text)
    if "p" in vectors or "q" in vectors:
        if set(vectors) != {"p", "q"}:
            raise ParseError("point-direction mode needs exactly p and q", 1, 1, text)
        if len(vectors["p"]) != len(vectors["q"]):
            raise ParseError("p and q must have equal length", 1, 1, text)
        return {"mode": "point-direction", "n": n_params, "p": vectors["p"], "q": vectors["q"]}
    names = sorted(vectors, key=lambda s: int(s[1:]))
    if names != [f"a{i}" for i in range(1, n_params + 1)]:
        raise ParseError(f"hyperplane mode needs a1..a{n_params}", 1, 1, text)
    lengths = {len(vectors[k]) for k in names}
    if len(lengths) != 1:
        raise ParseError("hyperplane covectors must have equal length", 1, 1, text)
    return {"mode": "hyperplane", "n": n_params, "a": [vectors[k] for k in names]}


def parse_poly_file(text: str) -> MultiPoly:
    """Polynomial file: an optional ``vars N`` line, then one expression."""
    num_vars = None
    lines = text.splitlines()
    body_start = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit() or not 2 <= int(parts[1]) <= 10:
                raise ParseError("expected 'vars <n>' with 2 <= n <= 10", lineno, 1, text)
            num_vars = int(parts[1])
            body_start = lineno
        break
    body = "\n".join(lines[body_start:])
    return parse_poly(body, num_vars=num_vars, line0=body_start + 1)


def parse_points_file(text: str):
    """One point per line (``parse_point`` syntax); blank lines and comments skipped."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        try:
            points.append(parse_point(line))
        except ParseError as exc:
            raise ParseError(str(exc).split(": ", 1)[-1], lineno, exc.column, text) from None
    return points
