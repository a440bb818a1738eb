"""Reading and writing quadratic forms and matrices as text.

Form grammar::

    expr  := term (('+' | '-') term)*        a leading sign is allowed
    term  := [coeff ['*']] factor (['*'] factor)*  |  coeff
    factor:= var ['^' integer]
    var   := 'x' | 'y' | 'z' | 'x' digits
    coeff := integer | integer '/' integer | decimal

Every term must have total degree 2.  A cross coefficient is written in full
(``2xy`` is 2*x*y) and split evenly between A[i][j] and A[j][i].
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

from .core import NotSquare, SymMatrix, fmt, to_rational


class ParseError(ValueError):
    def __init__(self, msg: str, position: int | None = None, expected: Tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        if position is not None:
            msg = f"{msg} at position {position}"
        if expected:
            msg = f"{msg} (expected {' or '.join(expected)})"
        super().__init__(msg)


class UnknownVariable(ParseError):
    pass


class NonQuadraticTerm(ParseError):
    pass


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+\.\d*|\.\d+|\d+)
  | (?P<var>x\d+|[a-zA-Z])
  | (?P<op>[-+*/^])
    """,
    re.VERBOSE,
)

XYZ = ("x", "y", "z")


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _FormParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.alphabet: str | None = None  # "xyz" or "indexed"

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def var_index(self, t: Token) -> int:
        name = t.text
        if name in XYZ:
            kind, idx = "xyz", XYZ.index(name) + 1
        elif re.fullmatch(r"x\d+", name):
            idx = int(name[1:])
            if idx < 1:
                raise UnknownVariable(f"unknown variable {name!r}", t.pos)
            kind = "indexed"
        else:
            raise UnknownVariable(f"unknown variable {name!r}", t.pos)
        if self.alphabet is None:
            self.alphabet = kind
        elif self.alphabet != kind:
            raise ParseError(f"variable {name!r} mixes x,y,z with x1..xn", t.pos)
        return idx

    def coeff(self) -> Fraction:
        t = self.take()
        value = Fraction(t.text)
        if self.at("op", "/"):
            self.take()
            d = self.tok
            if d.kind != "num" or "." in d.text or int(d.text) == 0:
                raise ParseError("bad denominator", d.pos, ("positive integer",))
            self.take()
            if "." in t.text:
                raise ParseError("fraction numerator must be an integer", t.pos)
            value /= int(d.text)
        return value

    def factor(self) -> List[int]:
        t = self.take()
        idx = self.var_index(t)
        power = 1
        if self.at("op", "^"):
            self.take()
            e = self.tok
            if e.kind != "num" or "." in e.text:
                raise ParseError("bad exponent", e.pos, ("integer",))
            self.take()
            power = int(e.text)
        return [idx] * power

    def term(self) -> Tuple[Fraction, List[int], int]:
        start = self.tok.pos
        c = Fraction(1)
        if self.at("num"):
            c = self.coeff()
            if self.at("op", "*"):
                self.take()
                if not self.at("var"):
                    raise ParseError("expected a variable", self.tok.pos, ("variable",))
        elif not self.at("var"):
            raise ParseError("expected a term", self.tok.pos, ("number", "variable"))
        vars_: List[int] = []
        while self.at("var"):
            vars_ += self.factor()
            if self.at("op", "*"):
                self.take()
                if not self.at("var"):
                    raise ParseError("expected a variable", self.tok.pos, ("variable",))
        if len(vars_) != 2:
            raise NonQuadraticTerm(
                f"term {self.text[start:self.tok.pos].strip()!r} has degree {len(vars_)}, not 2", start
            )
        return c, vars_, start

    def parse(self) -> SymMatrix:
        entries: Dict[Tuple[int, int], Fraction] = {}
        sign = 1
        if self.at("op", "-") or self.at("op", "+"):
            sign = -1 if self.take().text == "-" else 1
        while True:
            c, (i, j), _ = self.term()
            i, j = min(i, j), max(i, j)
            entries[i, j] = entries.get((i, j), Fraction(0)) + sign * c
            if self.at("end"):
                break
            if not (self.at("op", "+") or self.at("op", "-")):
                raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos, ("'+'", "'-'", "end of input"))
            sign = -1 if self.take().text == "-" else 1
        n = max(j for _, j in entries)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), c in entries.items():
            if i == j:
                rows[i - 1][i - 1] += c
            else:
                rows[i - 1][j - 1] += c / 2
                rows[j - 1][i - 1] += c / 2
        return SymMatrix(rows)


def parse_form(text: str) -> SymMatrix:
    """Matrix of a quadratic form written as a polynomial, e.g. ``"x^2 - 2xy + 3y^2"``.

    The dimension is the highest variable used (``"-y^2"`` is 2x2).
    """
    return _FormParser(text).parse()


_ROW_SPLIT = re.compile(r"[;\n]")
_ENTRY_SPLIT = re.compile(r"[\s,]+")
_ENTRY_RE = re.compile(r"[-+]?(\d+/\d+|\d+\.\d*|\.\d+|\d+)")


def parse_matrix(text: str) -> SymMatrix:
    """Matrix from rows separated by ';' or newlines, entries by spaces or commas."""
    rows = []
    for line in _ROW_SPLIT.split(text.strip().strip("[]")):
        line = line.strip().strip("[]").strip()
        if not line:
            continue
        row = []
        for item in _ENTRY_SPLIT.split(line.strip(",")):
            if not _ENTRY_RE.fullmatch(item):
                raise ParseError(f"bad matrix entry {item!r}", None, ("integer", "p/q", "decimal"))
            value = to_rational(item)
            row.append(value)
        rows.append(row)
    if not rows:
        raise ParseError("empty matrix")
    if any(len(r) != len(rows) for r in rows):
        raise NotSquare(f"got {len(rows)} rows of lengths {[len(r) for r in rows]}")
    return SymMatrix(rows)


def looks_like_form(text: str) -> bool:
    return re.search(r"[a-zA-Z]", text) is not None


def parse_input(text: str) -> SymMatrix:
    return parse_form(text) if looks_like_form(text) else parse_matrix(text)


def variable_names(n: int) -> List[str]:
    return list(XYZ[:n]) if n <= 3 else [f"x{k}" for k in range(1, n + 1)]


def render_form(A: SymMatrix) -> str:
    """Polynomial text that ``parse_form`` maps back to ``A``.

    Diagonal terms are always written (zero included) so the dimension
    survives the round trip.
    """
    names = variable_names(A.n)
    parts = []
    for i in range(A.n):
        for j in range(i, A.n):
            c = A[i, i] if i == j else 2 * A[i, j]
            if i != j and c == 0:
                continue
            mono = f"{names[i]}^2" if i == j else f"{names[i]}*{names[j]}"
            parts.append((c, mono))
    out = ""
    for k, (c, mono) in enumerate(parts):
        mag = fmt(abs(c))
        if k == 0:
            out = f"{'-' if c < 0 else ''}{mag}*{mono}"
        else:
            out += f" {'-' if c < 0 else '+'} {mag}*{mono}"
    return out


def render_matrix(A: SymMatrix) -> str:
    return "; ".join(" ".join(fmt(v) for v in row) for row in A.rows)


def render_linear(form, names: List[str]) -> str:
    """``x + 1/2 y``-style text for a linear form."""
    out = ""
    for c, name in zip(form, names):
        if c == 0:
            continue
        mag = abs(c)
        body = name if mag == 1 else f"{fmt(mag)} {name}"
        if not out:
            out = f"-{body}" if c < 0 else body
        else:
            out += f" {'-' if c < 0 else '+'} {body}"
    return out or "0"


def render_certificate(cert, names: List[str] | None = None) -> str:
    """``2*(x + 1/2 y)^2 + 3/2*(y)^2``; the zero certificate renders as ``0``."""
    names = names or variable_names(cert.n)
    if not cert.terms:
        return "0"
    return " + ".join(f"{fmt(w)}*({render_linear(f, names)})^2" for w, f in cert.terms)
