"""Parser and elaborator for ``.lie`` specification files.

A document declares Lie algebras, representations, semidirect products,
covector points and polarization candidates::

    algebra so3 {
      basis e1 e2 e3
      bracket [e1, e2] = e3
      bracket [e1, e3] = -e2
      bracket [e2, e3] = e1
    }
    rep vec on so3 dim 3 {
      basis v1 v2 v3
      e1 -> [[0, 0, 0], [0, 0, -1], [0, 1, 0]]
      ...
    }
    product se3 = so3 x vec
    point spin in se3* { f = e3; p = v3 }
    polarization trivial at spin { a = span{ e3 } }

Numbers are rationals ``INT`` or ``INT/INT``; inside polarization blocks a
number may carry the suffix ``i`` (``1i``, ``1/2i``).  A combination is a
signed sum of terms ``[coef] [*] NAME``, the literal ``0``, or a vector
literal ``(c1, ..., cn)``.  Brackets are declared for ``i < j`` in basis
order; the others follow by antisymmetry and undeclared ones are zero.
Words are keywords only where the grammar expects them.  ``#`` starts a
comment.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from .exactla import ComplexSubspace, GaussianRational, zeros
from .lie_core import LieAlgebra, Representation, validate
from .polarization import from_semidirect_form
from .semidirect import CovectorPoint, SemidirectProduct

MAX_DIAGNOSTICS = 50
MAX_TOKENS = 100_000
MAX_DIM = 64  # exact validation is cubic in the dimension


@dataclass(frozen=True)
class Span:
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __str__(self):
        return f"{self.start_line}:{self.start_col}-{self.end_line}:{self.end_col}"

    def to(self, other: "Span") -> "Span":
        return Span(self.start_line, self.start_col, other.end_line, other.end_col)


NO_SPAN = Span(0, 0, 0, 0)


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    span: Span
    notes: tuple[tuple[str, Span], ...] = ()

    def format(self, source: str = "<input>") -> str:
        lines = [f"{source}:{self.span}: {self.severity}: {self.message}"]
        lines += [f"{source}:{span}: note: {msg}" for msg, span in self.notes]
        return "\n".join(lines)

    def __str__(self):
        return self.format()


class SpecError(ValueError):
    """Raised with the diagnostics of a document that failed to parse or elaborate."""

    def __init__(self, diagnostics: list[Diagnostic], source: str = "<input>"):
        self.diagnostics = list(diagnostics)
        self.source = source
        super().__init__("\n".join(d.format(source) for d in self.diagnostics))


# ---------------------------------------------------------------------------
# lexer


class Token(NamedTuple):
    kind: str  # NAME, NUMBER, PUNCT, EOF
    text: str
    start: int
    end: int
    lines: list  # offsets of line starts, shared by all tokens of a text

    @property
    def imaginary(self) -> bool:
        return self.kind == "NUMBER" and self.text.endswith("i")

    @property
    def value(self) -> Fraction | None:
        if self.kind != "NUMBER":
            return None
        num, _, den = self.text.rstrip("i").partition("/")
        return Fraction(int(num), int(den)) if den and int(den) else Fraction(int(num))

    @property
    def span(self) -> Span:
        return _span(self.lines, self.start, self.end)


def _span(lines: list, start: int, end: int) -> Span:
    a = bisect_right(lines, start) - 1
    b = bisect_right(lines, max(start, end - 1)) - 1
    return Span(a + 1, start - lines[a] + 1, b + 1, end - lines[b] + 1)


_TOKEN_RE = re.compile(
    r"""
    (?P<skip>(?:[ \t\r\n\f\v]+|\#[^\n]*)+)
  | (?P<number>\d+(?:/\d+)?i?(?![A-Za-z0-9_]))
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>->|[{}\[\]()=,;*+\-])
  | (?P<bad>.)
    """,
    re.VERBOSE | re.DOTALL,
)


_TOO_LONG = f"input exceeds {MAX_TOKENS} tokens"


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    """Split ``text`` into tokens; stops with a diagnostic after ``MAX_TOKENS`` tokens."""
    lines = [0] + [m.end() for m in re.finditer("\n", text)]
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    append = tokens.append
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "skip":
            continue
        if len(tokens) >= MAX_TOKENS:
            diags.append(Diagnostic("error", _TOO_LONG, _span(lines, m.start(), m.end())))
            break
        if kind == "name":
            append(Token("NAME", m.group(), m.start(), m.end(), lines))
        elif kind == "punct":
            append(Token("PUNCT", m.group(), m.start(), m.end(), lines))
        elif kind == "number":
            tok_text = m.group()
            if "/" in tok_text and int(tok_text.rstrip("i").partition("/")[2]) == 0:
                diags.append(Diagnostic("error", "zero denominator", _span(lines, m.start(), m.end())))
            append(Token("NUMBER", tok_text, m.start(), m.end(), lines))
        elif len(diags) < MAX_DIAGNOSTICS:
            diags.append(Diagnostic("error", f"unexpected character {m.group()!r}", _span(lines, m.start(), m.end())))
    append(Token("EOF", "", len(text), len(text), lines))
    return tokens, diags


# ---------------------------------------------------------------------------
# syntax tree; spans are ignored by equality


@dataclass(frozen=True)
class Term:
    coef: Fraction
    imaginary: bool
    name: str
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Combination:
    """Either a sum of terms or a vector literal; entries of a literal are ``(re, im)``."""

    terms: tuple[Term, ...] = ()
    vector: tuple[tuple[Fraction, Fraction], ...] | None = None
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class BracketDecl:
    left: str
    right: str
    rhs: Combination
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    basis: tuple[str, ...]
    brackets: tuple[BracketDecl, ...]
    span: Span = field(default=NO_SPAN, compare=False)
    basis_span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class ActionDecl:
    element: str
    matrix: tuple[tuple[Fraction, ...], ...]
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class RepDecl:
    name: str
    algebra: str
    dim: int
    basis: tuple[str, ...] | None
    actions: tuple[ActionDecl, ...]
    span: Span = field(default=NO_SPAN, compare=False)
    algebra_span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class ProductDecl:
    name: str
    algebra: str
    rep: str
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class PointDecl:
    name: str
    product: str
    f: Combination
    p: Combination
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class PolarizationDecl:
    name: str
    point: str
    a: tuple[Combination, ...]
    span: Span = field(default=NO_SPAN, compare=False)


Declaration = AlgebraDecl | RepDecl | ProductDecl | PointDecl | PolarizationDecl


@dataclass(frozen=True)
class SpecDocument:
    declarations: tuple[Declaration, ...] = ()

    def __iter__(self) -> Iterator[Declaration]:
        return iter(self.declarations)

    def __len__(self):
        return len(self.declarations)


# ---------------------------------------------------------------------------
# parser

_TOP = ("algebra", "rep", "product", "point", "polarization")


class _Abort(Exception):
    pass


class _Parser:
    def __init__(self, tokens: list[Token], diags: list[Diagnostic]):
        self.toks = tokens
        self.i = 0
        self.diags = diags
        self.complex_ok = False

    # token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("PUNCT", "NAME") and t.text == text

    def error(self, message: str, span: Span, notes=()) -> None:
        if len(self.diags) < MAX_DIAGNOSTICS:
            self.diags.append(Diagnostic("error", message, span, tuple(notes)))
        elif len(self.diags) == MAX_DIAGNOSTICS:
            self.diags.append(Diagnostic("error", "too many errors; stopping", span))

    def fail(self, message: str, span: Span | None = None):
        self.error(message, span or self.tok.span)
        raise _Abort

    def describe(self, t: Token) -> str:
        return "end of input" if t.kind == "EOF" else repr(t.text)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}, found {self.describe(self.tok)}")
        return self.advance()

    def name(self, what: str = "a name") -> Token:
        if self.tok.kind != "NAME":
            self.fail(f"expected {what}, found {self.describe(self.tok)}")
        return self.advance()

    def integer(self) -> Token:
        t = self.tok
        if t.kind != "NUMBER" or t.imaginary or t.value.denominator != 1:
            self.fail(f"expected an integer, found {self.describe(t)}")
        return self.advance()

    # document

    def document(self) -> SpecDocument:
        decls = []
        while self.tok.kind != "EOF":
            if len(self.diags) > MAX_DIAGNOSTICS:
                break
            start = self.i
            try:
                decls.append(self.declaration())
            except _Abort:
                self.recover(start)
        return SpecDocument(tuple(decls))

    def recover(self, start: int):
        """Skip to the next top-level keyword outside braces."""
        if self.i == start:
            self.advance()
        depth = 0
        # count braces already opened by the failed declaration
        for t in self.toks[start : self.i]:
            if t.text == "{" and t.kind == "PUNCT":
                depth += 1
            elif t.text == "}" and t.kind == "PUNCT":
                depth = max(0, depth - 1)
        while self.tok.kind != "EOF":
            t = self.tok
            if t.kind == "PUNCT" and t.text == "{":
                depth += 1
            elif t.kind == "PUNCT" and t.text == "}":
                depth -= 1
                if depth <= 0:
                    self.advance()
                    if depth == 0:
                        return
                    depth = 0
                    continue
            elif depth <= 0 and t.kind == "NAME" and t.text in _TOP:
                return
            self.advance()

    def declaration(self) -> Declaration:
        t = self.tok
        if t.kind == "NAME" and t.text == "algebra":
            return self.algebra()
        if t.kind == "NAME" and t.text == "rep":
            return self.rep()
        if t.kind == "NAME" and t.text == "product":
            return self.product()
        if t.kind == "NAME" and t.text == "point":
            return self.point()
        if t.kind == "NAME" and t.text == "polarization":
            return self.polarization()
        self.fail(f"expected a declaration ({', '.join(_TOP)}), found {self.describe(t)}")

    def algebra(self) -> AlgebraDecl:
        start = self.advance().span
        name = self.name("an algebra name").text
        self.expect("{")
        if not self.at("basis"):
            self.fail(f"expected 'basis', found {self.describe(self.tok)}")
        bstart = self.advance().span
        basis = []
        bend = bstart
        while self.tok.kind == "NAME" and self.tok.text != "bracket":
            t = self.advance()
            basis.append(t.text)
            bend = t.span
        if not basis:
            self.fail("a basis needs at least one element")
        brackets = []
        while self.at("bracket"):
            brackets.append(self.bracket(basis))
        end = self.expect("}").span
        return AlgebraDecl(name, tuple(basis), tuple(brackets), start.to(end), bstart.to(bend))

    def bracket(self, basis: list[str]) -> BracketDecl:
        start = self.advance().span
        self.expect("[")
        left = self.name("a basis element").text
        self.expect(",")
        right = self.name("a basis element").text
        self.expect("]")
        self.expect("=")
        rhs = self.combination()
        span = start.to(rhs.span if rhs.span != NO_SPAN else self.toks[self.i - 1].span)
        if left == right:
            self.error("bracket of a basis element with itself must be zero", span)
        return BracketDecl(left, right, rhs, span)

    def rep(self) -> RepDecl:
        start = self.advance().span
        name = self.name("a representation name").text
        self.expect("on")
        alg_tok = self.name("an algebra name")
        self.expect("dim")
        dim = int(self.integer().value)
        self.expect("{")
        basis = None
        if self.at("basis") and self.peek().kind == "NAME" and self.peek(2).text != "->":
            self.advance()
            names = []
            while self.tok.kind == "NAME" and self.peek().text != "->":
                names.append(self.advance().text)
            basis = tuple(names)
        actions = []
        while self.tok.kind == "NAME":
            el = self.advance()
            self.expect("->")
            mat = self.matrix()
            actions.append(ActionDecl(el.text, mat, el.span.to(self.toks[self.i - 1].span)))
        end = self.expect("}").span
        return RepDecl(name, alg_tok.text, dim, basis, tuple(actions), start.to(end), alg_tok.span)

    def signed_rational(self) -> Fraction:
        sign = 1
        while self.at("-") or self.at("+"):
            if self.advance().text == "-":
                sign = -sign
        t = self.tok
        if t.kind != "NUMBER":
            self.fail(f"expected a number, found {self.describe(t)}")
        if t.imaginary:
            self.fail("complex numbers are only allowed in polarization blocks")
        self.advance()
        return sign * t.value

    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        self.expect("[")
        rows = []
        while True:
            self.expect("[")
            row = [self.signed_rational()]
            while self.at(","):
                self.advance()
                row.append(self.signed_rational())
            self.expect("]")
            rows.append(tuple(row))
            if self.at(","):
                self.advance()
                continue
            break
        self.expect("]")
        return tuple(rows)

    def product(self) -> ProductDecl:
        start = self.advance().span
        name = self.name("a product name").text
        self.expect("=")
        alg = self.name("an algebra name").text
        self.expect("x")
        rep = self.name("a representation name")
        return ProductDecl(name, alg, rep.text, start.to(rep.span))

    def point(self) -> PointDecl:
        start = self.advance().span
        name = self.name("a point name").text
        self.expect("in")
        prod = self.name("a product name").text
        self.expect("*")
        self.expect("{")
        self.expect("f")
        self.expect("=")
        f = self.combination()
        self.expect(";")
        self.expect("p")
        self.expect("=")
        p = self.combination()
        if self.at(";"):
            self.advance()
        end = self.expect("}").span
        return PointDecl(name, prod, f, p, start.to(end))

    def polarization(self) -> PolarizationDecl:
        start = self.advance().span
        name = self.name("a polarization name").text
        self.expect("at")
        pt = self.name("a point name").text
        self.expect("{")
        self.expect("a")
        self.expect("=")
        self.expect("span")
        self.expect("{")
        vecs = []
        self.complex_ok = True
        try:
            if not self.at("}"):
                vecs.append(self.combination())
                while self.at(","):
                    self.advance()
                    vecs.append(self.combination())
        finally:
            self.complex_ok = False
        self.expect("}")
        end = self.expect("}").span
        return PolarizationDecl(name, pt, tuple(vecs), start.to(end))

    # combinations

    def number(self) -> Token:
        t = self.tok
        if t.imaginary and not self.complex_ok:
            self.fail("complex numbers are only allowed in polarization blocks")
        return self.advance()

    def combination(self) -> Combination:
        start = self.tok.span
        if self.at("("):
            return self.vector_literal()
        terms = []
        sign = 1
        first = True
        while True:
            while self.at("-") or self.at("+"):
                if self.advance().text == "-":
                    sign = -sign
            t = self.tok
            tstart = t.span
            coef, imag = Fraction(1), False
            if t.kind == "NUMBER":
                num = self.number()
                coef, imag = num.value, num.imaginary
                if self.at("*"):
                    self.advance()
                if self.tok.kind != "NAME":
                    if coef == 0 and first and not (self.at("+") or self.at("-")):
                        return Combination((), None, start.to(num.span))
                    self.fail("a coefficient must be followed by a basis element")
            elif t.kind != "NAME":
                self.fail(f"expected a term, found {self.describe(t)}")
            name = self.name("a basis element")
            terms.append(Term(sign * coef, imag, name.text, tstart.to(name.span)))
            first = False
            if self.at("+") or self.at("-"):
                sign = 1
                continue
            break
        return Combination(tuple(terms), None, start.to(self.toks[self.i - 1].span))

    def vector_literal(self) -> Combination:
        start = self.expect("(").span
        entries = [self.scalar()]
        while self.at(","):
            self.advance()
            entries.append(self.scalar())
        end = self.expect(")").span
        return Combination((), tuple(entries), start.to(end))

    def scalar(self) -> tuple[Fraction, Fraction]:
        re_part, im_part = Fraction(0), Fraction(0)
        while True:
            sign = 1
            while self.at("-") or self.at("+"):
                if self.advance().text == "-":
                    sign = -sign
            if self.tok.kind != "NUMBER":
                self.fail(f"expected a number, found {self.describe(self.tok)}")
            t = self.number()
            if t.imaginary:
                im_part += sign * t.value
            else:
                re_part += sign * t.value
            if not (self.at("+") or self.at("-")):
                return re_part, im_part


def parse_with_diagnostics(text: str) -> tuple[SpecDocument, list[Diagnostic]]:
    """Parse with declaration-level error recovery; returns what parsed and all diagnostics."""
    if text.startswith("﻿"):
        text = text[1:]
    tokens, diags = tokenize(text)
    if any(d.message == _TOO_LONG for d in diags):
        return SpecDocument(), diags
    parser = _Parser(tokens, diags)
    doc = parser.document()
    diags.sort(key=lambda d: (d.span.start_line, d.span.start_col))
    return doc, diags


def parse(text: str, source: str = "<input>") -> SpecDocument:
    doc, diags = parse_with_diagnostics(text)
    errors = [d for d in diags if d.severity == "error"]
    if errors:
        raise SpecError(errors, source)
    return doc


# ---------------------------------------------------------------------------
# pretty printer


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_terms(c: Combination) -> str:
    if c.vector is not None:
        parts = []
        for re_part, im_part in c.vector:
            if im_part == 0:
                parts.append(_fmt_fraction(re_part))
            elif re_part == 0:
                parts.append(_fmt_fraction(im_part) + "i")
            else:
                sign = "+" if im_part > 0 else "-"
                parts.append(f"{_fmt_fraction(re_part)} {sign} {_fmt_fraction(abs(im_part))}i")
        return "(" + ", ".join(parts) + ")"
    if not c.terms:
        return "0"
    out = []
    for k, t in enumerate(c.terms):
        neg = t.coef < 0
        mag = abs(t.coef)
        coef = _fmt_fraction(mag) + ("i" if t.imaginary else "")
        body = t.name if coef == "1" else f"{coef} {t.name}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def format_document(doc: SpecDocument) -> str:
    """Canonical text of a document; parsing it gives back an equal document."""
    blocks = []
    for d in doc:
        if isinstance(d, AlgebraDecl):
            lines = [f"algebra {d.name} {{", "  basis " + " ".join(d.basis)]
            lines += [f"  bracket [{b.left}, {b.right}] = {_fmt_terms(b.rhs)}" for b in d.brackets]
            lines.append("}")
        elif isinstance(d, RepDecl):
            lines = [f"rep {d.name} on {d.algebra} dim {d.dim} {{"]
            if d.basis is not None:
                lines.append("  basis " + " ".join(d.basis))
            for a in d.actions:
                rows = ", ".join("[" + ", ".join(_fmt_fraction(x) for x in row) + "]" for row in a.matrix)
                lines.append(f"  {a.element} -> [{rows}]")
            lines.append("}")
        elif isinstance(d, ProductDecl):
            lines = [f"product {d.name} = {d.algebra} x {d.rep}"]
        elif isinstance(d, PointDecl):
            lines = [f"point {d.name} in {d.product}* {{ f = {_fmt_terms(d.f)}; p = {_fmt_terms(d.p)} }}"]
        else:
            vecs = ", ".join(_fmt_terms(v) for v in d.a)
            lines = [f"polarization {d.name} at {d.point} {{ a = span{{ {vecs} }} }}"]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


# ---------------------------------------------------------------------------
# elaboration


@dataclass(frozen=True)
class PointEntry:
    product: str
    point: CovectorPoint


@dataclass(frozen=True)
class PolarizationEntry:
    point: str
    a: ComplexSubspace
    h: ComplexSubspace


@dataclass(eq=False)
class Elaborated:
    algebras: dict[str, LieAlgebra] = field(default_factory=dict)
    reps: dict[str, Representation] = field(default_factory=dict)
    products: dict[str, SemidirectProduct] = field(default_factory=dict)
    points: dict[str, PointEntry] = field(default_factory=dict)
    polarizations: dict[str, PolarizationEntry] = field(default_factory=dict)

    def product_of(self, point: str) -> SemidirectProduct:
        return self.products[self.points[point].product]


class _Elaborator:
    def __init__(self):
        self.out = Elaborated()
        self.diags: list[Diagnostic] = []
        self.alg_decls: dict[str, AlgebraDecl] = {}
        self.rep_decls: dict[str, RepDecl] = {}
        self.seen: dict[str, Span] = {}

    def error(self, message: str, span: Span, notes=()):
        if len(self.diags) < MAX_DIAGNOSTICS:
            self.diags.append(Diagnostic("error", message, span, tuple(notes)))

    def declare(self, name: str, span: Span) -> bool:
        if name in self.seen:
            self.error(f"{name!r} is already declared", span, [("previous declaration", self.seen[name])])
            return False
        self.seen[name] = span
        return True

    def run(self, doc: SpecDocument) -> Elaborated:
        for d in doc:
            if not self.declare(d.name, d.span):
                continue
            if isinstance(d, AlgebraDecl):
                self.algebra(d)
            elif isinstance(d, RepDecl):
                self.rep(d)
            elif isinstance(d, ProductDecl):
                self.product(d)
            elif isinstance(d, PointDecl):
                self.point(d)
            else:
                self.polarization(d)
        return self.out

    def combination(self, c: Combination, names: tuple[str, ...], allow_complex: bool) -> np.ndarray | None:
        n = len(names)
        if c.vector is not None:
            if len(c.vector) != n:
                self.error(f"vector has {len(c.vector)} entries, expected {n}", c.span)
                return None
            if allow_complex:
                return np.array([GaussianRational(r, i) for r, i in c.vector] + [None], dtype=object)[:-1]
            return np.array([r for r, _ in c.vector] + [None], dtype=object)[:-1]
        index = {name: k for k, name in enumerate(names)}
        vec = [GaussianRational(0) if allow_complex else Fraction(0) for _ in range(n)]
        ok = True
        for t in c.terms:
            if t.name not in index:
                self.error(f"unknown basis element {t.name!r} (expected one of {', '.join(names)})", t.span)
                ok = False
                continue
            k = index[t.name]
            if allow_complex:
                vec[k] = vec[k] + (GaussianRational(0, t.coef) if t.imaginary else GaussianRational(t.coef))
            else:
                vec[k] = vec[k] + t.coef
        if not ok:
            return None
        return np.array(vec + [None], dtype=object)[:-1]

    def algebra(self, d: AlgebraDecl):
        index = {}
        for k, b in enumerate(d.basis):
            if b in index:
                self.error(f"basis element {b!r} is repeated", d.basis_span)
                return
            index[b] = k
        n = len(d.basis)
        if n > MAX_DIM:
            self.error(f"algebra has {n} basis elements; at most {MAX_DIM} are supported", d.basis_span)
            return
        c = zeros((n, n, n))
        declared: dict[tuple[int, int], BracketDecl] = {}
        ok = True
        for b in d.brackets:
            if b.left not in index or b.right not in index:
                bad = b.left if b.left not in index else b.right
                self.error(f"unknown basis element {bad!r} in bracket", b.span)
                ok = False
                continue
            i, j = index[b.left], index[b.right]
            if i == j:
                ok = False  # reported by the parser
                continue
            if i > j:
                self.error(
                    f"bracket [{b.left}, {b.right}] must be declared as [{b.right}, {b.left}] (basis order)",
                    b.span,
                )
                ok = False
                continue
            if (i, j) in declared:
                self.error(
                    f"bracket [{b.left}, {b.right}] is declared twice",
                    b.span,
                    [("first declaration", declared[(i, j)].span)],
                )
                ok = False
                continue
            declared[(i, j)] = b
            vec = self.combination(b.rhs, d.basis, False)
            if vec is None:
                ok = False
                continue
            c[i, j, :] = vec
            c[j, i, :] = -vec
        if not ok:
            return
        alg = LieAlgebra(c, d.basis)
        violations = [v for v in validate(alg).violations if v.kind == "jacobi"]
        if violations:
            for v in violations:
                i, j, k = v.indices
                names = ", ".join(d.basis[x] for x in (i, j, k))
                involved = [declared[pair] for pair in sorted({tuple(sorted(p)) for p in ((i, j), (j, k), (i, k))}) if pair in declared]
                span = involved[0].span if involved else d.span
                notes = [("involved bracket", b.span) for b in involved[1:]]
                self.error(f"Jacobi identity fails for basis triple ({names}) at indices ({i}, {j}, {k})", span, notes)
            return
        self.out.algebras[d.name] = alg
        self.alg_decls[d.name] = d

    def rep(self, d: RepDecl):
        if d.algebra not in self.out.algebras:
            self.unknown("algebra", d.algebra, d.algebra_span, self.out.algebras)
            return
        alg = self.out.algebras[d.algebra]
        names = self.alg_decls[d.algebra].basis
        index = {b: k for k, b in enumerate(names)}
        if d.dim > MAX_DIM:
            self.error(f"representation dimension {d.dim} exceeds {MAX_DIM}", d.span)
            return
        if d.basis is not None and len(d.basis) != d.dim:
            self.error(f"representation basis has {len(d.basis)} names, expected dim {d.dim}", d.span)
            return
        if d.basis is not None and len(set(d.basis)) != len(d.basis):
            self.error("representation basis names are repeated", d.span)
            return
        mats = zeros((alg.dim, d.dim, d.dim))
        seen: dict[str, ActionDecl] = {}
        ok = True
        for a in d.actions:
            if a.element not in index:
                self.error(f"unknown basis element {a.element!r} of algebra {d.algebra!r}", a.span)
                ok = False
                continue
            if a.element in seen:
                self.error(f"action of {a.element!r} is declared twice", a.span, [("first declaration", seen[a.element].span)])
                ok = False
                continue
            seen[a.element] = a
            shape = (len(a.matrix), *sorted({len(r) for r in a.matrix}))
            if len(shape) != 2 or shape != (d.dim, d.dim):
                cols = "/".join(str(len(r)) for r in a.matrix) if len(shape) != 2 else str(shape[1])
                self.error(f"matrix for {a.element!r} has shape {len(a.matrix)}x{cols}, expected {d.dim}x{d.dim}", a.span)
                ok = False
                continue
            mats[index[a.element]] = np.array([list(r) for r in a.matrix] , dtype=object)
        if not ok:
            return
        rep = Representation(alg, mats, d.basis or ())
        violations = [v for v in validate(alg, rep).violations if v.kind == "homomorphism"]
        if violations:
            for v in violations:
                i, j = v.indices[:2]
                spans = [seen[names[x]].span for x in (i, j) if names[x] in seen]
                self.error(
                    f"representation is not a homomorphism on the pair ({names[i]}, {names[j]})",
                    spans[0] if spans else d.span,
                )
            return
        self.out.reps[d.name] = rep
        self.rep_decls[d.name] = d

    def unknown(self, kind: str, name: str, span: Span, table: dict):
        if name in self.seen:
            self.error(f"{name!r} is not a valid {kind}", span)
        else:
            self.error(f"undefined {kind} {name!r}", span)

    def product(self, d: ProductDecl):
        if d.algebra not in self.out.algebras:
            self.unknown("algebra", d.algebra, d.span, self.out.algebras)
            return
        if d.rep not in self.out.reps:
            self.unknown("representation", d.rep, d.span, self.out.reps)
            return
        if self.rep_decls[d.rep].algebra != d.algebra:
            self.error(f"representation {d.rep!r} is on {self.rep_decls[d.rep].algebra!r}, not {d.algebra!r}", d.span)
            return
        self.out.products[d.name] = SemidirectProduct(self.out.algebras[d.algebra], self.out.reps[d.rep], d.name)

    def point(self, d: PointDecl):
        if d.product not in self.out.products:
            self.unknown("product", d.product, d.span, self.out.products)
            return
        sd = self.out.products[d.product]
        f = self.combination(d.f, sd.k.basis_names, False)
        p = self.combination(d.p, sd.rho.basis_names, False)
        if f is None or p is None:
            return
        self.out.points[d.name] = PointEntry(d.product, CovectorPoint(f, p))

    def polarization(self, d: PolarizationDecl):
        if d.point not in self.out.points:
            self.unknown("point", d.point, d.span, self.out.points)
            return
        sd = self.out.product_of(d.point)
        vecs = [self.combination(v, sd.k.basis_names, True) for v in d.a]
        if any(v is None for v in vecs):
            return
        a = ComplexSubspace.span(vecs, sd.nk)
        self.out.polarizations[d.name] = PolarizationEntry(d.point, a, from_semidirect_form(sd, a))


def elaborate(doc: SpecDocument, source: str = "<input>") -> Elaborated:
    """Validate and build the declared objects; raises ``SpecError`` with located diagnostics."""
    el = _Elaborator()
    out = el.run(doc)
    if el.diags:
        raise SpecError(el.diags, source)
    return out


def diagnose(text: str) -> list[Diagnostic]:
    """All diagnostics for a text: parse errors, or elaboration errors when parsing succeeded."""
    doc, diags = parse_with_diagnostics(text)
    if diags:
        return diags
    el = _Elaborator()
    el.run(doc)
    return el.diags


def load(text: str, source: str = "<input>") -> Elaborated:
    return elaborate(parse(text, source), source)


def load_file(path) -> Elaborated:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return load(text, str(path))
