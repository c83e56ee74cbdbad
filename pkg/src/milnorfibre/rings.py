"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials
are immutable term maps ``exponent tuple -> Fraction``.  Everything here is
exact; no floating point enters at any stage.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ExponentError,
    ParseError,
    RingMismatchError,
    UnknownVariableError,
)

_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass(frozen=True)
class Ring:
    """A polynomial ring over Q with named variables."""

    variables: tuple[str, ...]

    def __post_init__(self):
        if not self.variables:
            raise ValueError("ring needs at least one variable")
        for v in self.variables:
            if not _VAR_RE.fullmatch(v):
                raise ValueError(f"bad variable name: {v!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {} if c == 0 else {(0,) * self.nvars: c})

    def variable(self, name: str) -> "Polynomial":
        i = self.index(name)
        expo = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {expo: Fraction(1)})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.variable(v) for v in self.variables)


def monomial_degree(expo: tuple[int, ...]) -> int:
    return sum(expo)


def monomial_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Exponent vector of a/b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Immutable exact polynomial: a map from exponent tuples to Fractions."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], Fraction]):
        clean = {}
        for expo, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if len(expo) != ring.nvars or any(e < 0 for e in expo):
                raise ValueError(f"bad exponent tuple {expo!r}")
            clean[tuple(expo)] = coeff
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(monomial_degree(e) for e in self._terms)

    def order_at_origin(self) -> int:
        """Lowest total degree of a term; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return min(monomial_degree(e) for e in self._terms)

    def constant_coefficient(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def evaluate_at_origin(self) -> Fraction:
        return self.constant_coefficient()

    def coefficient(self, expo: tuple[int, ...]) -> Fraction:
        return self._terms.get(tuple(expo), Fraction(0))

    def is_constant(self) -> bool:
        return all(monomial_degree(e) == 0 for e in self._terms)

    def is_unit_at_origin(self) -> bool:
        """Invertible in the local ring: nonzero constant term."""
        return self.constant_coefficient() != 0

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(
                f"rings differ: {self.ring.variables} vs {other.ring.variables}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            h = hash((self.ring, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        self._check_ring(other)
        terms = dict(self._terms)
        for expo, coeff in other._terms.items():
            new = terms.get(expo, Fraction(0)) + coeff
            if new == 0:
                terms.pop(expo, None)
            else:
                terms[expo] = new
        return Polynomial(self.ring, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        self._check_ring(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                expo = monomial_mul(e1, e2)
                new = terms.get(expo, Fraction(0)) + c1 * c2
                if new == 0:
                    terms.pop(expo, None)
                else:
                    terms[expo] = new
        return Polynomial(self.ring, terms)

    def __rmul__(self, other) -> "Polynomial":
        return self * other

    def __radd__(self, other) -> "Polynomial":
        return self + other

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: k * c for e, k in self._terms.items()})

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def derivative(self, var: str | int) -> "Polynomial":
        """Formal partial derivative with respect to one variable."""
        i = var if isinstance(var, int) else self.ring.index(var)
        terms: dict[tuple[int, ...], Fraction] = {}
        for expo, coeff in self._terms.items():
            if expo[i] == 0:
                continue
            new = list(expo)
            new[i] -= 1
            terms[tuple(new)] = coeff * expo[i]
        return Polynomial(self.ring, terms)

    def substitute(self, values: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Substitute polynomials for variables; missing variables stay fixed."""
        gens = {v: self.ring.variable(v) for v in self.ring.variables}
        for name, val in values.items():
            self.ring.index(name)
            gens[name] = val if isinstance(val, Polynomial) else self.ring.constant(val)
        result = self.ring.zero()
        for expo, coeff in self._terms.items():
            term = self.ring.constant(coeff)
            for v, e in zip(self.ring.variables, expo):
                if e:
                    term = term * gens[v] ** e
            result = result + term
        return result

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms sorted for display: degree then exponents, descending."""
        return sorted(
            self._terms.items(),
            key=lambda item: (monomial_degree(item[0]), item[0]),
            reverse=True,
        )

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(p: Polynomial) -> str:
    """Render a polynomial so that parse(format(p)) == p."""
    if p.is_zero():
        return "0"
    chunks: list[str] = []
    for expo, coeff in p.sorted_terms():
        factors = [
            v if e == 1 else f"{v}^{e}"
            for v, e in zip(p.ring.variables, expo)
            if e
        ]
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not chunks:
            chunks.append(body if coeff > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(chunks)


# --- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*^()]))"
)


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        while self.pos < len(text):
            m = _TOKEN_RE.match(text, self.pos)
            if not m or m.end() == self.pos:
                stripped = text[self.pos:].lstrip()
                if not stripped:
                    break
                where = len(text) - len(stripped)
                raise ParseError(f"unexpected character {text[where]!r}", where)
            for kind in ("number", "name", "op"):
                val = m.group(kind)
                if val is not None:
                    self.tokens.append((kind, val, m.start(kind)))
                    break
            self.pos = m.end()
        self.idx = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.idx] if self.idx < len(self.tokens) else None

    def next(self) -> tuple[str, str, int] | None:
        tok = self.peek()
        if tok is not None:
            self.idx += 1
        return tok


class _Parser:
    """Recursive-descent parser: sums of products of powers, with parentheses."""

    def __init__(self, text: str, ring: Ring):
        self.toks = _Tokenizer(text)
        self.ring = ring
        self.text = text

    def parse(self) -> Polynomial:
        p = self.expr()
        tok = self.toks.peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Polynomial:
        tok = self.toks.peek()
        sign = 1
        while tok is not None and tok[0] == "op" and tok[1] in "+-":
            self.toks.next()
            if tok[1] == "-":
                sign = -sign
            tok = self.toks.peek()
        result = self.term().scale(sign)
        while True:
            tok = self.toks.peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                break
            self.toks.next()
            sign = 1 if tok[1] == "+" else -1
            nxt = self.toks.peek()
            while nxt is not None and nxt[0] == "op" and nxt[1] in "+-":
                self.toks.next()
                if nxt[1] == "-":
                    sign = -sign
                nxt = self.toks.peek()
            result = result + self.term().scale(sign)
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            tok = self.toks.peek()
            if tok is not None and tok[0] == "op" and tok[1] == "*":
                self.toks.next()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        base = self.atom()
        tok = self.toks.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self.toks.next()
            etok = self.toks.next()
            if etok is None:
                raise ParseError("missing exponent after '^'", len(self.text))
            kind, val, pos = etok
            if kind == "op" and val == "-":
                num = self.toks.next()
                shown = "-" + (num[1] if num else "")
                raise ExponentError(f"negative exponent {shown!r}", pos)
            if kind != "number" or "/" in val:
                raise ExponentError(f"exponent must be a nonnegative integer, got {val!r}", pos)
            return base ** int(val)
        return base

    def atom(self) -> Polynomial:
        tok = self.toks.next()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        kind, val, pos = tok
        if kind == "number":
            if "/" in val:
                num, den = val.split("/")
                if int(den) == 0:
                    raise ParseError("zero denominator", pos)
                return self.ring.constant(Fraction(int(num), int(den)))
            return self.ring.constant(int(val))
        if kind == "name":
            if val not in self.ring.variables:
                raise UnknownVariableError(f"unknown variable {val!r}", pos)
            return self.ring.variable(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.toks.next()
            if close is None or close[1] != ")":
                raise ParseError("missing closing parenthesis", pos)
            return inner
        if kind == "op" and val == "-":
            return -self.atom()
        if kind == "op" and val == "+":
            return self.atom()
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse '+ - * ^ ( )' expressions in the ring's variables.

    Integer and p/q rational coefficients are accepted; exponents must be
    nonnegative integers.  Errors carry the character position.
    """
    return _Parser(text, ring).parse()


# --- matrices ---------------------------------------------------------------

class PolyMatrix:
    """Immutable rectangular matrix of polynomials over one ring."""

    __slots__ = ("ring", "rows", "cols", "_entries")

    def __init__(self, ring: Ring, entries: Sequence[Sequence[Polynomial]]):
        rows = len(entries)
        if rows == 0:
            raise ValueError("matrix needs at least one row")
        cols = len(entries[0])
        if cols == 0:
            raise ValueError("matrix needs at least one column")
        packed = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for p in row:
                if p.ring != ring:
                    raise RingMismatchError("matrix entry over a different ring")
            packed.append(tuple(row))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_entries", tuple(packed))

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    def entry(self, i: int, j: int) -> Polynomial:
        return self._entries[i][j]

    def row(self, i: int) -> tuple[Polynomial, ...]:
        return self._entries[i]

    def entries(self) -> tuple[tuple[Polynomial, ...], ...]:
        return self._entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.ring, self._entries))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.ring,
            [[self._entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self._entries[i][j] == self._entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("matrix shapes do not compose")
        return PolyMatrix(
            self.ring,
            [
                [
                    sum(
                        (self._entries[i][k] * other._entries[k][j] for k in range(self.cols)),
                        self.ring.zero(),
                    )
                    for j in range(other.cols)
                ]
                for i in range(self.rows)
            ],
        )

    def left_multiply_constants(self, coeffs: Sequence[Sequence]) -> "PolyMatrix":
        """Left-multiply by a matrix of rational constants."""
        const = PolyMatrix(
            self.ring, [[self.ring.constant(c) for c in row] for row in coeffs]
        )
        return const @ self

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(format_polynomial(p) for p in row) for row in self._entries
        )
        return f"PolyMatrix([{body}])"


def poly_divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact quotient a/b in the polynomial ring; raises if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = a.ring
    if ring != b.ring:
        raise RingMismatchError("rings differ in exact division")

    def lead(p: Polynomial) -> tuple[tuple[int, ...], Fraction]:
        # graded revlex lead: max by (degree, reversed negated exponents)
        expo = max(
            p._terms,
            key=lambda e: (monomial_degree(e), tuple(-x for x in reversed(e))),
        )
        return expo, p._terms[expo]

    b_expo, b_coeff = lead(b)
    quotient_terms: dict[tuple[int, ...], Fraction] = {}
    rem = a
    while not rem.is_zero():
        r_expo, r_coeff = lead(rem)
        if not monomial_divides(b_expo, r_expo):
            raise ValueError("division is not exact")
        q_expo = monomial_div(r_expo, b_expo)
        q_coeff = r_coeff / b_coeff
        quotient_terms[q_expo] = quotient_terms.get(q_expo, Fraction(0)) + q_coeff
        rem = rem - Polynomial(ring, {q_expo: q_coeff}) * b
    return Polynomial(ring, quotient_terms)


def det_cofactor(m: PolyMatrix) -> Polynomial:
    """Determinant by cofactor expansion along the first row."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    return _det_cofactor_rec(m.ring, m.entries())


def _det_cofactor_rec(ring: Ring, rows: tuple[tuple[Polynomial, ...], ...]) -> Polynomial:
    k = len(rows)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero()
    sign = 1
    for j in range(k):
        entry = rows[0][j]
        if not entry.is_zero():
            sub = tuple(
                tuple(row[c] for c in range(k) if c != j) for row in rows[1:]
            )
            piece = entry * _det_cofactor_rec(ring, sub)
            total = total + (piece if sign > 0 else -piece)
        sign = -sign
    return total


def det_bareiss(m: PolyMatrix) -> Polynomial:
    """Fraction-free determinant; all intermediate divisions are exact."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    ring = m.ring
    k = m.rows
    a = [list(row) for row in m.entries()]
    sign = 1
    prev = ring.one()
    for col in range(k - 1):
        if a[col][col].is_zero():
            pivot_row = next(
                (r for r in range(col + 1, k) if not a[r][col].is_zero()), None
            )
            if pivot_row is None:
                return ring.zero()
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        pivot = a[col][col]
        for i in range(col + 1, k):
            for j in range(col + 1, k):
                num = a[i][j] * pivot - a[i][col] * a[col][j]
                a[i][j] = poly_divide_exact(num, prev)
            a[i][col] = ring.zero()
        prev = pivot
    det = a[k - 1][k - 1]
    return det if sign > 0 else -det


def determinant(m: PolyMatrix) -> Polynomial:
    """Exact determinant; dispatches on size, value independent of route."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    if m.rows <= 4:
        return det_cofactor(m)
    return det_bareiss(m)


def _subsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Size-k subsets of range(n) in lexicographic order."""
    if k > n:
        return
    idx = list(range(k))
    while True:
        yield tuple(idx)
        for i in reversed(range(k)):
            if idx[i] != i + n - k:
                break
        else:
            return
        idx[i] += 1
        for j in range(i + 1, k):
            idx[j] = idx[j - 1] + 1


def minors(m: PolyMatrix, size: int) -> tuple[Polynomial, ...]:
    """All size x size minors, lexicographic in (row subset, column subset).

    Duplicates are kept; the symmetric 2x2 example [[a,b],[b,c]] has size-1
    minors (a, b, b, c).
    """
    if size < 1:
        raise ValueError("minor size must be positive")
    if size > m.rows or size > m.cols:
        return ()
    result = []
    for rows_idx in _subsets(m.rows, size):
        for cols_idx in _subsets(m.cols, size):
            sub = PolyMatrix(
                m.ring,
                [[m.entry(i, j) for j in cols_idx] for i in rows_idx],
            )
            result.append(determinant(sub))
    return tuple(result)


def jacobian(ring: Ring, functions: Sequence[Polynomial]) -> PolyMatrix:
    """Jacobian matrix: one row per function, one column per variable."""
    if not functions:
        raise ValueError("jacobian of an empty family")
    return PolyMatrix(
        ring,
        [[f.derivative(i) for i in range(ring.nvars)] for f in functions],
    )


def evaluate_matrix_at_origin(m: PolyMatrix) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(
        tuple(p.evaluate_at_origin() for p in row) for row in m.entries()
    )


def int_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, row)) for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for col in range(n - 1):
        if a[col][col] == 0:
            pivot_row = next((r for r in range(col + 1, n) if a[r][col] != 0), None)
            if pivot_row is None:
                return 0
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                a[i][j] = (a[i][j] * a[col][col] - a[i][col] * a[col][j]) // prev
            a[i][col] = 0
        prev = a[col][col]
    return sign * a[n - 1][n - 1]


def fraction_matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by Gaussian elimination over Q."""
    work = [list(map(Fraction, row)) for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pv = work[rank][col]
        work[rank] = [x / pv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def corank_at_origin(m: PolyMatrix) -> int:
    """min(rows, cols) minus the rank of the constant part at the origin."""
    rows = evaluate_matrix_at_origin(m)
    return min(m.rows, m.cols) - fraction_matrix_rank(rows)
