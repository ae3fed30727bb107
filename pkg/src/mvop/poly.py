"""Dense univariate polynomials and matrix polynomials with exact coefficients.

``ScalarPoly`` stores coefficients in ascending powers of x, canonically
trimmed so structural equality is mathematical equality.  ``MatrixPoly`` is a
rectangular grid of scalar polynomials with noncommutative products.  Both are
immutable; all operations return fresh values.  Coefficients are Fractions on
exact paths but any field scalar (float) works through the same code.
"""
from __future__ import annotations

from fractions import Fraction

from .quadext import QuadExt
from .rational import rational

_SCALARS = (int, Fraction, float, QuadExt)


def _trim(coeffs):
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class ScalarPoly:
    """A dense polynomial in one variable x.

    The zero polynomial has an empty coefficient tuple and degree -1
    (a sentinel, not a mathematical degree).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(tuple(coeffs))

    @classmethod
    def constant(cls, c) -> "ScalarPoly":
        return cls((c,))

    @classmethod
    def zero(cls) -> "ScalarPoly":
        return cls(())

    @classmethod
    def one(cls) -> "ScalarPoly":
        return cls((Fraction(1),))

    @classmethod
    def x(cls) -> "ScalarPoly":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def monomial(cls, k: int, c=Fraction(1)) -> "ScalarPoly":
        return cls((Fraction(0),) * k + (c,))

    @classmethod
    def from_rationals(cls, items) -> "ScalarPoly":
        return cls(tuple(rational(v) for v in items))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coefficient(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return ScalarPoly(
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(n))
        )

    __radd__ = __add__

    def __neg__(self):
        return ScalarPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, ScalarPoly):
            if self.is_zero or other.is_zero:
                return ScalarPoly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return ScalarPoly(out)
        if isinstance(other, _SCALARS):
            return ScalarPoly(tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, x0):
        """Horner evaluation; exact for Fraction input."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * x0 + c
        return out

    def compose(self, inner: "ScalarPoly") -> "ScalarPoly":
        """self(inner(x)), by Horner over polynomial arithmetic."""
        out = ScalarPoly()
        for c in reversed(self.coeffs):
            out = out * inner + ScalarPoly.constant(c)
        return out

    def shift(self, k) -> "ScalarPoly":
        """p(x + k), exact for rational k."""
        if k == 0:
            return self
        return self.compose(ScalarPoly((k, 1)))

    def compose_affine(self, alpha, beta) -> "ScalarPoly":
        """p(alpha*x + beta); alpha must be nonzero (degree is preserved)."""
        if alpha == 0:
            raise ValueError("affine substitution with alpha = 0 collapses the degree")
        return self.compose(ScalarPoly((beta, alpha)))

    def delta(self) -> "ScalarPoly":
        """Forward difference p(x+1) - p(x)."""
        return self.shift(1) - self

    def nabla(self) -> "ScalarPoly":
        """Backward difference p(x) - p(x-1)."""
        return self - self.shift(-1)

    def derivative(self) -> "ScalarPoly":
        return ScalarPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(parts)


def _as_poly(value):
    if isinstance(value, ScalarPoly):
        return value
    if isinstance(value, _SCALARS):
        return ScalarPoly((value,))
    return NotImplemented


def lagrange_interpolate(points) -> ScalarPoly:
    """Exact interpolation through (x_i, y_i) with distinct rational nodes."""
    points = list(points)
    out = ScalarPoly()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis = ScalarPoly.constant(Fraction(1))
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = basis * ScalarPoly((-xj, 1))
            denom *= Fraction(xi) - Fraction(xj)
        out = out + basis * (Fraction(yi) / denom)
    return out


class MatrixPoly:
    """An m x m (or rectangular) matrix of scalar polynomials."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(_coerce_entry(e) for e in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix polynomial needs at least one entry")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix polynomial")
        self.entries = rows

    @classmethod
    def identity(cls, m: int) -> "MatrixPoly":
        one = ScalarPoly.one()
        zero = ScalarPoly.zero()
        return cls(tuple(tuple(one if i == j else zero for j in range(m)) for i in range(m)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "MatrixPoly":
        cols = rows if cols is None else cols
        zero = ScalarPoly.zero()
        return cls(((zero,) * cols,) * rows)

    @classmethod
    def diagonal(cls, polys) -> "MatrixPoly":
        polys = tuple(_coerce_entry(p) for p in polys)
        m = len(polys)
        zero = ScalarPoly.zero()
        return cls(tuple(tuple(polys[i] if i == j else zero for j in range(m)) for i in range(m)))

    @classmethod
    def from_scalar_matrix(cls, rows) -> "MatrixPoly":
        return cls(tuple(tuple(ScalarPoly.constant(v) for v in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def degree(self) -> int:
        return max(e.degree for row in self.entries for e in row)

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.entries for e in row)

    def entry(self, i: int, j: int) -> ScalarPoly:
        return self.entries[i][j]

    def map(self, fn) -> "MatrixPoly":
        return MatrixPoly(tuple(tuple(fn(e) for e in row) for row in self.entries))

    def __add__(self, other):
        self._check_same_shape(other)
        return MatrixPoly(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return MatrixPoly(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def __neg__(self):
        return self.map(lambda e: -e)

    def __matmul__(self, other: "MatrixPoly") -> "MatrixPoly":
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch in matrix product: {self.rows}x{self.cols} @ "
                f"{other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ScalarPoly()
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(tuple(row))
        return MatrixPoly(tuple(out))

    def scale(self, s) -> "MatrixPoly":
        """Multiply every entry by a scalar or scalar polynomial (x commutes)."""
        return self.map(lambda e: e * s)

    def __eq__(self, other):
        if not isinstance(other, MatrixPoly):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def evaluate(self, x0):
        """Entrywise evaluation; returns a tuple-of-tuples scalar matrix."""
        return tuple(tuple(e.evaluate(x0) for e in row) for row in self.entries)

    def coefficient(self, k: int):
        """The k-th coefficient as a constant scalar matrix."""
        return tuple(tuple(e.coefficient(k) for e in row) for row in self.entries)

    def leading_coefficient(self):
        return self.coefficient(self.degree)

    def transpose(self) -> "MatrixPoly":
        return MatrixPoly(tuple(zip(*self.entries)))

    def shift(self, k) -> "MatrixPoly":
        return self.map(lambda e: e.shift(k))

    def delta(self) -> "MatrixPoly":
        return self.map(lambda e: e.delta())

    def nabla(self) -> "MatrixPoly":
        return self.map(lambda e: e.nabla())

    def derivative(self) -> "MatrixPoly":
        return self.map(lambda e: e.derivative())

    def compose_affine(self, alpha, beta) -> "MatrixPoly":
        return self.map(lambda e: e.compose_affine(alpha, beta))

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(repr(e) for e in row) + "]" for row in self.entries
        )
        return f"MatrixPoly({body})"

    def _check_same_shape(self, other):
        if not isinstance(other, MatrixPoly):
            raise TypeError(f"expected MatrixPoly, got {type(other).__name__}")
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )


def _coerce_entry(e):
    if isinstance(e, ScalarPoly):
        return e
    if isinstance(e, _SCALARS):
        return ScalarPoly((e,))
    raise TypeError(f"cannot use {e!r} as a matrix polynomial entry")
