"""The four classical discrete scalar weights and their orthogonal polynomials.

Each weight spec knows its pointwise value, its three-term recurrence
coefficients (the primary construction path for the monic polynomials), its
total mass, its second-order difference operator and eigenvalues, and a
pointwise Rodrigues-formula evaluator that serves as an independent oracle.

Squared norms are carried as an exact rational coefficient times a symbolic
mass factor, so that ratios of norms inside one family are exact rationals
and cross-family ratios isolate the one transcendental constant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import SpecError
from .poly import ScalarPoly, lagrange_interpolate
from .rational import binomial, format_rational, pochhammer, rational


@dataclass(frozen=True)
class Mass:
    """A total mass written as e**exp_arg * prod(base**exponent).

    Rational masses are folded into norm coefficients and carry the trivial
    Mass.  Quotients of masses with the same transcendental content cancel to
    exact rationals; anything left is the symbolic part that identity checks
    replace by a rational probe and numeric checks evaluate as a float.
    """

    exp_arg: Fraction = Fraction(0)
    powers: tuple = ()  # sorted ((base, exponent), ...), exponents nonzero

    @classmethod
    def one(cls) -> "Mass":
        return cls()

    @classmethod
    def exponential(cls, arg) -> "Mass":
        return cls(exp_arg=Fraction(arg))

    @classmethod
    def power(cls, base, exponent) -> "Mass":
        return cls()._combine(Mass(powers=(((Fraction(base)), Fraction(exponent)),)), 1)

    def _combine(self, other: "Mass", sign: int) -> "Mass":
        exp_arg = self.exp_arg + sign * other.exp_arg
        acc = dict(self.powers)
        for base, exponent in other.powers:
            acc[base] = acc.get(base, Fraction(0)) + sign * exponent
        powers = tuple(sorted((b, e) for b, e in acc.items() if e != 0))
        return Mass(exp_arg=exp_arg, powers=powers)

    def __mul__(self, other: "Mass") -> "Mass":
        return self._combine(other, 1)

    def __truediv__(self, other: "Mass") -> "Mass":
        return self._combine(other, -1)

    @property
    def is_one(self) -> bool:
        return self.exp_arg == 0 and not self.powers

    @property
    def is_rational(self) -> bool:
        return self.exp_arg == 0 and all(
            e.denominator == 1 for _, e in self.powers
        )

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"mass {self} is not rational")
        out = Fraction(1)
        for base, exponent in self.powers:
            out *= Fraction(base) ** int(exponent)
        return out

    def float_value(self) -> float:
        out = math.exp(float(self.exp_arg))
        for base, exponent in self.powers:
            out *= float(base) ** float(exponent)
        return out

    def __repr__(self):
        parts = []
        if self.exp_arg != 0:
            parts.append(f"e^({self.exp_arg})")
        parts.extend(f"({b})^({e})" for b, e in self.powers)
        return " * ".join(parts) if parts else "1"


@dataclass(frozen=True)
class NormValue:
    """A squared norm: exact rational coefficient times a mass factor."""

    coefficient: Fraction
    mass: Mass = Mass.one()

    def scaled(self, factor) -> "NormValue":
        return NormValue(self.coefficient * factor, self.mass)

    @property
    def is_rational(self) -> bool:
        return self.mass.is_rational

    def rational_value(self) -> Fraction:
        return self.coefficient * self.mass.rational_value()

    def float_value(self) -> float:
        return float(self.coefficient) * self.mass.float_value()


@dataclass(frozen=True)
class ScalarOperator:
    """A second-order difference operator delta = Delta f + k - nabla g.

    Acting on the right of a polynomial p:
        p . delta = Delta(p) * f + p * k - nabla(p) * g,
    with eigenvalue(n) the exact eigenvalue on the family's degree-n monic
    polynomial.
    """

    f: ScalarPoly
    k: ScalarPoly
    g: ScalarPoly
    eigenvalue: object  # Callable[[int], Fraction]

    def apply(self, p: ScalarPoly) -> ScalarPoly:
        return p.delta() * self.f + p * self.k - p.nabla() * self.g


# --------------------------------------------------------------------------
# weight specs


@dataclass(frozen=True)
class Charlier:
    """Weight b^x / x! on the nonnegative integers, b > 0."""

    b: Fraction
    kind = "charlier"

    def __post_init__(self):
        object.__setattr__(self, "b", rational(self.b))
        if self.b <= 0:
            raise SpecError(f"charlier weight needs b > 0, got b = {self.b}")

    support_N = None

    def weight(self, x: int) -> Fraction:
        if x < 0:
            return Fraction(0)
        return self.b**x / math.factorial(x)

    def recurrence_bc(self, n: int):
        return Fraction(n) + self.b, Fraction(n) * self.b

    def total_mass(self) -> NormValue:
        return NormValue(Fraction(1), Mass.exponential(self.b))

    def operator(self) -> ScalarOperator:
        return ScalarOperator(
            f=ScalarPoly.constant(self.b),
            k=ScalarPoly.zero(),
            g=ScalarPoly.x(),
            eigenvalue=lambda n: Fraction(-n),
        )

    def rodrigues_value(self, n: int, x: int) -> Fraction:
        nabla_n = _iterated_nabla(self.weight, n, x)
        return (-self.b) ** n * math.factorial(x) / self.b**x * nabla_n

    def to_json(self):
        return {"kind": "charlier", "b": format_rational(self.b)}


@dataclass(frozen=True)
class Meixner:
    """Weight (beta)_x c^x / x! on the nonnegative integers."""

    beta: Fraction
    c: Fraction
    kind = "meixner"

    def __post_init__(self):
        object.__setattr__(self, "beta", rational(self.beta))
        object.__setattr__(self, "c", rational(self.c))
        if self.beta <= 0:
            raise SpecError(f"meixner weight needs beta > 0, got {self.beta}")
        if not 0 < self.c < 1:
            raise SpecError(f"meixner weight needs 0 < c < 1, got c = {self.c}")

    support_N = None

    def weight(self, x: int) -> Fraction:
        if x < 0:
            return Fraction(0)
        return pochhammer(self.beta, x) * self.c**x / math.factorial(x)

    def recurrence_bc(self, n: int):
        beta, c = self.beta, self.c
        b_n = (n + (n + beta) * c) / (1 - c)
        c_n = n * (n + beta - 1) * c / (1 - c) ** 2
        return b_n, c_n

    def total_mass(self) -> NormValue:
        return NormValue(Fraction(1), Mass.power(1 - self.c, -self.beta))

    def operator(self) -> ScalarOperator:
        beta, c = self.beta, self.c
        return ScalarOperator(
            f=ScalarPoly((c * beta, c)),
            k=ScalarPoly.zero(),
            g=ScalarPoly.x(),
            eigenvalue=lambda n: Fraction(n) * (c - 1),
        )

    def rodrigues_value(self, n: int, x: int) -> Fraction:
        beta, c = self.beta, self.c

        def bracket(y: int) -> Fraction:
            if y < 0:
                return Fraction(0)
            return pochhammer(beta + n, y) * c**y / math.factorial(y)

        nabla_n = _iterated_nabla(bracket, n, x)
        prefactor = (
            pochhammer(beta, n)
            * c**n
            / (c - 1) ** n
            * math.factorial(x)
            / (pochhammer(beta, x) * c**x)
        )
        return prefactor * nabla_n

    def to_json(self):
        return {
            "kind": "meixner",
            "beta": format_rational(self.beta),
            "c": format_rational(self.c),
        }


@dataclass(frozen=True)
class Krawtchouk:
    """Weight binom(N, x) p^x (1-p)^(N-x) on {0, ..., N}."""

    p: Fraction
    N: int
    kind = "krawtchouk"

    def __post_init__(self):
        object.__setattr__(self, "p", rational(self.p))
        if not 0 < self.p < 1:
            raise SpecError(f"krawtchouk weight needs 0 < p < 1, got p = {self.p}")
        if not (isinstance(self.N, int) and self.N >= 1):
            raise SpecError(f"krawtchouk weight needs integer N >= 1, got N = {self.N}")

    @property
    def support_N(self) -> int:
        return self.N

    def weight(self, x: int) -> Fraction:
        if x < 0 or x > self.N:
            return Fraction(0)
        return binomial(self.N, x) * self.p**x * (1 - self.p) ** (self.N - x)

    def recurrence_bc(self, n: int):
        p, N = self.p, self.N
        b_n = p * (N - n) + n * (1 - p)
        c_n = Fraction(n) * p * (1 - p) * (N + 1 - n)
        return b_n, c_n

    def total_mass(self) -> NormValue:
        # binomial theorem: sum_x binom(N,x) p^x (1-p)^(N-x) = 1
        return NormValue(Fraction(1), Mass.one())

    def operator(self) -> ScalarOperator:
        p, N = self.p, self.N
        return ScalarOperator(
            f=ScalarPoly((p * N, -p)),
            k=ScalarPoly.zero(),
            g=ScalarPoly((Fraction(0), 1 - p)),
            eigenvalue=lambda n: Fraction(-n),
        )

    def rodrigues_value(self, n: int, x: int) -> Fraction:
        p, N = self.p, self.N
        ratio = p / (1 - p)

        def bracket(y: int) -> Fraction:
            if y < 0:
                return Fraction(0)
            return binomial(N - n, y) * ratio**y

        nabla_n = _iterated_nabla(bracket, n, x)
        prefactor = pochhammer(Fraction(-N), n) * p**n / (binomial(N, x) * ratio**x)
        return prefactor * nabla_n

    def to_json(self):
        return {"kind": "krawtchouk", "p": format_rational(self.p), "N": self.N}


@dataclass(frozen=True)
class Hahn:
    """Weight binom(alpha+x, x) binom(beta+N-x, N-x) on {0, ..., N}.

    Parameters must satisfy alpha, beta > -1 or alpha, beta < -N.  Rational
    parameters can make the recurrence denominators (2n + alpha + beta),
    (2n + alpha + beta + 1), (2n + alpha + beta + 2) vanish for some needed
    n; such specs are rejected at construction with the offending n named.
    """

    alpha: Fraction
    beta: Fraction
    N: int
    kind = "hahn"

    def __post_init__(self):
        object.__setattr__(self, "alpha", rational(self.alpha))
        object.__setattr__(self, "beta", rational(self.beta))
        if not (isinstance(self.N, int) and self.N >= 1):
            raise SpecError(f"hahn weight needs integer N >= 1, got N = {self.N}")
        ok = (self.alpha > -1 and self.beta > -1) or (
            self.alpha < -self.N and self.beta < -self.N
        )
        if not ok:
            raise SpecError(
                "hahn weight needs alpha, beta > -1 or alpha, beta < -N, got "
                f"alpha = {self.alpha}, beta = {self.beta}, N = {self.N}"
            )
        sigma = self.alpha + self.beta
        for n in range(0, self.N + 1):
            if 2 * n + sigma + 1 == 0 or 2 * n + sigma + 2 == 0:
                raise SpecError(
                    f"hahn recurrence degenerates at n = {n}: "
                    f"2n + alpha + beta + 1 or + 2 vanishes"
                )
            if n >= 1 and 2 * n + sigma == 0:
                raise SpecError(
                    f"hahn recurrence degenerates at n = {n}: 2n + alpha + beta vanishes"
                )

    @property
    def support_N(self) -> int:
        return self.N

    def weight(self, x: int) -> Fraction:
        if x < 0 or x > self.N:
            return Fraction(0)
        return binomial(self.alpha + x, x) * binomial(self.beta + self.N - x, self.N - x)

    def _t(self, n: int) -> Fraction:
        alpha, beta, N = self.alpha, self.beta, self.N
        s = alpha + beta
        return (
            (n + s + 1)
            * (n + alpha + 1)
            * (N - n)
            / ((2 * n + s + 1) * (2 * n + s + 2))
        )

    def _s(self, n: int) -> Fraction:
        if n == 0:
            return Fraction(0)
        alpha, beta, N = self.alpha, self.beta, self.N
        s = alpha + beta
        return n * (n + s + N + 1) * (n + beta) / ((2 * n + s) * (2 * n + s + 1))

    def recurrence_bc(self, n: int):
        # c_0 multiplies the trivial p_(-1); defining it as 0 avoids the
        # 0/0 form t_(-1) s_0 at alpha + beta in {0, -1}.
        c_n = Fraction(0) if n == 0 else self._t(n - 1) * self._s(n)
        return self._t(n) + self._s(n), c_n

    def total_mass(self) -> NormValue:
        # Vandermonde: sum_x binom(alpha+x,x) binom(beta+N-x,N-x)
        #            = binom(alpha+beta+N+1, N), a polynomial identity.
        return NormValue(
            binomial(self.alpha + self.beta + self.N + 1, self.N), Mass.one()
        )

    def operator(self) -> ScalarOperator:
        alpha, beta, N = self.alpha, self.beta, self.N
        f = ScalarPoly((alpha + 1, 1)) * ScalarPoly((-N, 1))
        g = ScalarPoly.x() * ScalarPoly((-beta - N - 1, 1))
        return ScalarOperator(
            f=f,
            k=ScalarPoly.zero(),
            g=g,
            eigenvalue=lambda n: Fraction(n) * (n + alpha + beta + 1),
        )

    def rodrigues_value(self, n: int, x: int) -> Fraction:
        alpha, beta, N = self.alpha, self.beta, self.N

        def bracket(y: int) -> Fraction:
            return binomial(alpha + n + y, y) * binomial(beta + N - y, N - n - y)

        nabla_n = _iterated_nabla(bracket, n, x)
        denom = pochhammer(n + alpha + beta + 1, n)
        if denom == 0:
            raise SpecError(f"hahn rodrigues prefactor degenerates at n = {n}")
        prefactor = (
            (-1) ** n
            * pochhammer(alpha + 1, n)
            * pochhammer(beta + 1, n)
            / denom
            / self.weight(x)
        )
        return prefactor * nabla_n

    def to_json(self):
        return {
            "kind": "hahn",
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
            "N": self.N,
        }


@dataclass(frozen=True)
class CustomWeight:
    """Hook for a user-supplied discrete weight via recurrence coefficients.

    ``recurrence`` maps n to the pair (b_n, c_n) of exact recurrence
    coefficients; ``weight_fn`` gives the pointwise weight; ``mass`` anchors
    the squared-norm ladder.  Rodrigues and difference-operator services are
    not provided for custom weights.
    """

    name: str
    weight_fn: object
    recurrence: object
    mass: NormValue
    N: int | None = None
    kind = "custom"

    @property
    def support_N(self):
        return self.N

    def weight(self, x: int) -> Fraction:
        if x < 0 or (self.N is not None and x > self.N):
            return Fraction(0)
        return self.weight_fn(x)

    def recurrence_bc(self, n: int):
        return self.recurrence(n)

    def total_mass(self) -> NormValue:
        return self.mass

    def operator(self):
        raise SpecError("custom weights do not carry a difference operator")

    def rodrigues_value(self, n, x):
        raise SpecError("custom weights do not carry a Rodrigues formula")

    def to_json(self):
        raise SpecError("custom weights do not serialize")


def brute_force_mass(spec) -> Fraction:
    """Total mass by direct summation; the oracle for the closed forms."""
    return sum((spec.weight(x) for x in range(spec.support_N + 1)), Fraction(0))


def _iterated_nabla(fn, n: int, x: int) -> Fraction:
    """nabla^n applied to a pointwise function, evaluated at integer x."""
    return sum(
        (
            (-1) ** j * binomial(n, j) * fn(x - j)
            for j in range(n + 1)
        ),
        Fraction(0),
    )


# --------------------------------------------------------------------------
# family-level operations


def _check_degree(spec, n: int):
    if n < 0:
        raise SpecError(f"polynomial degree must be >= 0, got {n}")
    top = spec.support_N
    if top is not None and n > top + 1:
        raise SpecError(
            f"only {top + 1} orthogonal polynomials exist on a support of size "
            f"{top + 1}; degree {n} exceeds the degree-{top + 1} extension"
        )


@lru_cache(maxsize=None)
def _monic_ladder(spec, n: int):
    """Monic polynomials p_0..p_n by the three-term recurrence (immutable)."""
    polys = [ScalarPoly.one()]
    x = ScalarPoly.x()
    for k in range(n):
        b_k, c_k = spec.recurrence_bc(k)
        nxt = polys[k] * x - polys[k] * b_k
        if k >= 1:
            nxt = nxt - polys[k - 1] * c_k
        polys.append(nxt)
    return tuple(polys)


def monic_polynomial(spec, n: int) -> ScalarPoly:
    """The degree-n monic orthogonal polynomial, built from the recurrence.

    On a finite support {0..N} the value n = N+1 returns the natural
    extension x(x-1)...(x-N), which the recurrence itself produces.
    """
    _check_degree(spec, n)
    return _monic_ladder(spec, n)[n]


def extended_polynomial(spec) -> ScalarPoly:
    """The degree-(N+1) closure polynomial x(x-1)...(x-N) on finite support.

    Asserts that the recurrence-built polynomial of degree N+1 agrees with
    the falling-factorial product exactly.
    """
    top = spec.support_N
    if top is None:
        raise SpecError("the degree-(N+1) extension needs a finite support")
    product = ScalarPoly.one()
    for root in range(top + 1):
        product = product * ScalarPoly((-Fraction(root), 1))
    via_recurrence = monic_polynomial(spec, top + 1)
    if via_recurrence != product:
        raise AssertionError(
            "recurrence-built degree-(N+1) polynomial does not close on "
            f"x(x-1)...(x-N) for {spec!r}"
        )
    return product


@lru_cache(maxsize=None)
def squared_norm(spec, n: int) -> NormValue:
    """Squared norm of the degree-n monic polynomial.

    Computed by the exact ladder |p_n|^2 = c_n |p_(n-1)|^2 anchored at the
    total mass.  On finite support the degree-(N+1) extension has norm zero.
    """
    _check_degree(spec, n)
    top = spec.support_N
    if top is not None and n == top + 1:
        return NormValue(Fraction(0), Mass.one())
    out = spec.total_mass()
    for k in range(1, n + 1):
        _, c_k = spec.recurrence_bc(k)
        out = out.scaled(c_k)
    return out


def rodrigues_polynomial(spec, n: int) -> ScalarPoly:
    """Independent oracle: evaluate the Rodrigues formula at x = 0..n and
    recover the polynomial by exact Lagrange interpolation."""
    if n < 0:
        raise SpecError(f"polynomial degree must be >= 0, got {n}")
    top = spec.support_N
    if top is not None and n > top:
        raise SpecError(f"rodrigues formula applies for n <= N = {top}, got n = {n}")
    points = [(Fraction(x), spec.rodrigues_value(n, x)) for x in range(n + 1)]
    return lagrange_interpolate(points)


def scalar_operator(spec) -> ScalarOperator:
    """The family's difference operator delta = Delta f + k - nabla g."""
    return spec.operator()


def weight_value(spec, x: int) -> Fraction:
    """Exact weight at an integer point; zero off the support."""
    return spec.weight(x)


# --------------------------------------------------------------------------
# JSON wire format

_KINDS = {"charlier", "meixner", "krawtchouk", "hahn"}


def weight_spec_from_json(data: dict):
    kind = data.get("kind")
    if kind not in _KINDS:
        raise SpecError(f"unknown scalar weight kind: {kind!r}")
    try:
        if kind == "charlier":
            return Charlier(b=rational(data["b"]))
        if kind == "meixner":
            return Meixner(beta=rational(data["beta"]), c=rational(data["c"]))
        if kind == "krawtchouk":
            return Krawtchouk(p=rational(data["p"]), N=int(data["N"]))
        return Hahn(
            alpha=rational(data["alpha"]),
            beta=rational(data["beta"]),
            N=int(data["N"]),
        )
    except KeyError as missing:
        raise SpecError(f"scalar weight spec {data!r} lacks field {missing}") from None
