"""Matrix weight construction and the closed-form orthogonal sequence.

A family couples m scalar discrete weights on a common support through a
two-step nilpotent matrix A (staggered superdiagonal/subdiagonal pattern,
A^2 = 0) and the unipotent factor U(x) = I + A x:

    W(x) = U(x) diag(w_1(x), ..., w_m(x)) U(x)^T.

The orthogonal sequence for W is assembled in closed form from the scalar
monic polynomials and their squared-norm ratios; the only non-rational
constants are cross-channel total-mass quotients, which exact identity
checks replace by a rational probe value (tau) and numeric checks evaluate
as floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import ProbeError, SpecError, TruncationError
from .families import (
    Mass,
    monic_polynomial,
    squared_norm,
    weight_spec_from_json,
)
from .poly import MatrixPoly, ScalarPoly
from .quadext import QuadExt
from .rational import format_rational, rational

# Default probe grids for evaluation-based identity certification.  The
# identities in scope have degree <= 3 in the coupling parameter and are at
# most quadratic in any mass quotient, so these grids oversample the bounds.
A_PROBES = (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(-1))
TAU_PROBES = (Fraction(1), Fraction(2), Fraction(3))


@dataclass(frozen=True)
class FamilySpec:
    """m coupled scalar channels plus the m-1 nonzero coupling constants.

    All channels must share one support: all finite with the same N, or all
    infinite.  Coupling constants are exact rationals on verification paths;
    floats are admitted for limit studies with irrational rescalings.
    """

    a: tuple
    channels: tuple

    def __post_init__(self):
        channels = tuple(self.channels)
        a = tuple(
            v if isinstance(v, (float, QuadExt)) else rational(v) for v in self.a
        )
        object.__setattr__(self, "channels", channels)
        object.__setattr__(self, "a", a)
        m = len(channels)
        if m < 2:
            raise SpecError(f"a matrix family needs m >= 2 channels, got {m}")
        if len(a) != m - 1:
            raise SpecError(
                f"expected {m - 1} coupling constants for {m} channels, got {len(a)}"
            )
        if any(v == 0 for v in a):
            raise SpecError("coupling constants must all be nonzero")
        tops = {ch.support_N for ch in channels}
        if len(tops) != 1:
            raise SpecError(
                "all channels must share one support (all finite with equal N, "
                f"or all infinite); got supports {sorted(map(str, tops))}"
            )

    @property
    def m(self) -> int:
        return len(self.channels)

    @property
    def support_N(self):
        return self.channels[0].support_N

    @property
    def is_finite(self) -> bool:
        return self.support_N is not None

    def max_degree(self):
        """Largest n with an orthogonal polynomial (None = unbounded)."""
        return self.support_N

    def with_a(self, new_a) -> "FamilySpec":
        new_a = tuple(new_a)
        if len(new_a) == 1 and self.m > 2:
            new_a = new_a * (self.m - 1)
        return FamilySpec(a=new_a, channels=self.channels)

    def to_json(self):
        return {
            "m": self.m,
            "a": [format_rational(v) for v in self.a],
            "channels": [ch.to_json() for ch in self.channels],
        }


def family_spec_from_json(data: dict) -> FamilySpec:
    try:
        channels = tuple(weight_spec_from_json(ch) for ch in data["channels"])
        a = tuple(rational(v) for v in data["a"])
    except KeyError as missing:
        raise SpecError(f"family spec lacks field {missing}") from None
    spec = FamilySpec(a=a, channels=channels)
    if "m" in data and int(data["m"]) != spec.m:
        raise SpecError(
            f"family spec declares m = {data['m']} but has {spec.m} channels"
        )
    return spec


# --------------------------------------------------------------------------
# nilpotent coupling pattern


def staggered_positions(m: int):
    """Index pairs (row, col), 0-based, of the two-step nilpotent pattern:
    entries (2j-1, 2j) and (2j+1, 2j) in 1-based indexing."""
    positions = []
    for j in range(1, m // 2 + 1):
        positions.append((2 * j - 2, 2 * j - 1))
    for j in range(1, (m - 1) // 2 + 1):
        positions.append((2 * j, 2 * j - 1))
    return tuple(positions)


def is_staggered(mat) -> bool:
    """Whether a constant matrix is supported on the staggered pattern."""
    m = len(mat)
    allowed = set(staggered_positions(m))
    return all(
        mat[i][j] == 0
        for i in range(m)
        for j in range(len(mat[i]))
        if (i, j) not in allowed
    )


def nilpotent_matrix(spec: FamilySpec) -> MatrixPoly:
    """The constant coupling matrix A with A @ A = 0."""
    m = spec.m
    entries = [[ScalarPoly.zero() for _ in range(m)] for _ in range(m)]
    for k, (i, j) in enumerate(staggered_positions(m)):
        entries[i][j] = ScalarPoly.constant(spec.a[k])
    return MatrixPoly(entries)


def unipotent_factor(spec: FamilySpec) -> MatrixPoly:
    """U(x) = I + A x; its inverse is I - A x."""
    m = spec.m
    A = nilpotent_matrix(spec)
    return MatrixPoly.identity(m) + A.scale(ScalarPoly.x())


def weight_matrix(spec: FamilySpec, x: int):
    """W(x) = U(x) diag(w_i(x)) U(x)^T, exactly; zero matrix off support."""
    m = spec.m
    top = spec.support_N
    if x < 0 or (top is not None and x > top):
        return linalg.zeros(m)
    diag = tuple(
        tuple(spec.channels[i].weight(x) if i == j else Fraction(0) for j in range(m))
        for i in range(m)
    )
    u = unipotent_factor(spec).evaluate(x)
    return linalg.mat_mul(linalg.mat_mul(u, diag), linalg.transpose(u))


# --------------------------------------------------------------------------
# norm ratios and the tau probe mechanism


def mass_quotient(spec: FamilySpec, i: int, k: int):
    """Mass of channel i over mass of channel k (0-based), as a Mass."""
    return spec.channels[i].total_mass().mass / spec.channels[k].total_mass().mass


def needs_mass_probe(spec: FamilySpec) -> bool:
    """Whether any norm-ratio entry carries a non-rational mass quotient."""
    A_positions = staggered_positions(spec.m)
    return any(
        not mass_quotient(spec, j, i).is_rational for (i, j) in A_positions
    )


def _resolve_quotient(quotient: Mass, tau):
    if quotient.is_rational:
        return quotient.rational_value()
    if tau is None:
        raise ProbeError(
            "a cross-channel mass quotient is transcendental; supply tau as a "
            "rational probe value or 'numeric' for the float value"
        )
    if tau == "numeric":
        return quotient.float_value()
    return rational(tau) if not isinstance(tau, float) else tau


def norm_ratio(spec: FamilySpec, ch_num: int, n_num: int, ch_den: int, n_den: int, tau=None):
    """|p_n^(ch_num)|^2 / |p_n_den^(ch_den)|^2 with the mass quotient resolved."""
    num = squared_norm(spec.channels[ch_num], n_num)
    den = squared_norm(spec.channels[ch_den], n_den)
    quotient = num.mass / den.mass
    return num.coefficient / den.coefficient * _resolve_quotient(quotient, tau)


def _norm_ratio_matrix(spec: FamilySpec, n: int, tau=None):
    """The constant matrix |P_n|^2 A^T |P_(n-1)|^(-2) (zero for n = 0).

    Supported on the transposed staggered pattern: entry (j, i) for each
    pattern position (i, j), with value a * |p_n^(w_j)|^2 / |p_(n-1)^(w_i)|^2.
    """
    m = spec.m
    out = [[Fraction(0)] * m for _ in range(m)]
    if n == 0:
        return tuple(tuple(row) for row in out)
    for k, (i, j) in enumerate(staggered_positions(m)):
        out[j][i] = spec.a[k] * norm_ratio(spec, j, n, i, n - 1, tau)
    return tuple(tuple(row) for row in out)


# --------------------------------------------------------------------------
# the orthogonal sequence


def diagonal_polynomial(spec: FamilySpec, n: int) -> MatrixPoly:
    """diag(p_n^(w_1), ..., p_n^(w_m)); n = N+1 uses the closure extension."""
    return MatrixPoly.diagonal(
        tuple(monic_polynomial(ch, n) for ch in spec.channels)
    )


def _assemble(spec: FamilySpec, P_prev: MatrixPoly, P_n: MatrixPoly,
              P_next: MatrixPoly, theta) -> MatrixPoly:
    A = nilpotent_matrix(spec)
    x = ScalarPoly.x()
    theta_mp = MatrixPoly.from_scalar_matrix(theta)
    out = P_n + A @ P_next - theta_mp @ P_prev
    out = out - (P_n @ A).scale(x) + (theta_mp @ P_prev @ A).scale(x)
    return out


def orthogonal_polynomial(spec: FamilySpec, n: int, tau=None) -> MatrixPoly:
    """The degree-n matrix orthogonal polynomial for W.

    Built from the scalar channels as

        P_n + A P_(n+1) - R_n P_(n-1) - P_n A x + R_n P_(n-1) A x,

    where R_n = |P_n|^2 A^T |P_(n-1)|^(-2) and P_(-1) = 0.  On a finite
    support, n = N uses the degree-(N+1) closure polynomial for P_(n+1).
    Degree is exactly n and the leading coefficient is unimodular.
    """
    top = spec.support_N
    if n < 0 or (top is not None and n > top):
        limit = "" if top is None else f" <= {top}"
        raise SpecError(f"polynomial index must satisfy 0 <= n{limit}, got {n}")
    m = spec.m
    P_n = diagonal_polynomial(spec, n)
    P_next = diagonal_polynomial(spec, n + 1)
    if n == 0:
        P_prev = MatrixPoly.zeros(m)
        theta = linalg.zeros(m)
    else:
        P_prev = diagonal_polynomial(spec, n - 1)
        theta = _norm_ratio_matrix(spec, n, tau)
    return _assemble(spec, P_prev, P_n, P_next, theta)


def closure_polynomial(spec: FamilySpec, tau=None) -> MatrixPoly:
    """The degree-(N+1) companion closing the three-term recurrence at n = N.

    Uses the vanishing of the degree-(N+1) scalar norms (so the norm-ratio
    matrix is zero) and one further recurrence step for P_(N+2).
    """
    top = spec.support_N
    if top is None:
        raise SpecError("the closure companion needs a finite support")
    n = top + 1
    P_n = diagonal_polynomial(spec, n)
    x = ScalarPoly.x()
    nxt = []
    for ch in spec.channels:
        b_n, c_n = ch.recurrence_bc(n)
        p = monic_polynomial(ch, n) * ScalarPoly((-b_n, 1)) - monic_polynomial(ch, n - 1) * c_n
        nxt.append(p)
    P_next = MatrixPoly.diagonal(tuple(nxt))
    P_prev = diagonal_polynomial(spec, n - 1)
    return _assemble(spec, P_prev, P_n, P_next, linalg.zeros(spec.m))


# --------------------------------------------------------------------------
# inner products


@dataclass(frozen=True)
class GramMatrix:
    """<P, Q>_W as a constant matrix, with the evaluation mode recorded."""

    entries: tuple
    mode: str  # "exact" or "truncated"
    x_max: int | None = None
    tol: float | None = None
    tail: float | None = None

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def max_abs(self) -> float:
        return max(abs(float(v)) for row in self.entries for v in row)


def inner_product(P: MatrixPoly, Q: MatrixPoly, spec: FamilySpec, mode: str = "exact",
                  x_max: int = 400, tol: float = 1e-9, diagonal: bool = False) -> GramMatrix:
    """<P, Q> = sum_x P(x) W(x) Q(x)^T over the support.

    Exact mode needs a finite support and exact coefficients.  Truncated mode
    sums x = 0..x_max in floats and records the tail estimate (last term
    relative to the accumulated absolute sum); a tail above tolerance raises
    rather than returning a silent value.  ``diagonal=True`` replaces W by
    the uncoupled diag(w_i) weight.
    """
    if P.cols != spec.m or Q.cols != spec.m:
        raise ValueError("polynomial width does not match the family size")

    def weight_at(x):
        if diagonal:
            return tuple(
                tuple(
                    spec.channels[i].weight(x) if i == j else Fraction(0)
                    for j in range(spec.m)
                )
                for i in range(spec.m)
            )
        return weight_matrix(spec, x)

    if mode == "exact":
        if not spec.is_finite:
            raise SpecError("exact inner products need a finite support")
        total = linalg.zeros(P.rows, Q.rows)
        for x in range(spec.support_N + 1):
            term = linalg.mat_mul(
                linalg.mat_mul(P.evaluate(x), weight_at(x)),
                linalg.transpose(Q.evaluate(x)),
            )
            total = linalg.mat_add(total, term)
        return GramMatrix(entries=total, mode="exact")

    if mode != "truncated":
        raise ValueError(f"unknown inner product mode {mode!r}")

    top = spec.support_N
    stop = min(x_max, top) if top is not None else x_max
    weights = _float_weight_table(spec, stop, diagonal)
    pvals = _float_value_table(P, stop)
    qvals = _float_value_table(Q, stop)
    total = [[0.0] * Q.rows for _ in range(P.rows)]
    scale = [[0.0] * Q.rows for _ in range(P.rows)]
    last = 0.0
    for x in range(stop + 1):
        w = weights[x]
        px = pvals[x]
        qx = qvals[x]
        last = 0.0
        for i in range(P.rows):
            for j in range(Q.rows):
                term = sum(
                    px[i][r] * w[r][s] * qx[j][s]
                    for r in range(spec.m)
                    for s in range(spec.m)
                )
                total[i][j] += term
                scale[i][j] += abs(term)
                last = max(last, abs(term))
    scale_max = max(max(row) for row in scale)
    tail = last / scale_max if scale_max > 0 else 0.0
    if top is None and tail > tol:
        raise TruncationError(
            f"truncated inner product tail {tail:.3e} exceeds tolerance {tol:.1e} "
            f"at x_max = {x_max}"
        )
    return GramMatrix(
        entries=tuple(tuple(row) for row in total),
        mode="truncated",
        x_max=x_max,
        tol=tol,
        tail=tail,
    )


@lru_cache(maxsize=64)
def _float_weight_table(spec: FamilySpec, stop: int, diagonal: bool):
    """Float weight matrices at x = 0..stop (exact values rounded once)."""
    out = []
    for x in range(stop + 1):
        if diagonal:
            w = tuple(
                tuple(
                    float(spec.channels[i].weight(x)) if i == j else 0.0
                    for j in range(spec.m)
                )
                for i in range(spec.m)
            )
        else:
            w = tuple(tuple(float(v) for v in row) for row in weight_matrix(spec, x))
        out.append(w)
    return tuple(out)


@lru_cache(maxsize=512)
def _float_value_table(P: MatrixPoly, stop: int):
    """Float values of every entry at x = 0..stop, by float Horner."""
    coeffs = tuple(
        tuple(tuple(float(c) for c in e.coeffs) for e in row) for row in P.entries
    )
    out = []
    for x in range(stop + 1):
        fx = float(x)
        rows = []
        for row in coeffs:
            vals = []
            for cs in row:
                acc = 0.0
                for c in reversed(cs):
                    acc = acc * fx + c
                vals.append(acc)
            rows.append(tuple(vals))
        out.append(tuple(rows))
    return tuple(out)


def relative_gram_bound(P, Q, spec, x_max: int = 400, tol: float = 1e-9) -> float:
    """max |<P,Q>_ij| relative to the larger of the two self inner products;
    the truncated-orthogonality figure of merit."""
    g = inner_product(P, Q, spec, mode="truncated", x_max=x_max, tol=tol)
    gn = inner_product(P, P, spec, mode="truncated", x_max=x_max, tol=tol)
    gk = inner_product(Q, Q, spec, mode="truncated", x_max=x_max, tol=tol)
    denom = max(gn.max_abs(), gk.max_abs(), 1e-300)
    return g.max_abs() / denom


# --------------------------------------------------------------------------
# independent oracle: exact block Gram-Schmidt


def gram_schmidt_oracle(spec: FamilySpec, n: int) -> MatrixPoly:
    """Monic matrix orthogonal polynomial via exact block Gram-Schmidt on
    {I, I x, ..., I x^n}; finite support only."""
    if not spec.is_finite:
        raise SpecError("the Gram-Schmidt oracle needs a finite support")
    if n > spec.support_N:
        raise SpecError(
            f"only degrees up to N = {spec.support_N} are orthogonalizable"
        )
    m = spec.m
    basis = []
    for j in range(n + 1):
        candidate = MatrixPoly.diagonal((ScalarPoly.monomial(j),) * m)
        for r in basis:
            overlap = inner_product(candidate, r, spec).entries
            gram = inner_product(r, r, spec).entries
            coeff = linalg.mat_mul(overlap, linalg.mat_inverse(gram))
            candidate = candidate - MatrixPoly.from_scalar_matrix(coeff) @ r
        basis.append(candidate)
    return basis[n]
