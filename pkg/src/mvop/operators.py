"""Second-order matrix difference operators and three-term recurrences.

A ``DifferenceOperator`` is a triple (F, K, G) of matrix polynomials acting
on the right of a matrix polynomial P as

    P . D = Delta(P) F + P K + Nabla(P) G,

with Delta(f) = f(x+1) - f(x) and Nabla(f) = f(x) - f(x-1).  The scalar
channel operators are written Delta f + k - nabla g, so they embed with
G = -g on the diagonal.

``conjugated_operator`` implements the closed-form conjugation of a diagonal
operator by the unipotent factor U(x) = I + A x, and ``canonical_operator``
builds the per-family normalized operator whose eigenvalues interlace across
odd and even channels.  ``extract_recurrence`` recovers the three-term
recurrence matrices by exact coefficient matching, with no inner products.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .construction import (
    A_PROBES,
    TAU_PROBES,
    FamilySpec,
    closure_polynomial,
    needs_mass_probe,
    nilpotent_matrix,
    orthogonal_polynomial,
)
from .errors import SpecError
from .families import Charlier, Hahn, Krawtchouk, Meixner, ScalarOperator
from .poly import MatrixPoly, ScalarPoly


@dataclass(frozen=True)
class DifferenceOperator:
    """D = Delta . F(x) + K(x) + Nabla . G(x), acting on the right."""

    F: MatrixPoly
    K: MatrixPoly
    G: MatrixPoly

    def apply(self, P: MatrixPoly) -> MatrixPoly:
        if P.cols != self.F.rows:
            raise ValueError(
                f"dimension mismatch: polynomial is {P.rows}x{P.cols}, "
                f"operator acts on width {self.F.rows}"
            )
        return P.delta() @ self.F + P @ self.K + P.nabla() @ self.G


def apply_operator(P: MatrixPoly, D: DifferenceOperator) -> MatrixPoly:
    return D.apply(P)


@dataclass(frozen=True)
class EigenvalueMap:
    """n -> diagonal eigenvalue matrix, one exact closed form per channel."""

    channel_eigenvalues: tuple  # of Callable[[int], Fraction]

    def diagonal(self, n: int):
        return tuple(fn(n) for fn in self.channel_eigenvalues)

    def matrix(self, n: int) -> MatrixPoly:
        return MatrixPoly.diagonal(
            tuple(ScalarPoly.constant(v) for v in self.diagonal(n))
        )


@dataclass(frozen=True)
class RecurrenceTriple:
    """Constant matrices with Q_n x = A_n Q_(n+1) + B_n Q_n + C_n Q_(n-1)."""

    A: tuple
    B: tuple
    C: tuple


def _commutator(A: MatrixPoly, M: MatrixPoly) -> MatrixPoly:
    return A @ M - M @ A


def conjugated_operator(A: MatrixPoly, F: MatrixPoly, K: MatrixPoly,
                        G: MatrixPoly) -> DifferenceOperator:
    """Conjugate the diagonal operator diag(Delta f_i + k_i - nabla g_i) by
    the unipotent factor I + A x, in closed form:

        D = Delta((I+A) F + [A,F] x) + A (F - G) + K + [A,K] x
            - Nabla((I-A) G + [A,G] x).

    F, K, G are the diagonal matrix polynomials of the f_i, k_i, g_i.
    """
    m = A.rows
    ident = MatrixPoly.identity(m)
    x = ScalarPoly.x()
    F_hat = (ident + A) @ F + _commutator(A, F).scale(x)
    K_hat = A @ (F - G) + K + _commutator(A, K).scale(x)
    G_hat = (ident - A) @ G + _commutator(A, G).scale(x)
    return DifferenceOperator(F=F_hat, K=K_hat, G=-G_hat)


def _normalized_channel(ch, position: int) -> tuple[ScalarOperator, object]:
    """Channel operator scaled so the eigenvalue is n, then shifted by +1 on
    odd (1-based) channels so eigenvalues interlace across the coupling."""
    odd = position % 2 == 1
    shift = Fraction(1) if odd else Fraction(0)
    if isinstance(ch, Charlier):
        f, g = ScalarPoly.constant(-ch.b), -ScalarPoly.x()
    elif isinstance(ch, Krawtchouk):
        f = ScalarPoly((-ch.p * ch.N, ch.p))
        g = ScalarPoly((Fraction(0), -(1 - ch.p)))
    elif isinstance(ch, Meixner):
        scale = 1 / (ch.c - 1)
        f = ScalarPoly((ch.c * ch.beta, ch.c)) * scale
        g = ScalarPoly.x() * scale
    else:
        raise SpecError(f"no normalized operator for channel kind {ch.kind!r}")
    op = ScalarOperator(
        f=f,
        k=ScalarPoly.constant(shift),
        g=g,
        eigenvalue=lambda n, s=shift: Fraction(n) + s,
    )
    return op, op.eigenvalue


def _hahn_channel(ch: Hahn, position: int, base_sum: Fraction) -> tuple[ScalarOperator, object]:
    base = ch.operator()
    odd = position % 2 == 1
    shift = Fraction(0) if odd else -base_sum
    op = ScalarOperator(
        f=base.f,
        k=ScalarPoly.constant(shift),
        g=base.g,
        eigenvalue=lambda n, b=base.eigenvalue, s=shift: b(n) + s,
    )
    return op, op.eigenvalue


def _channel_operators(spec: FamilySpec, force: bool):
    kinds = {type(ch) for ch in spec.channels}
    if Hahn in kinds and kinds != {Hahn}:
        raise SpecError(
            "hahn channels cannot be mixed with other kinds: the eigenvalues "
            "admit no common normalization"
        )
    if kinds == {Hahn}:
        if not force:
            sums = [ch.alpha + ch.beta for ch in spec.channels]
            for i in range(spec.m):
                for j in range(spec.m):
                    if i % 2 == 0 and j % 2 == 1:  # odd/even in 1-based indexing
                        if sums[i] != sums[j] + 2:
                            raise SpecError(
                                "hahn channels must satisfy alpha_i + beta_i = "
                                "alpha_j + beta_j + 2 for odd i, even j; violated "
                                f"by channels ({i + 1}, {j + 1}): "
                                f"{sums[i]} != {sums[j]} + 2"
                            )
        base_sum = spec.channels[0].alpha + spec.channels[0].beta
        return [
            _hahn_channel(ch, pos + 1, base_sum)
            for pos, ch in enumerate(spec.channels)
        ]
    return [_normalized_channel(ch, pos + 1) for pos, ch in enumerate(spec.channels)]


def canonical_operator(spec: FamilySpec, force: bool = False):
    """The family's normalized difference operator and its eigenvalue map.

    Charlier, Meixner, Krawtchouk and mixed Charlier/Meixner channels are
    each normalized to eigenvalue n and shifted by +1 on odd channels, so the
    eigenvalue matrix alternates diag(n+1, n, n+1, ...).  Hahn channels keep
    their quadratic eigenvalue n(n + alpha_i + beta_i + 1), with the constant
    alpha_1 + beta_1 subtracted on even channels; this interlaces exactly
    when alpha_i + beta_i = alpha_j + beta_j + 2 for all odd i, even j.

    ``force=True`` skips the Hahn parameter gate (negative-control use only).
    """
    pairs = _channel_operators(spec, force)
    ops = [p[0] for p in pairs]
    F = MatrixPoly.diagonal(tuple(op.f for op in ops))
    K = MatrixPoly.diagonal(tuple(op.k for op in ops))
    G = MatrixPoly.diagonal(tuple(op.g for op in ops))
    A = nilpotent_matrix(spec)
    D = conjugated_operator(A, F, K, G)
    eig = EigenvalueMap(channel_eigenvalues=tuple(p[1] for p in pairs))
    return D, eig


def diagonal_operator(spec: FamilySpec, force: bool = False) -> DifferenceOperator:
    """The uncoupled diag(delta_i) companion of ``canonical_operator``,
    in the same normalization (eigenvalues interlaced)."""
    ops = [p[0] for p in _channel_operators(spec, force)]
    return DifferenceOperator(
        F=MatrixPoly.diagonal(tuple(op.f for op in ops)),
        K=MatrixPoly.diagonal(tuple(op.k for op in ops)),
        G=MatrixPoly.diagonal(tuple(-op.g for op in ops)),
    )


# --------------------------------------------------------------------------
# three-term recurrence extraction


def _const(matrix_rows) -> MatrixPoly:
    return MatrixPoly.from_scalar_matrix(matrix_rows)


def extract_recurrence(spec: FamilySpec, n: int, tau=None) -> RecurrenceTriple:
    """Solve Q_n x = A_n Q_(n+1) + B_n Q_n + C_n Q_(n-1) by exact coefficient
    matching (unique because leading coefficients are invertible).

    On a finite support, n = N closes through the degree-(N+1) companion
    built from the vanishing-norm extension.
    """
    if n < 0:
        raise SpecError(f"recurrence index must be >= 0, got {n}")
    top = spec.support_N
    if top is not None and n > top:
        raise SpecError(f"recurrence index must be <= N = {top}, got {n}")
    tau_arg = tau if needs_mass_probe(spec) else None
    Q_n = orthogonal_polynomial(spec, n, tau=tau_arg)
    if top is not None and n == top:
        Q_next = closure_polynomial(spec, tau=tau_arg)
    else:
        Q_next = orthogonal_polynomial(spec, n + 1, tau=tau_arg)
    Q_prev = orthogonal_polynomial(spec, n - 1, tau=tau_arg) if n >= 1 else None

    target = Q_n.scale(ScalarPoly.x())
    lead_next = linalg.mat_inverse(Q_next.coefficient(n + 1))
    A_n = linalg.mat_mul(target.coefficient(n + 1), lead_next)
    rem = target - _const(A_n) @ Q_next

    lead_n = linalg.mat_inverse(Q_n.coefficient(n))
    B_n = linalg.mat_mul(rem.coefficient(n), lead_n)
    rem = rem - _const(B_n) @ Q_n

    if n == 0:
        C_n = linalg.zeros(spec.m)
    else:
        lead_prev = linalg.mat_inverse(Q_prev.coefficient(n - 1))
        C_n = linalg.mat_mul(rem.coefficient(n - 1), lead_prev)
        rem = rem - _const(C_n) @ Q_prev
    if not rem.is_zero:
        raise AssertionError(
            f"three-term recurrence failed to close at n = {n} for {spec!r}"
        )
    return RecurrenceTriple(A=A_n, B=B_n, C=C_n)


# --------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class CheckResult:
    name: str
    n: int
    probe_a: object
    probe_tau: object
    passed: bool
    detail: str = ""

    def to_json(self):
        return {
            "check": self.name,
            "n": self.n,
            "a": None if self.probe_a is None else str(self.probe_a),
            "tau": None if self.probe_tau is None else str(self.probe_tau),
            "pass": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple
    a_probes: tuple
    tau_probes: tuple
    notes: tuple = ()

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return tuple(c for c in self.checks if not c.passed)

    def to_json(self):
        return {
            "probe_grid": {
                "a": [str(v) for v in self.a_probes],
                "tau": [str(v) for v in self.tau_probes],
            },
            "pass": self.all_passed,
            "notes": list(self.notes),
            "checks": [c.to_json() for c in self.checks],
        }


def _corruption(m: int):
    """A constant bump on entry (1,1): the deliberate-perturbation fixture."""
    return tuple(
        tuple(Fraction(1) if (i, j) == (0, 0) else Fraction(0) for j in range(m))
        for i in range(m)
    )


def _first_nonzero(P: MatrixPoly) -> str:
    for i, row in enumerate(P.entries):
        for j, e in enumerate(row):
            if not e.is_zero:
                return f"entry ({i + 1},{j + 1}) = {e!r}"
    return ""


def probe_grid(spec: FamilySpec, a_probes=None, tau_probes=None):
    """The (a, tau) pairs identity checks sweep.  tau collapses to (None,)
    when every mass quotient in the family is rational."""
    a_probes = A_PROBES if a_probes is None else tuple(a_probes)
    if needs_mass_probe(spec):
        taus = TAU_PROBES if tau_probes is None else tuple(tau_probes)
    else:
        taus = (None,)
    return a_probes, taus


def verify_eigenfunction(spec: FamilySpec, n_max: int, a_probes=None,
                         tau_probes=None, operator=None, force: bool = False,
                         perturb: bool = False) -> VerificationReport:
    """Check Q_n . D - Lambda_n Q_n = 0 identically over the probe grid.

    By default the canonical operator is rebuilt for each probe value of the
    coupling constant (the operator depends on it); passing ``operator`` as a
    prebuilt (D, eigenvalue_map) pair restricts the sweep to the spec's own
    coupling values.  Failures are recorded per (n, probe) with the first
    nonzero entry; nothing raises.
    """
    a_vals, tau_vals = probe_grid(spec, a_probes, tau_probes)
    if operator is not None:
        a_vals = (None,)
    checks = []
    for a_val in a_vals:
        probe_spec = spec if a_val is None else spec.with_a((a_val,) * (spec.m - 1))
        if operator is None:
            D, eig = canonical_operator(probe_spec, force=force)
        else:
            D, eig = operator
        for tau in tau_vals:
            for n in range(n_max + 1):
                Q = orthogonal_polynomial(probe_spec, n, tau=tau)
                if perturb and n >= 1:
                    Q = Q + MatrixPoly.from_scalar_matrix(_corruption(spec.m))
                residual = D.apply(Q) - eig.matrix(n) @ Q
                ok = residual.is_zero
                checks.append(
                    CheckResult(
                        name="eigenfunction",
                        n=n,
                        probe_a=a_val if a_val is not None else spec.a,
                        probe_tau=tau,
                        passed=ok,
                        detail="" if ok else _first_nonzero(residual),
                    )
                )
    return VerificationReport(
        checks=tuple(checks),
        a_probes=tuple(a_vals),
        tau_probes=tuple(t for t in tau_vals),
    )
