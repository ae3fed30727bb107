"""Verification suites: orthogonality, bispectrality, recurrence residual.

Exact checks sweep the probe grid (coupling values x mass-quotient values);
each probe instance is itself an exact rational identity check, and the grid
oversamples the identities' degrees in the formal parameters.  Infinite
supports use truncated float sums with the true transcendental quotients.

Work items fan out to a thread pool capped by the MVOP_THREADS environment
variable (default: run inline).
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from .construction import (
    FamilySpec,
    inner_product,
    needs_mass_probe,
    orthogonal_polynomial,
    relative_gram_bound,
)
from .errors import SpecError
from .operators import (
    CheckResult,
    VerificationReport,
    extract_recurrence,
    probe_grid,
    verify_eigenfunction,
)
from .poly import MatrixPoly
from .operators import _corruption  # test fixture: deliberate corruption


def pool_map(fn, items):
    """Order-preserving map over a worker pool sized by MVOP_THREADS."""
    workers = int(os.environ.get("MVOP_THREADS", "1") or "1")
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _maybe_corrupt(Q, n, m, perturb):
    if perturb and n >= 1:
        return Q + MatrixPoly.from_scalar_matrix(_corruption(m))
    return Q


def verify_orthogonality(spec: FamilySpec, n_max: int, a_probes=None,
                         tau_probes=None, x_max: int = 400, tol: float = 1e-9,
                         perturb: bool = False, force_truncated: bool = False) -> tuple:
    """Pairwise <Q_n, Q_k> = 0 checks.  Exact on finite support over the
    coupling probe grid; truncated floats (relative bound < tol) otherwise.
    ``force_truncated`` runs the float path even on a finite support."""
    checks = []
    if spec.is_finite and not force_truncated:
        from .construction import A_PROBES

        a_vals = A_PROBES if a_probes is None else tuple(a_probes)
        for a_val in a_vals:
            probe = spec.with_a((a_val,) * (spec.m - 1))
            top = min(n_max, probe.support_N)
            polys = [
                _maybe_corrupt(orthogonal_polynomial(probe, n), n, spec.m, perturb)
                for n in range(top + 1)
            ]

            def one_pair(pair, probe=probe, polys=polys, a_val=a_val):
                n, k = pair
                g = inner_product(polys[n], polys[k], probe)
                return CheckResult(
                    name="orthogonality",
                    n=n,
                    probe_a=a_val,
                    probe_tau=None,
                    passed=g.is_zero,
                    detail=f"k = {k}" + ("" if g.is_zero else f"; gram = {g.entries}"),
                )

            pairs = [(n, k) for n in range(top + 1) for k in range(n)]
            checks.extend(pool_map(one_pair, pairs))
    else:
        tau = "numeric" if needs_mass_probe(spec) else None
        top = n_max if spec.support_N is None else min(n_max, spec.support_N)
        polys = [
            _maybe_corrupt(
                orthogonal_polynomial(spec, n, tau=tau), n, spec.m, perturb
            )
            for n in range(top + 1)
        ]

        def one_pair(pair):
            n, k = pair
            bound = relative_gram_bound(polys[n], polys[k], spec, x_max=x_max, tol=tol)
            return CheckResult(
                name="orthogonality",
                n=n,
                probe_a=spec.a if len(spec.a) > 1 else spec.a[0],
                probe_tau="numeric" if tau else None,
                passed=bound < tol,
                detail=f"k = {k}; relative bound = {bound:.3e}",
            )

        pairs = [(n, k) for n in range(top + 1) for k in range(n)]
        checks.extend(pool_map(one_pair, pairs))
    return tuple(checks)


def verify_recurrence(spec: FamilySpec, n_max: int, a_probes=None,
                      tau_probes=None) -> tuple:
    """Residual of the extracted three-term recurrence over the probe grid
    (extraction itself asserts exact closure)."""
    a_vals, tau_vals = probe_grid(spec, a_probes, tau_probes)
    top = n_max if spec.support_N is None else min(n_max, spec.support_N)
    work = [
        (a_val, tau, n)
        for a_val in a_vals
        for tau in tau_vals
        for n in range(top + 1)
    ]

    def one(item):
        a_val, tau, n = item
        probe = spec.with_a((a_val,) * (spec.m - 1))
        try:
            extract_recurrence(probe, n, tau=tau)
            return CheckResult(
                name="recurrence", n=n, probe_a=a_val, probe_tau=tau, passed=True
            )
        except AssertionError as err:
            return CheckResult(
                name="recurrence",
                n=n,
                probe_a=a_val,
                probe_tau=tau,
                passed=False,
                detail=str(err),
            )

    return tuple(pool_map(one, work))


def run_verification(spec: FamilySpec, n_max: int | None = None, a_probes=None,
                     tau_probes=None, x_max: int = 400, tol: float = 1e-9,
                     perturb: bool = False, truncated: bool = False) -> VerificationReport:
    """The full suite: orthogonality, bispectrality (when the family carries
    a canonical operator), and recurrence residuals."""
    if n_max is None:
        n_max = spec.support_N if spec.is_finite else 5
    checks = list(
        verify_orthogonality(
            spec, n_max, a_probes, tau_probes, x_max=x_max, tol=tol,
            perturb=perturb, force_truncated=truncated,
        )
    )
    notes = []
    try:
        eig_report = verify_eigenfunction(
            spec, n_max=min(n_max, spec.support_N) if spec.is_finite else n_max,
            a_probes=a_probes, tau_probes=tau_probes, perturb=perturb,
        )
        checks.extend(eig_report.checks)
    except SpecError as err:
        notes.append(f"bispectral suite skipped: {err}")
    checks.extend(verify_recurrence(spec, n_max, a_probes, tau_probes))
    a_vals, tau_vals = probe_grid(spec, a_probes, tau_probes)
    return VerificationReport(
        checks=tuple(checks),
        a_probes=a_vals,
        tau_probes=tau_vals,
        notes=tuple(notes),
    )
