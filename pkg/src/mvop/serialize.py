"""JSON, LaTeX and CSV renderings of the package's values.

All output is deterministic: fixed key order, fixed iteration order, floats
via repr.  Rationals serialize as "p/q" strings ("p" for integers) and every
JSON artifact re-parses to a structurally equal object.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import SpecError
from .poly import MatrixPoly, ScalarPoly
from .rational import format_rational, rational


def json_dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


# --------------------------------------------------------------------------
# polynomials


def poly_to_json(p: ScalarPoly):
    return [format_rational(c) for c in p.coeffs]


def poly_from_json(data) -> ScalarPoly:
    return ScalarPoly(tuple(rational(c) for c in data))


def matpoly_to_json(P: MatrixPoly):
    return {
        "rows": P.rows,
        "cols": P.cols,
        "entries": [[poly_to_json(e) for e in row] for row in P.entries],
    }


def matpoly_from_json(data) -> MatrixPoly:
    entries = tuple(
        tuple(poly_from_json(e) for e in row) for row in data["entries"]
    )
    P = MatrixPoly(entries)
    if P.rows != data["rows"] or P.cols != data["cols"]:
        raise SpecError("matrix polynomial shape does not match its declaration")
    return P


def _rational_latex(c: Fraction) -> str:
    c = Fraction(c)
    sign = "-" if c < 0 else ""
    c = abs(c)
    if c.denominator == 1:
        return f"{sign}{c.numerator}"
    return f"{sign}\\frac{{{c.numerator}}}{{{c.denominator}}}"


def poly_to_latex(p: ScalarPoly) -> str:
    if p.is_zero:
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coefficient(k)
        if c == 0:
            continue
        if k == 0:
            body = _rational_latex(c)
        else:
            xpow = "x" if k == 1 else f"x^{{{k}}}"
            if c == 1:
                body = xpow
            elif c == -1:
                body = f"-{xpow}"
            else:
                body = f"{_rational_latex(c)} {xpow}"
        if terms and not body.startswith("-"):
            terms.append(f"+ {body}")
        elif terms:
            terms.append(f"- {body[1:]}")
        else:
            terms.append(body)
    return " ".join(terms)


def matpoly_to_latex(P: MatrixPoly) -> str:
    rows = " \\\\\n  ".join(
        " & ".join(poly_to_latex(e) for e in row) for row in P.entries
    )
    return "\\begin{pmatrix}\n  " + rows + "\n\\end{pmatrix}"


# --------------------------------------------------------------------------
# operators


def operator_to_json(D):
    return {
        "action": "P.D = Delta(P) F + P K + Nabla(P) G",
        "F": matpoly_to_json(D.F),
        "K": matpoly_to_json(D.K),
        "G": matpoly_to_json(D.G),
    }


def operator_from_json(data):
    from .operators import DifferenceOperator

    return DifferenceOperator(
        F=matpoly_from_json(data["F"]),
        K=matpoly_from_json(data["K"]),
        G=matpoly_from_json(data["G"]),
    )


def operator_to_latex(D) -> str:
    # displayed in the Delta F + K - Nabla G convention
    return (
        "D = \\Delta "
        + matpoly_to_latex(D.F)
        + "\n+ "
        + matpoly_to_latex(D.K)
        + "\n- \\nabla "
        + matpoly_to_latex(-D.G)
    )


# --------------------------------------------------------------------------
# reports


def convergence_to_json(report):
    return {
        "transition": report.name,
        "n": report.n,
        "a": format_rational(report.a),
        "precision": report.precision,
        "monotone": report.monotone,
        "steps": [s.to_json() for s in report.steps],
        "target": matpoly_to_json_or_float(report.target),
    }


def matpoly_to_json_or_float(P: MatrixPoly):
    try:
        return matpoly_to_json(P)
    except (TypeError, ValueError):
        return {
            "rows": P.rows,
            "cols": P.cols,
            "entries": [
                [[repr(float(c)) for c in e.coeffs] for e in row] for row in P.entries
            ],
        }


def convergence_to_csv(report) -> str:
    extras = sorted({k for s in report.steps for k, _ in s.extras})
    header = ["ladder", "max_abs_error", "rel_error"] + extras
    lines = [",".join(header)]
    for s in report.steps:
        extra_map = dict(s.extras)
        row = [
            format_rational(s.ladder_value),
            repr(s.max_abs_error),
            repr(s.rel_error),
        ] + [repr(extra_map[k]) if k in extra_map else "" for k in extras]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
