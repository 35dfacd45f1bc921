"""Wire formats shared by the CLI and the HTTP service.

Conventions, used verbatim everywhere a value leaves the engine:

* rationals are strings "num/den" with an explicit denominator ("11/21",
  "1/1");
* Q(√2) amplitudes are {"a": "p/q", "b": "r/s"};
* numeric report fields carry both forms: {"exact": ..., "float": ...},
  and the exact form always parses back to the same value.
"""

from __future__ import annotations

import io
from fractions import Fraction

from .fock import FockPoly, number_amplitudes
from .scalars import QuadScalar, format_rational, parse_rational


def exact_float(x) -> dict:
    """Both renderings of a real scalar."""
    if isinstance(x, QuadScalar):
        try:
            return {"exact": format_rational(x.as_fraction()), "float": float(x)}
        except ValueError:
            return {"exact": x.to_json(), "float": float(x)}
    if isinstance(x, (int, Fraction)):
        return {"exact": format_rational(Fraction(x)), "float": float(x)}
    return {"exact": None, "float": float(x)}


def parse_exact(payload: dict):
    """Inverse of :func:`exact_float` for the exact half."""
    exact = payload["exact"]
    if exact is None:
        return payload["float"]
    if isinstance(exact, dict):
        return QuadScalar.from_json(exact)
    return parse_rational(exact)


def amplitude_json(c) -> dict | list:
    if isinstance(c, QuadScalar):
        return c.to_json()
    return [c.real, c.imag]


def fock_json(state: FockPoly) -> dict:
    """Monomial-basis coefficients plus the display view over |n⟩."""
    amps = number_amplitudes(state) if not state.is_zero else ()
    return {
        "monomial": {
            "coeffs": [amplitude_json(c) for c in state.coeffs],
            "basis": "monomial",
        },
        "number": {
            "normalized": [a if isinstance(a, float) else [a.real, a.imag] for a in amps],
            "basis": "number",
        },
    }


def distribution_json(dist) -> list[dict]:
    return [exact_float(p) for p in dist]


# -- tabular rendering ----------------------------------------------------------


def render_csv(headers: list[str], rows: list[list[str]]) -> str:
    import csv

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def render_markdown(headers: list[str], rows: list[list[str]]) -> str:
    out = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
    out.extend("| " + " | ".join(str(c) for c in row) + " |" for row in rows)
    return "\n".join(out) + "\n"
