"""Bosonic creation-operator algebra over the vacuum.

States are polynomials in the creation operator b† acting on |0⟩, stored
over the UNNORMALIZED monomial basis (b†)^n|0⟩ whose inner product carries
weight n! (⟨(b†)^m (b†)^n⟩ = n!·δ_mn).  Keeping states unnormalized and
dividing by squared norms only where observables are formed keeps every
amplitude inside Q(√2); the normalized number-basis rendering exists purely
for display.

Coefficients are either all :class:`~chinos.scalars.QuadScalar` (exact
backend) or all ``complex`` (float backend, for generic Bloch-angle
operators).  Mixing an exact state with a float operator coerces the result
to the float backend.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Sequence

from .scalars import INV_SQRT2, ONE, ZERO, QuadScalar

__all__ = [
    "DrawOperator",
    "FockPoly",
    "VACUUM",
    "apply_draw",
    "bloch_operator",
    "born_distribution",
    "fidelity",
    "norm_squared",
    "number_amplitudes",
    "overlap",
    "pair_state",
    "product_state",
    "reduced_operator",
]


def _check_finite(z: complex) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite amplitude {z!r}")


@dataclass(frozen=True)
class DrawOperator:
    """The one-coin draw α·I + β·b†."""

    alpha: QuadScalar | complex
    beta: QuadScalar | complex
    label: str | None = None

    def __post_init__(self) -> None:
        for coeff in (self.alpha, self.beta):
            if isinstance(coeff, complex):
                _check_finite(coeff)
        if not self.alpha and not self.beta:
            raise ValueError("draw operator must not be identically zero")


# Reduced draw set: identity, the two equal-weight superpositions, and the
# pure creation operator.  O1/O4 are the classical draws of 0 and 1 coins.
_REDUCED = {
    1: DrawOperator(ONE, ZERO, "O1"),
    2: DrawOperator(INV_SQRT2, INV_SQRT2, "O2"),
    3: DrawOperator(INV_SQRT2, -INV_SQRT2, "O3"),
    4: DrawOperator(ZERO, ONE, "O4"),
}


def reduced_operator(index: int) -> DrawOperator:
    """O1..O4 by 1-based index."""
    try:
        return _REDUCED[index]
    except KeyError:
        raise ValueError(f"draw operator index must be 1..4, got {index}") from None


def bloch_operator(theta: float, phi: float) -> DrawOperator:
    """Generic draw cos(θ/2)·I + e^{iφ}sin(θ/2)·b† (float backend).

    Any real angles are accepted; the trigonometry reduces them mod 2π.
    """
    alpha = complex(math.cos(theta / 2.0))
    beta = cmath.exp(1j * phi) * math.sin(theta / 2.0)
    return DrawOperator(alpha, beta, f"bloch({theta:.6g},{phi:.6g})")


@dataclass(frozen=True)
class FockPoly:
    """State Σ e_n (b†)^n|0⟩ as a trimmed coefficient tuple.

    The trailing coefficient is nonzero unless the state is zero (empty
    tuple).  Build through :meth:`from_coeffs`, which coerces and trims.
    """

    coeffs: tuple

    @classmethod
    def from_coeffs(cls, values: Sequence) -> "FockPoly":
        vals = list(values)
        if any(isinstance(v, (complex, float)) for v in vals):
            out = [complex(v) for v in vals]
            for z in out:
                _check_finite(z)
            while out and out[-1] == 0:
                out.pop()
        else:
            out = [v if isinstance(v, QuadScalar) else QuadScalar(v) for v in vals]
            while out and not out[-1]:
                out.pop()
        return cls(tuple(out))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Highest occupied coin number; -1 for the zero state."""
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, QuadScalar) for c in self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"({c})·(b†)^{n}|0⟩" for n, c in enumerate(self.coeffs))


VACUUM = FockPoly.from_coeffs([1])


def _scalar_zero(*states: FockPoly):
    if any(not s.is_exact for s in states):
        return complex(0)
    return ZERO


def apply_draw(op: DrawOperator, state: FockPoly) -> FockPoly:
    """Act with α + β b†: e'_n = α e_n + β e_{n-1}."""
    if state.is_zero:
        raise ValueError("cannot apply a draw operator to the zero state")
    old = state.coeffs
    n = len(old)
    out = []
    for i in range(n + 1):
        term = op.alpha * old[i] if i < n else None
        if i > 0:
            carry = op.beta * old[i - 1]
            term = carry if term is None else term + carry
        out.append(term)
    return FockPoly.from_coeffs(out)


def product_state(ops: Sequence[DrawOperator], start: FockPoly = VACUUM) -> FockPoly:
    """Apply a sequence of draws to ``start`` (the joint hand state)."""
    return reduce(lambda acc, op: apply_draw(op, acc), ops, start)


@lru_cache(maxsize=None)
def pair_state(j: int, k: int) -> FockPoly:
    """O_j O_k |0⟩ over the reduced set (exact backend)."""
    return product_state([reduced_operator(j), reduced_operator(k)])


def overlap(p: FockPoly, q: FockPoly):
    """⟨p|q⟩ = Σ conj(e_n)·f_n·n! over the monomial basis."""
    acc = None
    for n in range(min(len(p.coeffs), len(q.coeffs))):
        term = p.coeffs[n].conjugate() * q.coeffs[n] * math.factorial(n)
        acc = term if acc is None else acc + term
    if acc is None:
        return _scalar_zero(p, q)
    return acc


def _abs_sq(x):
    if isinstance(x, complex):
        return (x.conjugate() * x).real
    return x * x  # real scalar


def norm_squared(p: FockPoly):
    """⟨p|p⟩; exact QuadScalar or nonnegative float."""
    result = overlap(p, p)
    if isinstance(result, complex):
        return result.real
    return result


def born_distribution(p: FockPoly) -> tuple:
    """Measurement distribution p(n) = |e_n|² n! / ⟨p|p⟩.

    Entries sum to exactly 1 in the exact backend.
    """
    if p.is_zero:
        raise ValueError("zero state has no measurement distribution")
    weights = [_abs_sq(c) * math.factorial(n) for n, c in enumerate(p.coeffs)]
    total = reduce(lambda x, y: x + y, weights)
    return tuple(w / total for w in weights)


def fidelity(guess: FockPoly, joint: FockPoly):
    """|⟨guess|joint⟩|² normalized by both squared norms; lies in [0, 1]."""
    if guess.is_zero or joint.is_zero:
        raise ValueError("fidelity requires nonzero states")
    return _abs_sq(overlap(guess, joint)) / (norm_squared(guess) * norm_squared(joint))


def number_amplitudes(p: FockPoly) -> tuple:
    """Normalized number-basis amplitudes ⟨n|p⟩/‖p‖ for display (floats)."""
    if p.is_zero:
        raise ValueError("zero state has no normalized form")
    norm = math.sqrt(abs(complex(norm_squared(p))))
    if p.is_exact:
        return tuple(
            float(c) * math.sqrt(math.factorial(n)) / norm for n, c in enumerate(p.coeffs)
        )
    return tuple(
        c * math.sqrt(math.factorial(n)) / norm for n, c in enumerate(p.coeffs)
    )
