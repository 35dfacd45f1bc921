"""Exact scalar arithmetic: rationals and the real quadratic field Q(√2).

Every product of the reduced draw operators and every factorial-weighted
inner product closes under Q(√2), so probabilities and payoffs reported by
the engine are exact, equality-testable values.  Python integers are
arbitrary precision, so overflow cannot occur and is never wrapped.

Generic Bloch-angle operators have cos/sin amplitudes outside any fixed
number field; they use the builtin ``complex`` as the floating mirror.
Both backends expose the same scalar protocol: ``+``, ``*``,
``conjugate()``, truthiness as the zero test, and ``complex()`` /
``float()`` conversion.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

Rational = Fraction


def format_rational(x: Fraction | int) -> str:
    """Render with an explicit denominator: "11/21", "1/1"."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse the "num/den" wire form (also accepts a bare integer)."""
    return Fraction(text.strip())


class QuadScalar:
    """Exact real number a + b·√2 with rational components.

    The representation is canonical: Fraction keeps each component in
    lowest terms with positive denominator, and √2 is irrational, so
    equality and the zero test are componentwise.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, a: Fraction | int | str = 0, b: Fraction | int | str = 0) -> None:
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    # -- protocol ---------------------------------------------------------

    def conjugate(self) -> "QuadScalar":
        """Complex conjugate; the field is real, so this is the identity."""
        return self

    def __bool__(self) -> bool:
        return bool(self._a) or bool(self._b)

    def as_fraction(self) -> Fraction:
        """The value as a plain rational; raises if the √2 part is nonzero."""
        if self._b:
            raise ValueError(f"{self} is irrational; no rational representation")
        return self._a

    # -- ring/field arithmetic --------------------------------------------

    @classmethod
    def _coerce(cls, other) -> "QuadScalar | None":
        if isinstance(other, QuadScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is not None:
            return QuadScalar(self._a + o._a, self._b + o._b)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is not None:
            return QuadScalar(self._a - o._a, self._b - o._b)
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> "QuadScalar":
        return QuadScalar(-self._a, -self._b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is not None:
            return QuadScalar(
                self._a * o._a + 2 * self._b * o._b,
                self._a * o._b + self._b * o._a,
            )
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def _inverse(self) -> "QuadScalar":
        # (a + b sqrt2)^-1 = (a - b sqrt2) / (a^2 - 2 b^2); the norm is
        # nonzero for any nonzero element because sqrt2 is irrational.
        norm = self._a * self._a - 2 * self._b * self._b
        if not norm:
            raise ZeroDivisionError("division by zero in Q(√2)")
        return QuadScalar(self._a / norm, -self._b / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is not None:
            return self * o._inverse()
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is not None:
            return o * self._inverse()
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, exponent: int) -> "QuadScalar":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self._inverse() ** (-exponent)
        result = QuadScalar(1)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __hash__(self) -> int:
        # Rational values must hash like Fraction so mixed-key dicts work.
        if not self._b:
            return hash(self._a)
        return hash((self._a, self._b))

    def sign(self) -> int:
        """Exact sign (-1, 0, +1), never via floats."""
        a, b = self._a, self._b
        if not b:
            return (a > 0) - (a < 0)
        if not a:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Opposite signs: compare |a| with |b|sqrt2 via squares.  a^2 = 2b^2
        # is impossible for nonzero rationals (sqrt2 irrational).
        bigger_rational = a * a > 2 * b * b
        if a > 0:
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot order QuadScalar against {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- conversion ---------------------------------------------------------

    def __float__(self) -> float:
        """Correctly rounded conversion (error strictly below 1 ulp).

        Brackets sqrt2 by dyadic rationals n/2^k <= sqrt2 < (n+1)/2^k and
        widens k until both interval endpoints round to the same float, so
        catastrophic cancellation between a and b*sqrt2 cannot inflate the
        relative error.
        """
        if not self._b:
            return float(self._a)
        bits = 64
        while True:
            n = isqrt(2 << (2 * bits))
            lo = self._a + self._b * Fraction(n, 1 << bits)
            hi = self._a + self._b * Fraction(n + 1, 1 << bits)
            if self._b < 0:
                lo, hi = hi, lo
            f_lo, f_hi = float(lo), float(hi)
            if f_lo == f_hi:
                return f_lo
            bits *= 2

    def __complex__(self) -> complex:
        return complex(float(self), 0.0)

    # -- rendering ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"QuadScalar({self._a}, {self._b})"

    def __str__(self) -> str:
        if not self._b:
            return str(self._a)
        root = "√2" if abs(self._b) == 1 else f"{abs(self._b)}·√2"
        if not self._a:
            return root if self._b > 0 else f"-{root}"
        sign = "+" if self._b > 0 else "-"
        return f"{self._a}{sign}{root}"

    def to_json(self) -> dict:
        return {"a": format_rational(self._a), "b": format_rational(self._b)}

    @classmethod
    def from_json(cls, payload: dict) -> "QuadScalar":
        return cls(parse_rational(payload["a"]), parse_rational(payload["b"]))


ZERO = QuadScalar(0)
ONE = QuadScalar(1)
SQRT2 = QuadScalar(0, 1)
INV_SQRT2 = QuadScalar(0, Fraction(1, 2))


def as_float(x) -> float:
    """Float view of any real scalar the engine produces."""
    if isinstance(x, QuadScalar):
        return float(x)
    if isinstance(x, complex):
        return x.real
    return float(x)
