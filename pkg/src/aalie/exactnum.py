"""Exact scalar tower: rationals, Gaussian rationals, and their 2*pi*i extension.

Every exact coordinate in this package lives in the module

    Q(i) + Q(i)*tau,        tau := 2*pi*i.

pi is transcendental over Q(i), so the representation is unique and zero
tests are exact.  The module is closed under addition and Q(i)-scaling;
products and quotients are only partially defined (``try_mul``/``try_div``
return ``None`` when the result would leave the module -- callers fall
back to floating point in that case).

Rationals are plain ``fractions.Fraction`` values, which already enforce
the canonical form (positive denominator, reduced).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import ParseError

Rational = Fraction

RationalLike = Union[int, str, Fraction]

_TWO_PI = 2.0 * math.pi


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


# ---------------------------------------------------------------------------
# tolerance configuration
# ---------------------------------------------------------------------------

_DEFAULT_TOL = 1e-9


def _initial_tolerance() -> float:
    raw = os.environ.get("AALIE_TOL")
    if raw:
        try:
            return float(raw)
        except ValueError:
            pass
    return _DEFAULT_TOL


_tolerance = _initial_tolerance()


def default_tolerance() -> float:
    """Global tolerance for all approximate comparisons."""
    return _tolerance


def set_default_tolerance(tol: float) -> None:
    global _tolerance
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    _tolerance = tol


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianRational:
    """An element of Q(i), the field hosting all eigenvalue data."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        other = coerce_gaussian(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        other = coerce_gaussian(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other) -> "GaussianRational":
        other = coerce_gaussian(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = coerce_gaussian(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def inverse(self) -> "GaussianRational":
        return ONE_G / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    # -- conversions --------------------------------------------------------

    def as_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        return f"{self.re}{'+' if self.im >= 0 else ''}{self.im}i"


ZERO_G = GaussianRational()
ONE_G = GaussianRational(Fraction(1))
I_G = GaussianRational(Fraction(0), Fraction(1))

GaussianLike = Union[GaussianRational, int, str, Fraction]


def coerce_gaussian(value: GaussianLike) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational(as_rational(value))


def gaussian(re: RationalLike = 0, im: RationalLike = 0) -> GaussianRational:
    return GaussianRational(as_rational(re), as_rational(im))


# ---------------------------------------------------------------------------
# the 2*pi*i module
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactScalar:
    """Value ``alg + 2*pi*i * tau`` with ``alg, tau`` in Q(i).

    Closed under addition, negation and Q(i)-scaling.  ``try_mul`` and
    ``try_div`` perform the partial products/quotients that stay inside the
    module and return ``None`` otherwise.
    """

    alg: GaussianRational = ZERO_G
    tau: GaussianRational = ZERO_G

    def __post_init__(self):
        if not isinstance(self.alg, GaussianRational):
            object.__setattr__(self, "alg", coerce_gaussian(self.alg))
        if not isinstance(self.tau, GaussianRational):
            object.__setattr__(self, "tau", coerce_gaussian(self.tau))

    # -- module arithmetic ----------------------------------------------------

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        return ExactScalar(self.alg + other.alg, self.tau + other.tau)

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        return ExactScalar(self.alg - other.alg, self.tau - other.tau)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.alg, -self.tau)

    def scale(self, c: GaussianLike) -> "ExactScalar":
        c = coerce_gaussian(c)
        return ExactScalar(self.alg * c, self.tau * c)

    def try_mul(self, other: "ExactScalar") -> Optional["ExactScalar"]:
        # (a + tau*b)(c + tau*d) = ac + tau(ad + bc) + tau^2 * bd;
        # the tau^2 term leaves the module unless b*d = 0.
        if not (self.tau * other.tau).is_zero():
            return None
        return ExactScalar(
            self.alg * other.alg,
            self.alg * other.tau + self.tau * other.alg,
        )

    def try_div(self, other: "ExactScalar") -> Optional["ExactScalar"]:
        if other.is_zero():
            raise ZeroDivisionError("division by exact zero")
        if other.tau.is_zero():
            inv = other.alg.inverse()
            return ExactScalar(self.alg * inv, self.tau * inv)
        if other.alg.is_zero():
            if self.alg.is_zero():
                return ExactScalar(self.tau / other.tau, ZERO_G)
            return None
        # mixed denominator: representable only when self = k * other, k in Q(i)
        if self.alg * other.tau == self.tau * other.alg:
            return ExactScalar(self.alg / other.alg, ZERO_G)
        return None

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.alg.is_zero() and self.tau.is_zero()

    # -- evaluation -----------------------------------------------------------

    def evaluate(self) -> complex:
        """Double-precision value; relative error within a few ulp."""
        a = self.alg.as_complex()
        t = self.tau.as_complex()
        return a + complex(-_TWO_PI * t.imag, _TWO_PI * t.real)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Coordinates in the Q-basis (1, i, 2*pi*i, -2*pi)."""
        return (self.alg.re, self.alg.im, self.tau.re, self.tau.im)

    def __str__(self) -> str:
        return f"({self.alg}) + 2pi*i*({self.im_tau_str()})"

    def im_tau_str(self) -> str:
        return str(self.tau)


ZERO = ExactScalar()
ONE = ExactScalar(ONE_G)
# 2*pi = 2*pi*i * (-i)   and   pi = 2*pi*i * (-i/2)
TWO_PI = ExactScalar(ZERO_G, GaussianRational(Fraction(0), Fraction(-1)))
PI = ExactScalar(ZERO_G, GaussianRational(Fraction(0), Fraction(-1, 2)))

ScalarLike = Union[ExactScalar, GaussianRational, int, str, Fraction]


def scalar(value: ScalarLike) -> ExactScalar:
    """Coerce an algebraic value into the exact module."""
    if isinstance(value, ExactScalar):
        return value
    return ExactScalar(coerce_gaussian(value), ZERO_G)


def tau_multiple(q: GaussianLike) -> ExactScalar:
    """The value 2*pi*i*q."""
    return ExactScalar(ZERO_G, coerce_gaussian(q))


# ---------------------------------------------------------------------------
# exact vectors (plain tuples of ExactScalar)
# ---------------------------------------------------------------------------

ExactVector = tuple[ExactScalar, ...]


def vector(values: Iterable[ScalarLike]) -> ExactVector:
    return tuple(scalar(v) for v in values)


def zero_vector(d: int) -> ExactVector:
    return tuple(ZERO for _ in range(d))


def basis_vector(d: int, j: int) -> ExactVector:
    return tuple(ONE if k == j else ZERO for k in range(d))


def vec_add(a: ExactVector, b: ExactVector) -> ExactVector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: ExactVector, b: ExactVector) -> ExactVector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_neg(a: ExactVector) -> ExactVector:
    return tuple(-x for x in a)


def vec_scale(a: ExactVector, c: GaussianLike) -> ExactVector:
    c = coerce_gaussian(c)
    return tuple(x.scale(c) for x in a)


def vec_is_zero(a: ExactVector) -> bool:
    return all(x.is_zero() for x in a)


def vec_eval(a: ExactVector) -> list[complex]:
    return [x.evaluate() for x in a]


# ---------------------------------------------------------------------------
# text encodings (shared by scenario files and reports)
# ---------------------------------------------------------------------------


def parse_rational(text, path: str = "") -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(path, f"expected a rational string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(path, f"bad rational {text!r}: {exc}") from None


def encode_rational(q: Fraction) -> str:
    return str(q)


def parse_gaussian(obj, path: str = "") -> GaussianRational:
    if not isinstance(obj, dict):
        raise ParseError(path, f"expected an object with re/im, got {obj!r}")
    unknown = set(obj) - {"re", "im"}
    if unknown:
        raise ParseError(path, f"unknown fields {sorted(unknown)}")
    re = parse_rational(obj.get("re", "0"), f"{path}.re")
    im = parse_rational(obj.get("im", "0"), f"{path}.im")
    return GaussianRational(re, im)


def encode_gaussian(g: GaussianRational) -> dict:
    return {"re": encode_rational(g.re), "im": encode_rational(g.im)}


def parse_exact_scalar(obj, path: str = "") -> ExactScalar:
    if not isinstance(obj, dict):
        raise ParseError(path, f"expected an object with alg/tau, got {obj!r}")
    unknown = set(obj) - {"alg", "tau"}
    if unknown:
        raise ParseError(path, f"unknown fields {sorted(unknown)}")
    alg = parse_gaussian(obj.get("alg", {"re": "0", "im": "0"}), f"{path}.alg")
    tau = parse_gaussian(obj.get("tau", {"re": "0", "im": "0"}), f"{path}.tau")
    return ExactScalar(alg, tau)


def encode_exact_scalar(s: ExactScalar) -> dict:
    return {"alg": encode_gaussian(s.alg), "tau": encode_gaussian(s.tau)}
