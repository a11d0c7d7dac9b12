"""Exact linear algebra over Q(i)(pi).

pi is transcendental over Q(i), so Q(i)[pi] is an honest univariate
polynomial ring and its fraction field embeds in C.  Ranks, spans and
null spaces computed over this field agree with the corresponding
computations over C whenever all matrix entries lie in the field, which
is what makes discreteness and membership decisions in this package
exact rather than tolerance-based.

``PiPoly`` is a polynomial in pi with Gaussian-rational coefficients;
``PiRat`` is a quotient of two such polynomials in canonical form (monic
denominator, coprime).  Exact scalars embed via
``alg + 2*pi*i*tau = alg + (2i*tau)*pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import (
    ExactScalar,
    GaussianRational,
    ZERO_G,
    ONE_G,
    coerce_gaussian,
    GaussianRational as GR,
)

_I2 = GaussianRational(Fraction(0), Fraction(2))  # 2i
_NEG_HALF_I = GaussianRational(Fraction(0), Fraction(-1, 2))  # -i/2


def _trim(coeffs: tuple[GaussianRational, ...]) -> tuple[GaussianRational, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1].is_zero():
        n -= 1
    return coeffs[:n]


@dataclass(frozen=True)
class PiPoly:
    """Polynomial in pi over Q(i); the empty tuple is the zero polynomial."""

    coeffs: tuple[GaussianRational, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(tuple(self.coeffs)))

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def const(c) -> "PiPoly":
        return PiPoly((coerce_gaussian(c),))

    @staticmethod
    def from_exact(s: ExactScalar) -> "PiPoly":
        return PiPoly((s.alg, s.tau * _I2))

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "PiPoly") -> "PiPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return PiPoly(tuple(out))

    def __sub__(self, other: "PiPoly") -> "PiPoly":
        return self + (-other)

    def __neg__(self) -> "PiPoly":
        return PiPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "PiPoly") -> "PiPoly":
        if not self.coeffs or not other.coeffs:
            return PiPoly()
        out = [ZERO_G] * (len(self.coeffs) + len(other.coeffs) - 1)
        for j, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for k, b in enumerate(other.coeffs):
                out[j + k] = out[j + k] + a * b
        return PiPoly(tuple(out))

    def scale(self, c) -> "PiPoly":
        c = coerce_gaussian(c)
        return PiPoly(tuple(a * c for a in self.coeffs))

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def leading(self) -> GaussianRational:
        return self.coeffs[-1]

    def monic(self) -> "PiPoly":
        if self.is_zero():
            return self
        return self.scale(self.leading().inverse())

    def coefficient(self, k: int) -> GaussianRational:
        return self.coeffs[k] if k < len(self.coeffs) else ZERO_G

    # -- Euclidean structure ----------------------------------------------

    def divmod(self, other: "PiPoly") -> tuple["PiPoly", "PiPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [ZERO_G] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        rem = list(self.coeffs)
        dlead = other.leading()
        dn = len(other.coeffs)
        while len(rem) >= dn and any(not c.is_zero() for c in rem):
            while rem and rem[-1].is_zero():
                rem.pop()
            if len(rem) < dn:
                break
            f = rem[-1] / dlead
            shift = len(rem) - dn
            q[shift] = f
            for k, c in enumerate(other.coeffs):
                rem[shift + k] = rem[shift + k] - f * c
            rem.pop()
        return PiPoly(tuple(q)), PiPoly(tuple(rem))

    def gcd(self, other: "PiPoly") -> "PiPoly":
        a, b = self, other
        while not b.is_zero():
            _, r = a.divmod(b)
            a, b = b, r
        return a.monic() if not a.is_zero() else a

    # -- conversions ------------------------------------------------------

    def to_exact(self) -> Optional[ExactScalar]:
        """Back to the 2*pi*i module, when the degree permits."""
        if self.degree > 1:
            return None
        return ExactScalar(self.coefficient(0), self.coefficient(1) * _NEG_HALF_I)

    def evaluate(self, pi_value: complex = math.pi) -> complex:
        out = 0j
        for c in reversed(self.coeffs):
            out = out * pi_value + c.as_complex()
        return out


P_ZERO = PiPoly()
P_ONE = PiPoly.const(1)


@dataclass(frozen=True)
class PiRat:
    """Element of the fraction field Q(i)(pi), in canonical form."""

    num: PiPoly = P_ZERO
    den: PiPoly = P_ONE

    @staticmethod
    def make(num: PiPoly, den: PiPoly) -> "PiRat":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(i)(pi)")
        if num.is_zero():
            return PiRat(P_ZERO, P_ONE)
        g = num.gcd(den)
        if g.degree > 0:
            num, _ = num.divmod(g)
            den, _ = den.divmod(g)
        lead = den.leading()
        if lead != ONE_G:
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        return PiRat(num, den)

    @staticmethod
    def const(c) -> "PiRat":
        return PiRat(PiPoly.const(c), P_ONE)

    @staticmethod
    def from_poly(p: PiPoly) -> "PiRat":
        return PiRat.make(p, P_ONE)

    @staticmethod
    def from_exact(s: ExactScalar) -> "PiRat":
        return PiRat(PiPoly.from_exact(s), P_ONE)

    # -- field operations ---------------------------------------------------

    def __add__(self, other: "PiRat") -> "PiRat":
        return PiRat.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "PiRat") -> "PiRat":
        return PiRat.make(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "PiRat":
        return PiRat(-self.num, self.den)

    def __mul__(self, other: "PiRat") -> "PiRat":
        return PiRat.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "PiRat") -> "PiRat":
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(i)(pi)")
        return PiRat.make(self.num * other.den, self.den * other.num)

    def inverse(self) -> "PiRat":
        return R_ONE / self

    def scale(self, c) -> "PiRat":
        return PiRat.make(self.num.scale(c), self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def to_exact(self) -> Optional[ExactScalar]:
        if self.den.degree != 0:
            return None
        return self.num.scale(self.den.coefficient(0).inverse()).to_exact()

    def evaluate(self, pi_value: complex = math.pi) -> complex:
        return self.num.evaluate(pi_value) / self.den.evaluate(pi_value)


R_ZERO = PiRat()
R_ONE = PiRat.const(1)

FieldVector = tuple[PiRat, ...]


def field_vector_from_exact(v: Sequence[ExactScalar]) -> FieldVector:
    return tuple(PiRat.from_exact(x) for x in v)


def field_vector_to_exact(v: Sequence[PiRat]) -> Optional[tuple[ExactScalar, ...]]:
    out = []
    for x in v:
        e = x.to_exact()
        if e is None:
            return None
        out.append(e)
    return tuple(out)


def rational_entry(q) -> PiRat:
    """Constant with a plain rational value (used for real-split matrices)."""
    return PiRat.const(GR(Fraction(q), Fraction(0)))


# ---------------------------------------------------------------------------
# exact matrix algebra over the field
# ---------------------------------------------------------------------------


def rref(rows: Sequence[Sequence[PiRat]]) -> tuple[list[list[PiRat]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[PiRat]]) -> int:
    return len(rref(rows)[1])


def reduce_against(rref_rows: Sequence[Sequence[PiRat]], pivots: Sequence[int],
                   vec: Sequence[PiRat]) -> list[PiRat]:
    """Residual of ``vec`` after elimination against an RREF basis."""
    v = list(vec)
    for row, c in zip(rref_rows, pivots):
        f = v[c]
        if not f.is_zero():
            v = [a - f * b for a, b in zip(v, row)]
    return v


def in_row_span(rows: Sequence[Sequence[PiRat]], vec: Sequence[PiRat]) -> bool:
    rr, piv = rref(rows)
    return all(x.is_zero() for x in reduce_against(rr, piv, vec))


def nullspace(rows: Sequence[Sequence[PiRat]]) -> list[FieldVector]:
    """Basis of { x : M x = 0 } for the matrix with the given rows."""
    ncols = len(rows[0]) if rows else 0
    rr, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [R_ZERO] * ncols
        x[f] = R_ONE
        for row, c in zip(rr, piv):
            x[c] = -row[f]
        basis.append(tuple(x))
    return basis


def annihilator(rows: Sequence[Sequence[PiRat]], ncols: int) -> list[tuple[PiPoly, ...]]:
    """Functionals vanishing on the row span, with polynomial coordinates.

    A vector with field coordinates lies in the C-span of ``rows`` iff every
    returned functional pairs to zero with it (bilinear pairing, no
    conjugation).
    """
    if rows:
        funcs = nullspace(rows)
    else:
        funcs = [tuple(R_ONE if k == j else R_ZERO for k in range(ncols))
                 for j in range(ncols)]
    out = []
    for f in funcs:
        den = P_ONE
        for x in f:
            g = den.gcd(x.den)
            q, _ = x.den.divmod(g)
            den = den * q
        out.append(tuple((x.num * den.divmod(x.den)[0]) for x in f))
    return out
