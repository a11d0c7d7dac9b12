"""Multiplicity functions, Jordan matrices and their exponential periods.

A finite multiplicity function assigns a multiplicity to each
(eigenvalue, block size) pair and determines the block-diagonal Jordan
matrix J that drives everything else in this package: the one-parameter
family t -> e^{tJ}, its period set T = { z : e^{zJ} = 1 }, and the
singular set k = { t : (e^{tJ}-1)/(tJ) is singular }.

Eigenvalues are restricted to Q(i).  With arguments in the 2*pi*i
module this makes the tests ``e^{t*lambda} = 1`` (and more generally
``e^{t*lambda} in {1, i, -1, -i}``) decidable exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateAlgebra, ParseError
from .exactnum import (
    ExactScalar,
    ExactVector,
    GaussianRational,
    I_G,
    ONE_G,
    ZERO_G,
    coerce_gaussian,
    encode_gaussian,
    parse_gaussian,
    tau_multiple,
)

_I_POWERS = (ONE_G, I_G, -ONE_G, -I_G)


@dataclass(frozen=True)
class MFEntry:
    eigenvalue: GaussianRational
    size: int
    mult: int


@dataclass(frozen=True)
class MultiplicityFunction:
    """Finite list of (eigenvalue, block size, multiplicity) triples.

    ``degenerate_ok`` admits the single entry (0, 1, m), whose Jordan matrix
    is zero; that case is kept representable because the period set is all
    of C there, but ``jordan_matrix`` refuses it unless asked not to.
    """

    entries: tuple[MFEntry, ...]
    degenerate_ok: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.entries:
            raise ValueError("multiplicity function needs at least one entry")
        seen = set()
        for e in self.entries:
            if e.size < 1 or e.mult < 1:
                raise ValueError("block sizes and multiplicities must be positive")
            key = (e.eigenvalue, e.size)
            if key in seen:
                raise ValueError(f"duplicate (eigenvalue, size) pair {key}")
            seen.add(key)
        if self.is_degenerate and not self.degenerate_ok:
            raise DegenerateAlgebra(
                "J = 0: a single (0, 1, m) entry does not define an almost "
                "Abelian algebra (pass degenerate_ok=True to represent it anyway)"
            )

    # -- derived structure --------------------------------------------------

    @cached_property
    def dimension(self) -> int:
        return sum(e.size * e.mult for e in self.entries)

    @cached_property
    def blocks(self) -> tuple[tuple[GaussianRational, int, int], ...]:
        """(eigenvalue, size, start index) per block, multiplicity expanded."""
        out = []
        start = 0
        for e in self.entries:
            for _ in range(e.mult):
                out.append((e.eigenvalue, e.size, start))
                start += e.size
        return tuple(out)

    @cached_property
    def eigenvalues(self) -> tuple[GaussianRational, ...]:
        seen: list[GaussianRational] = []
        for e in self.entries:
            if e.eigenvalue not in seen:
                seen.append(e.eigenvalue)
        return tuple(seen)

    @cached_property
    def nonzero_eigenvalues(self) -> tuple[GaussianRational, ...]:
        return tuple(x for x in self.eigenvalues if not x.is_zero())

    @cached_property
    def all_sizes_one(self) -> bool:
        return all(e.size == 1 for e in self.entries)

    @property
    def is_degenerate(self) -> bool:
        return all(e.eigenvalue.is_zero() and e.size == 1 for e in self.entries)

    @cached_property
    def kernel_coordinates(self) -> tuple[int, ...]:
        """Coordinates spanning ker J: the first slot of every 0-block."""
        return tuple(start for lam, _, start in self.blocks if lam.is_zero())

    @property
    def kernel_dim_complex(self) -> int:
        return len(self.kernel_coordinates)


def multiplicity_function(spec: Sequence[tuple], degenerate_ok: bool = False) -> MultiplicityFunction:
    """Build from (eigenvalue-like, size, mult) triples."""
    entries = tuple(MFEntry(coerce_gaussian(lam), int(size), int(mult))
                    for lam, size, mult in spec)
    return MultiplicityFunction(entries, degenerate_ok)


@dataclass(frozen=True)
class JordanMatrix:
    """Expanded block data of J, with a dense realization on demand."""

    blocks: tuple[tuple[GaussianRational, int, int], ...]
    dimension: int

    def dense(self) -> np.ndarray:
        m = np.zeros((self.dimension, self.dimension), dtype=complex)
        for lam, n, start in self.blocks:
            v = lam.as_complex()
            for j in range(n):
                m[start + j, start + j] = v
                if j + 1 < n:
                    m[start + j, start + j + 1] = 1.0
        return m

    def apply_exact(self, v: ExactVector) -> ExactVector:
        """J v for an exact vector, computed exactly."""
        out = list(v)
        for lam, n, start in self.blocks:
            for j in range(n):
                acc = v[start + j].scale(lam)
                if j + 1 < n:
                    acc = acc + v[start + j + 1]
                out[start + j] = acc
        return tuple(out)


def jordan_matrix(aleph: MultiplicityFunction, allow_degenerate: bool = False) -> JordanMatrix:
    if aleph.is_degenerate and not allow_degenerate:
        raise DegenerateAlgebra("J = 0 is excluded for almost Abelian algebras")
    return JordanMatrix(aleph.blocks, aleph.dimension)


# ---------------------------------------------------------------------------
# exact exponential tests
# ---------------------------------------------------------------------------


def exp_eigenvalue_exact(t: ExactScalar, lam: GaussianRational) -> Optional[GaussianRational]:
    """e^{t*lam} when it is a Gaussian rational, else None.

    With t = a + 2*pi*i*b and lam algebraic, e^{t*lam} lies in Q(i) exactly
    when a*lam = 0 and b*lam is a multiple of 1/4 (the value is then a
    fourth root of unity).
    """
    if lam.is_zero() or t.is_zero():
        return ONE_G
    if not (t.alg * lam).is_zero():
        return None
    q = t.tau * lam
    if not q.is_real():
        return None
    k4 = q.re * 4
    if k4.denominator != 1:
        return None
    return _I_POWERS[k4.numerator % 4]


def in_t_aleph(aleph: MultiplicityFunction, t: ExactScalar) -> bool:
    """Exact decision of e^{tJ} = identity."""
    if t.is_zero():
        return True
    if not aleph.all_sizes_one:
        return False
    for lam in aleph.eigenvalues:
        if not (t.alg * lam).is_zero():
            return False
        q = t.tau * lam
        if not (q.is_real() and q.re.denominator == 1):
            return False
    return True


def x_aleph_max(aleph: MultiplicityFunction) -> Optional[GaussianRational]:
    """Maximal-modulus frequency w such that every eigenvalue lies in i*w*Z.

    Pick the first nonzero eigenvalue x*.  All candidate frequencies are
    w = x*/(i*c) for a nonzero integer c, and w works iff c is divisible by
    every denominator of the (necessarily rational) ratios x_p/x*.  The
    maximal modulus is attained at c = lcm of those denominators.
    """
    nonzero = aleph.nonzero_eigenvalues
    if not nonzero:
        return None
    x_star = nonzero[0]
    denominators = []
    for x in nonzero:
        r = x / x_star
        if not r.is_real():
            return None
        denominators.append(r.re.denominator)
    c = lcm(*denominators)
    return x_star / (I_G * c)


class TAlephKind(enum.Enum):
    TRIVIAL = "trivial"
    LATTICE = "lattice"
    WHOLE = "whole"


@dataclass(frozen=True)
class TAlephResult:
    kind: TAlephKind
    z0: Optional[ExactScalar] = None
    omega0: Optional[GaussianRational] = None

    @property
    def is_trivial(self) -> bool:
        return self.kind is TAlephKind.TRIVIAL


def t_aleph(aleph: MultiplicityFunction) -> TAlephResult:
    """The period set of t -> e^{tJ}: trivial, a rank-1 lattice, or all of C.

    The whole-plane case occurs only for J = 0; the lattice case requires
    diagonalizable J (all block sizes 1) and commensurable eigenvalues, and
    then equals z0*Z with z0 = 2*pi/omega0.
    """
    if aleph.is_degenerate:
        return TAlephResult(TAlephKind.WHOLE)
    if not aleph.all_sizes_one:
        return TAlephResult(TAlephKind.TRIVIAL)
    omega0 = x_aleph_max(aleph)
    if omega0 is None:
        return TAlephResult(TAlephKind.TRIVIAL)
    # 2*pi/omega0 = 2*pi*i * (1/(i*omega0))
    z0 = tau_multiple(ONE_G / (I_G * omega0))
    return TAlephResult(TAlephKind.LATTICE, z0, omega0)


def k_set_contains(aleph: MultiplicityFunction, t: ExactScalar) -> bool:
    """Exact membership in the singular set of (e^{tJ}-1)/(tJ).

    The set consists of the nonzero values 2*pi*i*m/x_p over nonzero
    eigenvalues x_p; t = 0 is excluded because the matrix function extends
    to the identity there.
    """
    return k_set_witness(aleph, t) is not None


def k_set_witness(aleph: MultiplicityFunction, t: ExactScalar
                  ) -> Optional[tuple[int, GaussianRational]]:
    """The pair (m, x_p) with t = 2*pi*i*m/x_p, when one exists."""
    if t.is_zero() or not t.alg.is_zero():
        return None
    for lam in aleph.nonzero_eigenvalues:
        q = t.tau * lam
        if q.is_real() and q.re.denominator == 1:
            return (int(q.re), lam)
    return None


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def parse_multiplicity_function(obj, path: str = "aleph") -> MultiplicityFunction:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError(path, "expected an object with an 'entries' list")
    raw = obj["entries"]
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"{path}.entries", "expected a non-empty list")
    entries = []
    for k, item in enumerate(raw):
        here = f"{path}.entries[{k}]"
        if not isinstance(item, dict):
            raise ParseError(here, "expected an object")
        lam = parse_gaussian(item.get("eigenvalue", {}), f"{here}.eigenvalue")
        size = item.get("size", 1)
        mult = item.get("mult", 1)
        if not isinstance(size, int) or not isinstance(mult, int) or size < 1 or mult < 1:
            raise ParseError(here, "size and mult must be positive integers")
        entries.append(MFEntry(lam, size, mult))
    try:
        return MultiplicityFunction(tuple(entries))
    except (ValueError, DegenerateAlgebra) as exc:
        raise ParseError(path, str(exc)) from None


def encode_multiplicity_function(aleph: MultiplicityFunction) -> dict:
    return {
        "entries": [
            {"eigenvalue": encode_gaussian(e.eigenvalue), "size": e.size, "mult": e.mult}
            for e in aleph.entries
        ]
    }


def encode_t_aleph(res: TAlephResult) -> dict:
    from .exactnum import encode_exact_scalar

    out: dict = {"kind": res.kind.value}
    if res.kind is TAlephKind.LATTICE:
        out["z0"] = encode_exact_scalar(res.z0)
        out["omega0"] = encode_gaussian(res.omega0)
    return out
