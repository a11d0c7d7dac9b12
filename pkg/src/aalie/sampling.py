"""Seeded random generators shared by the verify harness and the tests.

Everything is driven by a ``random.Random`` instance, so any fixed seed
reproduces the same objects byte for byte.  Magnitudes are kept small
(|eigenvalue| <= sqrt(2), tau-parts a few quarters) so that floating
comparisons stay far from the exp-growth regime where absolute tolerances
become meaningless.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .exactnum import (
    ExactScalar,
    GaussianRational,
    ZERO,
    scalar,
    tau_multiple,
    vec_add,
    zero_vector,
)
from .group import GroupElement, element
from .spectrum import (
    MultiplicityFunction,
    TAlephKind,
    multiplicity_function,
    t_aleph,
)

# |lambda| <= sqrt(2) keeps e^{t*lambda} at desk scale for the t's below
_EIGENVALUE_POOL = [
    (0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1),
    (Fraction(1, 2), 0), (0, Fraction(1, 2)),
]

# |lambda| <= 3/4: used where results are compared against series oracles
_SMALL_EIGENVALUE_POOL = [
    (0, 0), (Fraction(1, 2), 0), (Fraction(-1, 2), 0),
    (0, Fraction(1, 2)), (0, Fraction(-1, 2)),
    (Fraction(1, 4), Fraction(1, 4)), (Fraction(1, 4), 0), (0, Fraction(3, 4)),
]

# purely imaginary commensurable spectra: nontrivial period lattices
_LATTICE_EIGENVALUE_POOL = [(0, 1), (0, 2), (0, -1), (0, Fraction(1, 2)), (0, 0)]


def random_fraction(rng: random.Random, span: int = 2) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 4))


def random_gaussian(rng: random.Random, span: int = 2) -> GaussianRational:
    return GaussianRational(random_fraction(rng, span), random_fraction(rng, span))


def _random_tau(rng: random.Random, quarters: int = 2) -> GaussianRational:
    return GaussianRational(Fraction(rng.randint(-quarters, quarters), 4),
                            Fraction(rng.randint(-quarters, quarters), 4))


def random_exact_scalar(rng: random.Random, tau_prob: float = 0.4,
                        span: int = 2, tau_quarters: int = 2) -> ExactScalar:
    alg = random_gaussian(rng, span)
    tau = _random_tau(rng, tau_quarters) if rng.random() < tau_prob \
        else GaussianRational()
    return ExactScalar(alg, tau)


def random_aleph(rng: random.Random, max_dim: int = 8,
                 lattice_friendly: bool = False,
                 small_spectrum: bool = False) -> MultiplicityFunction:
    """A random valid multiplicity function with total dimension <= max_dim.

    ``lattice_friendly`` restricts to size-1 blocks with commensurable
    imaginary eigenvalues so the period set is a nontrivial lattice;
    ``small_spectrum`` bounds |eigenvalue| <= 3/4 for oracle-precision runs.
    """
    if lattice_friendly:
        pool = _LATTICE_EIGENVALUE_POOL
    elif small_spectrum:
        pool = _SMALL_EIGENVALUE_POOL
    else:
        pool = _EIGENVALUE_POOL
    while True:
        entries = []
        used = set()
        dim = 0
        for _ in range(rng.randint(1, 3)):
            lam = GaussianRational(*rng.choice(pool))
            size = 1 if lattice_friendly else rng.randint(1, 3)
            mult = rng.randint(1, 2)
            if (lam, size) in used or dim + size * mult > max_dim:
                continue
            used.add((lam, size))
            entries.append((lam, size, mult))
            dim += size * mult
        if not entries:
            continue
        if all(lam.is_zero() and size == 1 for lam, size, _ in entries):
            continue
        return multiplicity_function(entries)


def random_element(rng: random.Random, aleph: MultiplicityFunction,
                   tau_prob: float = 0.3) -> GroupElement:
    d = aleph.dimension
    coords = [random_exact_scalar(rng, tau_prob=0.2, span=2) for _ in range(d)]
    t = random_exact_scalar(rng, tau_prob=tau_prob, span=2)
    return element(aleph, coords, t)


def random_exact_action_time(rng: random.Random,
                             aleph: MultiplicityFunction) -> ExactScalar:
    """A t with every e^{t*lambda} a Gaussian rational (quarter periods)."""
    res = t_aleph(aleph)
    if res.kind is TAlephKind.LATTICE:
        q = res.z0.tau * Fraction(rng.randint(-8, 8), 4)
        return tau_multiple(q)
    if all(lam.is_zero() for lam, _, _ in aleph.blocks):
        return scalar(random_fraction(rng))
    return ZERO


def random_central_element(rng: random.Random,
                           aleph: MultiplicityFunction) -> GroupElement:
    v = zero_vector(aleph.dimension)
    for c in aleph.kernel_coordinates:
        if rng.random() < 0.8:
            delta = [ZERO] * aleph.dimension
            delta[c] = random_exact_scalar(rng, tau_prob=0.3, span=3)
            v = vec_add(v, tuple(delta))
    res = t_aleph(aleph)
    if res.kind is TAlephKind.LATTICE and rng.random() < 0.6:
        t = res.z0.scale(GaussianRational(Fraction(rng.randint(-3, 3))))
    else:
        t = ZERO
    return element(aleph, v, t)


def random_central_lattice(rng: random.Random, aleph: MultiplicityFunction,
                           count: Optional[int] = None) -> list[GroupElement]:
    count = count if count is not None else rng.randint(0, 3)
    return [random_central_element(rng, aleph) for _ in range(count)]


def random_invariant_subspace(rng: random.Random,
                              aleph: MultiplicityFunction) -> list[tuple]:
    """Block prefixes are always invariant under the structure matrix."""
    from .exactnum import basis_vector

    rows = []
    for _, n, start in aleph.blocks:
        prefix = rng.randint(0, n)
        for j in range(prefix):
            rows.append(basis_vector(aleph.dimension, start + j))
    return rows


def random_descriptor(rng: random.Random, aleph: MultiplicityFunction):
    from .exactnum import basis_vector
    from .subgroups import make_descriptor

    if rng.random() < 0.5:
        d = aleph.dimension
        rows = [basis_vector(d, j) for j in range(d) if rng.random() < 0.5]
        return make_descriptor(aleph, "type1", rows)
    rows = random_invariant_subspace(rng, aleph)
    v0 = [random_exact_scalar(rng, tau_prob=0.0, span=2) if rng.random() < 0.4
          else ZERO for _ in range(aleph.dimension)]
    return make_descriptor(aleph, "type2", rows, v0)
