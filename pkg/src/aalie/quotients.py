"""Discrete central subgroups, quotients, and their compactness structure.

A quotient is the simply connected group modulo a discrete central
subgroup Gamma.  Centrality makes Gamma's elements add coordinatewise, so
all lattice questions reduce to exact integer linear algebra:

* ranks come from exact elimination over Q and over Q(pi);
* membership of integer combinations in a connected subgroup becomes a
  rational linear system, stratified by powers of pi and split into real
  components, whose integer kernel is computed by Hermite normal form.

That machinery drives the purity splitting, the compactness criterion
(rank of Gamma inside the subgroup versus its real dimension), the
finite-generation certificates, and the maximal compact candidate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    AmbientMismatch,
    NotAbelian,
    NotCentral,
    NotDiscrete,
    RankBoundViolated,
)
from .exactnum import (
    ExactScalar,
    ExactVector,
    GaussianRational,
    ZERO,
    vec_add,
    vec_scale,
    vec_sub,
)
from .group import (
    GroupElement,
    commutator,
    element,
    identity,
    in_kernel_j,
    is_central,
    require_exact,
)
from .exactnum import basis_vector, default_tolerance
from .matrixfn import (
    apply_matfun_exact,
    exp_tj,
    hermite_normal_form,
    integer_kernel,
    rank_exact,
    rational_components_row,
    scaled_integer_rows,
    smith_normal_form,
    unimodular_inverse,
)
from .pifield import (
    FieldVector,
    PiPoly,
    PiRat,
    P_ONE,
    R_ZERO,
    annihilator,
    field_vector_from_exact,
)
from .spectrum import MultiplicityFunction, k_set_contains, k_set_witness
from .subgroups import (
    SubgroupDescriptor,
    make_descriptor,
    minimal_complex_subgroup,
    straighten,
    subgroup_contains,
)

import numpy as np


# ---------------------------------------------------------------------------
# lattices of exact group elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """Finitely many exact generators with cached Z- and R-span ranks."""

    aleph: MultiplicityFunction
    generators: tuple[GroupElement, ...]
    z_rank: int
    r_rank: int


def _coordinate_vector(g: GroupElement) -> ExactVector:
    return g.v + (g.t,)


def make_lattice(aleph: MultiplicityFunction,
                 gens: Sequence[GroupElement]) -> Lattice:
    require_exact(gens)
    for g in gens:
        if g.aleph != aleph:
            raise AmbientMismatch("generator lives over a different ambient")
    vecs = [_coordinate_vector(g) for g in gens]
    return Lattice(aleph, tuple(gens),
                   rank_exact(vecs, "Q"), rank_exact(vecs, "R"))


@dataclass(frozen=True)
class QuotientGroup:
    aleph: MultiplicityFunction
    gamma: Lattice


def validate_quotient(aleph: MultiplicityFunction,
                      gens: Sequence[GroupElement]) -> QuotientGroup:
    """Check centrality, discreteness and the rank bound, then wrap up.

    The rank of a discrete central subgroup can never exceed
    dim_R(ker J) + 2; a violation here is an internal consistency failure,
    not a user error.
    """
    lat = make_lattice(aleph, gens)
    for g in lat.generators:
        if not is_central(g):
            raise NotCentral(f"generator {g!r} is not central")
    if lat.z_rank != lat.r_rank:
        raise NotDiscrete(
            f"generated subgroup is not discrete (Z-rank {lat.z_rank} != "
            f"R-rank {lat.r_rank})")
    bound = 2 * aleph.kernel_dim_complex + 2
    if lat.z_rank > bound:
        raise RankBoundViolated(
            f"central lattice rank {lat.z_rank} exceeds {bound}")
    return QuotientGroup(aleph, lat)


def projection(lat: Lattice) -> tuple[ExactScalar, ...]:
    """Images of the generators under [v, t] -> t (a homomorphism)."""
    return tuple(g.t for g in lat.generators)


def is_projection_discrete(lat: Lattice) -> bool:
    ts = [(t,) for t in projection(lat)]
    return rank_exact(ts, "Q") == rank_exact(ts, "R")


# ---------------------------------------------------------------------------
# exact integer machinery over central elements
# ---------------------------------------------------------------------------


def central_combination(aleph: MultiplicityFunction,
                        elems: Sequence[GroupElement],
                        coeffs: Sequence[int]) -> GroupElement:
    """prod elems[i]^coeffs[i]; central elements multiply coordinatewise."""
    v = tuple(ZERO for _ in range(aleph.dimension))
    t = ZERO
    for g, c in zip(elems, coeffs, strict=True):
        if c == 0:
            continue
        v = vec_add(v, vec_scale(g.v, GaussianRational(Fraction(c))))
        t = t + g.t.scale(GaussianRational(Fraction(c)))
    return element(aleph, v, t)


def lattice_coordinate_rows(gens: Sequence[GroupElement]) -> list[list[Fraction]]:
    return [rational_components_row(_coordinate_vector(g)) for g in gens]


def lattice_basis(aleph: MultiplicityFunction,
                  gens: Sequence[GroupElement]) -> list[GroupElement]:
    """A Z-basis of the central subgroup generated by ``gens``."""
    gens = [g for g in gens if not (g.t.is_zero() and all(x.is_zero() for x in g.v))]
    if not gens:
        return []
    for g in gens:
        if not is_central(g):
            raise NotCentral("basis reduction requires central elements")
    int_rows, _ = scaled_integer_rows(lattice_coordinate_rows(gens))
    h, u = hermite_normal_form(int_rows)
    out = []
    for i, row in enumerate(h):
        if any(row):
            out.append(central_combination(aleph, gens, u[i]))
    return out


def lattice_modules_equal(a: Sequence[GroupElement],
                          b: Sequence[GroupElement]) -> bool:
    """Do two central generator lists generate the same coordinate module?"""
    from .matrixfn import row_modules_equal

    rows = lattice_coordinate_rows(list(a)) + lattice_coordinate_rows(list(b))
    int_rows, _ = scaled_integer_rows(rows)
    return row_modules_equal(int_rows[:len(a)], int_rows[len(a):])


def lattice_smith_signature(gens: Sequence[GroupElement],
                            scale_with: Sequence[GroupElement] = ()) -> list[int]:
    """Nonzero Smith diagonal of the coordinate matrix.

    ``scale_with`` contributes extra rows to the denominator clearing only,
    so signatures of two generator sets can be compared on a common scale.
    """
    rows = lattice_coordinate_rows(list(gens))
    extra = lattice_coordinate_rows(list(scale_with))
    int_rows, _ = scaled_integer_rows(rows + extra)
    int_rows = int_rows[:len(rows)]
    if not int_rows:
        return []
    d, _, _ = smith_normal_form(int_rows)
    return [d[k][k] for k in range(min(len(d), len(d[0]))) if d[k][k] != 0]


def _kernel_mask_field(aleph: MultiplicityFunction,
                       v: Optional[FieldVector]) -> FieldVector:
    """Restrict a field vector to the ker-J coordinates (zero elsewhere)."""
    d = aleph.dimension
    if v is None:
        return tuple(R_ZERO for _ in range(d))
    kernel = set(aleph.kernel_coordinates)
    return tuple(v[j] if j in kernel else R_ZERO for j in range(d))


def _poly_lcm(dens: Sequence[PiPoly]) -> PiPoly:
    out = P_ONE
    for den in dens:
        g = out.gcd(den)
        q, _ = den.divmod(g)
        out = out * q
    return out


def _membership_condition_rows(aleph: MultiplicityFunction,
                               elems: Sequence[GroupElement],
                               h: SubgroupDescriptor) -> list[list[Fraction]]:
    """Rational conditions on integer coefficients m with sum m_i elems_i in h.

    On central elements phi1(t) acts as multiplication by t on ker J and
    annihilates everything else, so the type-2 shift is s(m) * v0|_{ker J}
    and membership is linear in m.  Each Q(i)[pi]-linear condition is
    stratified by pi-degree and split into real components.
    """
    d = aleph.dimension
    k = len(elems)
    rows: list[list[Fraction]] = []
    targets: list[FieldVector] = []
    if h.kind == "type1":
        for comp in range(4):
            row = [g.t.components()[comp] for g in elems]
            if any(row):
                rows.append(row)
        targets = [field_vector_from_exact(g.v) for g in elems]
    else:
        v0ker = _kernel_mask_field(aleph, h.v0)
        for g in elems:
            s = PiRat.from_exact(g.t)
            targets.append(tuple(
                PiRat.from_exact(g.v[j]) - s * v0ker[j] for j in range(d)))
    for f in annihilator(h.w_rows, d):
        vals = []
        for i in range(k):
            acc = R_ZERO
            for j in range(d):
                if not f[j].is_zero() and not targets[i][j].is_zero():
                    acc = acc + PiRat.make(f[j], P_ONE) * targets[i][j]
            vals.append(acc)
        den = _poly_lcm([v.den for v in vals])
        polys = []
        for v in vals:
            q, _ = den.divmod(v.den)
            polys.append(v.num * q)
        max_deg = max((p.degree for p in polys), default=-1)
        for deg in range(max_deg + 1):
            re_row = [p.coefficient(deg).re for p in polys]
            im_row = [p.coefficient(deg).im for p in polys]
            if any(re_row):
                rows.append(re_row)
            if any(im_row):
                rows.append(im_row)
    return rows


def central_membership_kernel(aleph: MultiplicityFunction,
                              elems: Sequence[GroupElement],
                              h: SubgroupDescriptor) -> list[tuple[int, ...]]:
    """Basis of { m in Z^k : sum m_i elems_i lies in h }."""
    cond = _membership_condition_rows(aleph, elems, h)
    if not cond:
        return integer_kernel([], len(elems))
    int_rows, _ = scaled_integer_rows(cond)
    return integer_kernel(int_rows, len(elems))


# ---------------------------------------------------------------------------
# purity splitting
# ---------------------------------------------------------------------------


def purity_split(n: Lattice, h: SubgroupDescriptor) -> tuple[Lattice, Lattice]:
    """Split N as (N intersect H) x B.

    The membership kernel K is saturated in Z^r, so its Smith form over a
    basis of N has unit diagonal and the missing rows of the inverse
    transform provide the complement B.
    """
    aleph = n.aleph
    if h.aleph != aleph:
        raise AmbientMismatch("subgroup and lattice have different ambients")
    for g in n.generators:
        if not is_central(g):
            raise NotCentral("purity split requires a central lattice")
    basis = lattice_basis(aleph, n.generators)
    if not basis:
        return make_lattice(aleph, []), make_lattice(aleph, [])
    r = len(basis)
    kernel = central_membership_kernel(aleph, basis, h)
    inside = [central_combination(aleph, basis, m) for m in kernel]
    q = len(kernel)
    if q == 0:
        complement = list(basis)
    elif q == r:
        complement = []
    else:
        m_rows = [list(m) for m in kernel]
        d_mat, _, v_mat = smith_normal_form(m_rows)
        for idx in range(q):
            if abs(d_mat[idx][idx]) != 1:
                raise RankBoundViolated(
                    "membership kernel is not saturated; this cannot happen "
                    "for exact central data")
        v_inv = unimodular_inverse(v_mat)
        complement = [central_combination(aleph, basis, v_inv[i])
                      for i in range(q, r)]
    return make_lattice(aleph, inside), make_lattice(aleph, complement)


# ---------------------------------------------------------------------------
# quotient shapes and compactness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientShape:
    """Topological type T^torus_rank x (C/Z)^epsilon x C^eta of H/Gamma'."""

    torus_rank: int
    epsilon: int
    eta: int

    @property
    def is_compact(self) -> bool:
        return self.epsilon == 0 and self.eta == 0


def quotient_shape(h_tilde: SubgroupDescriptor,
                   gamma_prime: Lattice) -> QuotientShape:
    """Shape of (Abelian) H divided by a contained discrete subgroup."""
    if not h_tilde.is_abelian():
        raise NotAbelian("quotient shapes are defined for Abelian subgroups")
    if h_tilde.aleph != gamma_prime.aleph:
        raise AmbientMismatch("subgroup and lattice have different ambients")
    from .errors import NotContained

    for g in gamma_prime.generators:
        if not subgroup_contains(h_tilde, g):
            raise NotContained("lattice generator outside the subgroup")
    n = h_tilde.dim_complex
    k = gamma_prime.z_rank
    if k > 2 * n:
        raise NotDiscrete("lattice rank exceeds the real dimension")
    eps = k % 2
    return QuotientShape(2 * (k // 2), eps, n - k // 2 - eps)


def is_compact_subgroup(q: QuotientGroup, h: SubgroupDescriptor) -> bool:
    """H/Gamma is compact iff rank(Gamma intersect H) equals dim_R(H)."""
    if h.aleph != q.aleph:
        raise AmbientMismatch("subgroup and quotient have different ambients")
    basis = lattice_basis(q.aleph, q.gamma.generators)
    if not basis:
        return h.dim_real == 0
    kernel = central_membership_kernel(q.aleph, basis, h)
    return len(kernel) == h.dim_real


@dataclass(frozen=True)
class NoncompactWitness:
    """A closed noncompact one-parameter subgroup surviving any quotient."""

    direction: ExactVector
    subgroup: SubgroupDescriptor
    compact: bool = False


def whole_group_noncompact(q: QuotientGroup) -> NoncompactWitness:
    """A direction X outside ker J yields [tau X, 0]; its one-parameter
    subgroup meets the (central) Gamma trivially, so the quotient is
    never compact.
    """
    aleph = q.aleph
    d = aleph.dimension
    direction = None
    for lam, n, start in aleph.blocks:
        for j in range(n):
            if not lam.is_zero() or j > 0:
                direction = basis_vector(d, start + j)
                break
        if direction is not None:
            break
    if direction is None:
        raise RankBoundViolated("J = 0 cannot occur for a validated ambient")
    sub = make_descriptor(aleph, "type1", [direction])
    return NoncompactWitness(direction, sub, False)


# ---------------------------------------------------------------------------
# finite generation certificates
# ---------------------------------------------------------------------------


def commutator_phi(aleph: MultiplicityFunction, t0: ExactScalar,
                   target: GroupElement) -> GroupElement:
    """[0,t0][u,s][0,t0]^{-1}[u,s]^{-1} = [(e^{t0 J} - 1) u, 0]."""
    if target.aleph != aleph:
        raise AmbientMismatch("target lives over a different ambient")
    if target.exact:
        a = apply_matfun_exact(aleph, "exp", t0, target.v)
        if a is not None:
            coords = vec_sub(a, target.v)
            return element(aleph, coords, ZERO)
    u = np.asarray(target.v_num, dtype=complex)
    v_num = exp_tj(aleph, t0.evaluate()) @ u - u
    from .group import element_numeric

    return element_numeric(aleph, tuple(v_num), ZERO)


class CertificateCase(enum.Enum):
    PROJECTION_DISCRETE = "projectionDiscrete"
    INSIDE_K = "insideK"
    STRAIGHTENED_COMMUTATOR = "straightenedCommutator"


@dataclass(frozen=True)
class FinGenCertificate:
    """Witness data for finite generation of a discrete subgroup.

    Discreteness of the generated subgroup is a hypothesis, not something
    checked here.  ``reconstruct`` returns a generating set organized per
    the certified case; its coordinate module always matches the input's.
    """

    aleph: MultiplicityFunction
    case: CertificateCase
    generators: tuple[GroupElement, ...]
    projections: tuple[ExactScalar, ...]
    k_witnesses: Optional[tuple[Optional[tuple[int, GaussianRational]], ...]] = None
    t0: Optional[ExactScalar] = None
    straightened_generator: Optional[GroupElement] = None
    straightened: Optional[tuple[GroupElement, ...]] = None
    kernel_indices: Optional[tuple[int, ...]] = None
    image_elements: Optional[tuple[GroupElement, ...]] = None

    def reconstruct(self) -> tuple[GroupElement, ...]:
        if self.case is CertificateCase.STRAIGHTENED_COMMUTATOR:
            kernel = set(self.kernel_indices)
            inside = tuple(g for i, g in enumerate(self.generators) if i in kernel)
            outside = tuple(g for i, g in enumerate(self.generators) if i not in kernel)
            return inside + outside
        return self.generators


def finite_generation_certificate(aleph: MultiplicityFunction,
                                  dgens: Sequence[GroupElement]) -> FinGenCertificate:
    require_exact(dgens)
    gens = tuple(dgens)
    ts = tuple(g.t for g in gens)
    nonzero = [t for t in ts if not t.is_zero()]
    if nonzero and all(k_set_contains(aleph, t) for t in nonzero):
        witnesses = tuple(None if t.is_zero() else k_set_witness(aleph, t)
                          for t in ts)
        return FinGenCertificate(aleph, CertificateCase.INSIDE_K, gens, ts,
                                 k_witnesses=witnesses)
    t_vecs = [(t,) for t in ts]
    if rank_exact(t_vecs, "Q") == rank_exact(t_vecs, "R"):
        return FinGenCertificate(aleph, CertificateCase.PROJECTION_DISCRETE,
                                 gens, ts)
    pivot = next((i for i, t in enumerate(ts)
                  if not t.is_zero() and not k_set_contains(aleph, t)), None)
    if pivot is None:
        # non-discrete projection with all t inside the singular set was
        # already captured above; reaching here is impossible
        raise RankBoundViolated("certificate case analysis is incoherent")
    g0 = gens[pivot]
    phi = straighten(aleph, g0.t, g0.v)
    straightened = tuple(phi.apply(g) for g in gens)
    tol = default_tolerance()
    kernel_indices = []
    for i, hgen in enumerate(straightened):
        if hgen.exact:
            if in_kernel_j(aleph, hgen.v):
                kernel_indices.append(i)
        else:
            kernel = set(aleph.kernel_coordinates)
            if all(abs(x) <= tol
                   for j, x in enumerate(hgen.v_num) if j not in kernel):
                kernel_indices.append(i)
    images = tuple(commutator(g0, gens[i]) for i in range(len(gens))
                   if i not in set(kernel_indices))
    return FinGenCertificate(
        aleph, CertificateCase.STRAIGHTENED_COMMUTATOR, gens, ts,
        t0=g0.t,
        straightened_generator=straightened[pivot],
        straightened=straightened,
        kernel_indices=tuple(kernel_indices),
        image_elements=images,
    )


# ---------------------------------------------------------------------------
# the maximal compact candidate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaximalCompactCandidate:
    """The minimal complex subgroup containing Gamma, with its own
    compactness verdict reported verbatim (the verdict can be negative)."""

    subgroup: SubgroupDescriptor
    compact: bool
    shape: Optional[QuotientShape]


def maximal_compact_candidate(q: QuotientGroup) -> MaximalCompactCandidate:
    k = minimal_complex_subgroup(q.aleph, q.gamma.generators)
    compact = is_compact_subgroup(q, k)
    shape = None
    if k.is_abelian():
        shape = quotient_shape(k, q.gamma)
    return MaximalCompactCandidate(k, compact, shape)
