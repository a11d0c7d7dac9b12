"""Connected subgroups in normal form.

Every connected subgroup of the simply connected group is either

* type 1: { [w, 0] : w in W } for a subspace W of C^d, or
* type 2: { [w + phi1(t) v0, t] : w in W, t in C } for a J-invariant
  subspace W and a fixed direction v0 (determined modulo W).

Descriptors store W as a reduced row echelon basis with coordinates in
Q(i)(pi) and v0 reduced against that basis, so equality of descriptors is
equality of subgroups.  Coordinates beyond the 2*pi*i module arise
naturally (e.g. v0 = u0/s0 for a central generator [u0, s0] with s0 a
multiple of 2*pi), which is why the field layer is used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    AalieError,
    AmbientMismatch,
    DependentBasis,
    NotInvariant,
    ParseError,
    SingularPhi,
)
from .exactnum import (
    ExactScalar,
    ExactVector,
    GaussianRational,
    ZERO,
    coerce_gaussian,
    default_tolerance,
    encode_exact_scalar,
    encode_gaussian,
    parse_exact_scalar,
    parse_gaussian,
    scalar,
    vec_eval,
    vec_sub,
)
from .group import GroupElement, element, element_numeric, is_central, mul, require_exact
from .matrixfn import (
    apply_matfun_field,
    field_block_coeffs,
    matfun_field_matrix,
    phi1 as phi1_numeric,
)
from .pifield import (
    FieldVector,
    PiPoly,
    PiRat,
    R_ONE,
    R_ZERO,
    field_vector_from_exact,
    field_vector_to_exact,
    in_row_span,
    nullspace,
    rank as field_rank,
    reduce_against,
    rref,
)
from .spectrum import MultiplicityFunction, k_set_contains

CoordRow = Union[ExactVector, FieldVector, Sequence]


def _to_field_row(aleph: MultiplicityFunction, row: CoordRow) -> FieldVector:
    out = []
    for x in row:
        if isinstance(x, PiRat):
            out.append(x)
        elif isinstance(x, ExactScalar):
            out.append(PiRat.from_exact(x))
        else:
            out.append(PiRat.from_exact(scalar(x)))
    if len(out) != aleph.dimension:
        raise AmbientMismatch(
            f"vector length {len(out)} != ambient dimension {aleph.dimension}")
    return tuple(out)


def _fvec_sub(a: FieldVector, b: FieldVector) -> FieldVector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def _fvec_scale(a: FieldVector, c: PiRat) -> FieldVector:
    return tuple(x * c for x in a)


def _fvec_is_zero(a: FieldVector) -> bool:
    return all(x.is_zero() for x in a)


def _fvec_eval(a: FieldVector) -> np.ndarray:
    return np.array([x.evaluate() for x in a], dtype=complex)


def _apply_j_field(aleph: MultiplicityFunction, v: FieldVector) -> FieldVector:
    out = list(v)
    for lam, n, start in aleph.blocks:
        lam_r = PiRat.const(lam)
        for j in range(n):
            acc = v[start + j] * lam_r
            if j + 1 < n:
                acc = acc + v[start + j + 1]
            out[start + j] = acc
    return tuple(out)


@dataclass(frozen=True)
class SubgroupDescriptor:
    aleph: MultiplicityFunction
    kind: str                               # "type1" | "type2"
    w_rows: tuple[FieldVector, ...]         # canonical RREF basis of W
    v0: Optional[FieldVector]               # type2 only, reduced mod W

    @property
    def dim_complex(self) -> int:
        return len(self.w_rows) + (1 if self.kind == "type2" else 0)

    @property
    def dim_real(self) -> int:
        return 2 * self.dim_complex

    @property
    def is_trivial(self) -> bool:
        return self.kind == "type1" and not self.w_rows

    def is_abelian(self) -> bool:
        """Type 1 is always Abelian; type 2 iff W lies inside ker J."""
        if self.kind == "type1":
            return True
        kernel = set(self.aleph.kernel_coordinates)
        return all(all(x.is_zero() for j, x in enumerate(row) if j not in kernel)
                   for row in self.w_rows)

    def w_matrix_num(self) -> np.ndarray:
        if not self.w_rows:
            return np.zeros((0, self.aleph.dimension), dtype=complex)
        return np.array([[x.evaluate() for x in row] for row in self.w_rows])

    def v0_num(self) -> np.ndarray:
        if self.v0 is None:
            return np.zeros(self.aleph.dimension, dtype=complex)
        return _fvec_eval(self.v0)


def make_descriptor(aleph: MultiplicityFunction, kind: str,
                    w: Sequence[CoordRow], v0: Optional[CoordRow] = None
                    ) -> SubgroupDescriptor:
    """Validate and canonicalize a subgroup descriptor.

    Type 2 requires W to be J-invariant; v0 is reduced modulo W so that
    equal subgroups compare equal.
    """
    if kind not in ("type1", "type2"):
        raise ValueError("kind must be 'type1' or 'type2'")
    rows = [_to_field_row(aleph, r) for r in w]
    rows = [r for r in rows if not _fvec_is_zero(r)]
    reduced, pivots = rref(rows)
    if len(pivots) != len(rows):
        raise DependentBasis("subspace basis is linearly dependent")
    canonical = tuple(tuple(r) for r in reduced)
    if kind == "type1":
        if v0 is not None:
            raise ValueError("type1 descriptors carry no v0")
        return SubgroupDescriptor(aleph, "type1", canonical, None)
    for row in canonical:
        if not in_row_span(canonical, _apply_j_field(aleph, row)):
            raise NotInvariant("W is not invariant under the structure matrix")
    if v0 is None:
        v0 = tuple(ZERO for _ in range(aleph.dimension))
    fv0 = _to_field_row(aleph, v0)
    fv0 = tuple(reduce_against(canonical, pivots, fv0))
    return SubgroupDescriptor(aleph, "type2", canonical, fv0)


def _descriptor_from_span(aleph: MultiplicityFunction, kind: str,
                          rows: Sequence[CoordRow],
                          v0: Optional[CoordRow] = None) -> SubgroupDescriptor:
    """Like make_descriptor, but accepts a spanning set for W."""
    frows = [_to_field_row(aleph, r) for r in rows]
    reduced, _ = rref([r for r in frows if not _fvec_is_zero(r)])
    return make_descriptor(aleph, kind, [tuple(r) for r in reduced], v0)


def trivial_subgroup(aleph: MultiplicityFunction) -> SubgroupDescriptor:
    return make_descriptor(aleph, "type1", [])


def t_axis_subgroup(aleph: MultiplicityFunction) -> SubgroupDescriptor:
    return make_descriptor(aleph, "type2", [])


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------


def _phi1_v0_field(h: SubgroupDescriptor, t: ExactScalar) -> Optional[FieldVector]:
    if h.v0 is None or _fvec_is_zero(h.v0):
        return tuple(R_ZERO for _ in range(h.aleph.dimension))
    out = apply_matfun_field(h.aleph, "phi1", t, h.v0)
    return tuple(out) if out is not None else None


def _numeric_in_span(w_num: np.ndarray, vec: np.ndarray, tol: float) -> bool:
    if w_num.shape[0] == 0:
        return bool(np.linalg.norm(vec) <= tol)
    sol, *_ = np.linalg.lstsq(w_num.T, vec, rcond=None)
    resid = vec - w_num.T @ sol
    return bool(np.linalg.norm(resid) <= tol * (1.0 + np.linalg.norm(vec)))


def subgroup_contains(h: SubgroupDescriptor, g: GroupElement,
                      tol: Optional[float] = None) -> bool:
    """Membership of a group element; exact for exact data, else within tol."""
    if h.aleph != g.aleph:
        raise AmbientMismatch("element and subgroup have different ambients")
    tol = default_tolerance() if tol is None else tol
    if h.kind == "type1":
        if not g.t.is_zero():
            return False
        if g.exact:
            return in_row_span(h.w_rows, field_vector_from_exact(g.v))
        return _numeric_in_span(h.w_matrix_num(), np.asarray(g.v_num), tol)
    # type2: v - phi1(t) v0 must lie in W
    if g.exact:
        shift = _phi1_v0_field(h, g.t)
        if shift is not None:
            diff = _fvec_sub(field_vector_from_exact(g.v), shift)
            return in_row_span(h.w_rows, diff)
    shift_num = phi1_numeric(h.aleph, g.t.evaluate()) @ h.v0_num()
    return _numeric_in_span(h.w_matrix_num(), np.asarray(g.v_num) - shift_num, tol)


def element_of(h: SubgroupDescriptor, coeffs: Sequence, t=0) -> GroupElement:
    """The element [sum_k c_k w_k + phi1(t) v0, t]; exact when representable."""
    t = scalar(t)
    acc = [R_ZERO] * h.aleph.dimension
    for c, row in zip(coeffs, h.w_rows):
        cr = c if isinstance(c, PiRat) else PiRat.const(coerce_gaussian(c))
        for j in range(h.aleph.dimension):
            acc[j] = acc[j] + row[j] * cr
    if h.kind == "type2":
        shift = _phi1_v0_field(h, t)
        if shift is None:
            v_num = (np.array([x.evaluate() for x in acc])
                     + phi1_numeric(h.aleph, t.evaluate()) @ h.v0_num())
            return element_numeric(h.aleph, tuple(v_num), t)
        acc = [a + s for a, s in zip(acc, shift)]
    else:
        if not t.is_zero():
            raise ValueError("type1 subgroup elements have t = 0")
    exact = field_vector_to_exact(acc)
    if exact is not None:
        return element(h.aleph, exact, t)
    return element_numeric(h.aleph, tuple(x.evaluate() for x in acc), t)


# ---------------------------------------------------------------------------
# the straightening automorphism
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Straightening:
    """The automorphism [v, t] -> [v - phi1(t) gamma, t] with
    gamma = phi1(t0)^{-1} v0; it maps [v0, t0] to [0, t0].
    """

    aleph: MultiplicityFunction
    t0: ExactScalar
    v0: ExactVector
    gamma: Optional[FieldVector]
    gamma_num: tuple[complex, ...]

    def apply(self, g: GroupElement) -> GroupElement:
        if g.aleph != self.aleph:
            raise AmbientMismatch("element lives over a different ambient")
        if g.t == self.t0:
            # phi1(t0) gamma = v0 by construction; no numerics needed
            if g.exact:
                coords = vec_sub(g.v, self.v0)
                return element(self.aleph, coords, g.t)
            shift = np.asarray(vec_eval(self.v0))
            return element_numeric(self.aleph,
                                   tuple(np.asarray(g.v_num) - shift), g.t)
        if g.t.is_zero():
            return g
        if g.exact and self.gamma is not None:
            shift_f = apply_matfun_field(self.aleph, "phi1", g.t, self.gamma)
            if shift_f is not None:
                shift = field_vector_to_exact(shift_f)
                if shift is not None:
                    return element(self.aleph, vec_sub(g.v, shift), g.t)
                shift_num = np.array([x.evaluate() for x in shift_f])
                return element_numeric(
                    self.aleph, tuple(np.asarray(g.v_num) - shift_num), g.t)
        shift_num = phi1_numeric(self.aleph, g.t.evaluate()) @ np.asarray(self.gamma_num)
        return element_numeric(self.aleph,
                               tuple(np.asarray(g.v_num) - shift_num), g.t)


def _solve_phi1_field(aleph: MultiplicityFunction, t: ExactScalar,
                      rhs: FieldVector) -> Optional[FieldVector]:
    """Solve phi1(t) x = rhs blockwise (upper triangular Toeplitz)."""
    out = [R_ZERO] * aleph.dimension
    for lam, n, start in aleph.blocks:
        blk = rhs[start:start + n]
        coeffs = field_block_coeffs("phi1", t, lam, n)
        if coeffs is None:
            return None
        if coeffs[0].is_zero():
            return None  # singular on this block
        x = [R_ZERO] * n
        for j in range(n - 1, -1, -1):
            acc = blk[j]
            for k in range(j + 1, n):
                acc = acc - coeffs[k - j] * x[k]
            x[j] = acc / coeffs[0]
        out[start:start + n] = x
    return tuple(out)


def straighten(aleph: MultiplicityFunction, t0: ExactScalar,
               v0: Sequence) -> Straightening:
    """Automorphism sending [v0, t0] to [0, t0]; requires phi1(t0) invertible."""
    t0 = scalar(t0)
    if t0.is_zero() or k_set_contains(aleph, t0):
        raise SingularPhi("t0 lies in the singular set of phi1")
    v0_exact = tuple(scalar(x) for x in v0)
    if len(v0_exact) != aleph.dimension:
        raise AmbientMismatch("v0 has the wrong length")
    gamma = _solve_phi1_field(aleph, t0, field_vector_from_exact(v0_exact))
    if gamma is not None:
        gamma_num = tuple(x.evaluate() for x in gamma)
    else:
        mat = phi1_numeric(aleph, t0.evaluate())
        gamma_num = tuple(np.linalg.solve(mat, np.asarray(vec_eval(v0_exact))))
    return Straightening(aleph, t0, v0_exact, gamma, gamma_num)


# ---------------------------------------------------------------------------
# intersections
# ---------------------------------------------------------------------------


def intersect(h1: SubgroupDescriptor, h2: SubgroupDescriptor) -> SubgroupDescriptor:
    """Connected intersection, computed at the Lie algebra level.

    Solves { (u, t) : u - t*v0_1 in W_1 and u - t*v0_2 in W_2 } exactly
    (with t forced to 0 when either side is type 1) and renormalizes the
    solution space to a descriptor.
    """
    if h1.aleph != h2.aleph:
        raise AmbientMismatch("descriptors live over different ambients")
    aleph = h1.aleph
    d = aleph.dimension
    k1, k2 = len(h1.w_rows), len(h2.w_rows)
    with_t = h1.kind == "type2" and h2.kind == "type2"
    ncols = k1 + k2 + (1 if with_t else 0)
    if ncols == 0:
        return trivial_subgroup(aleph)
    rows = []
    v01 = h1.v0 if h1.v0 is not None else tuple(R_ZERO for _ in range(d))
    v02 = h2.v0 if h2.v0 is not None else tuple(R_ZERO for _ in range(d))
    for i in range(d):
        row = [h1.w_rows[j][i] for j in range(k1)]
        row += [-h2.w_rows[j][i] for j in range(k2)]
        if with_t:
            row.append(v01[i] - v02[i])
        rows.append(row)
    solutions = nullspace(rows)
    members: list[tuple[FieldVector, PiRat]] = []
    for sol in solutions:
        u = [R_ZERO] * d
        for j in range(k1):
            if not sol[j].is_zero():
                for i in range(d):
                    u[i] = u[i] + h1.w_rows[j][i] * sol[j]
        t = sol[-1] if with_t else R_ZERO
        if with_t and not t.is_zero():
            for i in range(d):
                u[i] = u[i] + v01[i] * t
        members.append((tuple(u), t))
    nonzero_t = next((m for m in members if not m[1].is_zero()), None)
    if nonzero_t is None:
        w = [u for u, _ in members if not _fvec_is_zero(u)]
        return _descriptor_from_span(aleph, "type1", w)
    u0, t0 = nonzero_t
    v0_new = _fvec_scale(u0, t0.inverse())
    w = []
    for u, t in members:
        if (u, t) == nonzero_t:
            continue
        shifted = _fvec_sub(u, _fvec_scale(u0, t / t0))
        if not _fvec_is_zero(shifted):
            w.append(shifted)
    return _descriptor_from_span(aleph, "type2", w, v0_new)


# ---------------------------------------------------------------------------
# minimal connected complex subgroup
# ---------------------------------------------------------------------------


def minimal_complex_subgroup(aleph: MultiplicityFunction,
                             xs: Sequence[GroupElement]) -> SubgroupDescriptor:
    """Smallest connected complex subgroup containing the given elements.

    For central inputs (the supported case) this is exact: with a chosen
    generator [u0, s0], s0 != 0, the direction v0 = u0/s0 works because
    phi1(t) acts as multiplication by t on ker J, and
    W = span{ v_x - (t_x/s0) u0 }.  Non-central inputs are handled by a
    generalized construction (v0 = phi1(s0)^{-1} u0, W closed under J) and
    should be treated as experimental: containment is validated, minimality
    is not guaranteed.
    """
    require_exact(xs)
    for x in xs:
        if x.aleph != aleph:
            raise AmbientMismatch("element lives over a different ambient")
    if not xs:
        return trivial_subgroup(aleph)
    if all(x.t.is_zero() for x in xs):
        w = [field_vector_from_exact(x.v) for x in xs]
        return _descriptor_from_span(aleph, "type1",
                                     [r for r in w if not _fvec_is_zero(r)])
    central = all(is_central(x) for x in xs)
    if central:
        x0 = next(x for x in xs if not x.t.is_zero())
        u0 = field_vector_from_exact(x0.v)
        s0 = PiRat.from_exact(x0.t)
        v0 = _fvec_scale(u0, s0.inverse())
        w = []
        for x in xs:
            row = _fvec_sub(field_vector_from_exact(x.v),
                            _fvec_scale(u0, PiRat.from_exact(x.t) / s0))
            if not _fvec_is_zero(row):
                w.append(row)
        return _descriptor_from_span(aleph, "type2", w, v0)
    # generalized, experimental branch
    x0 = next((x for x in xs
               if not x.t.is_zero() and not k_set_contains(aleph, x.t)), None)
    if x0 is None:
        raise SingularPhi(
            "no generator with t outside the singular set; the generalized "
            "construction does not apply")
    v0 = _solve_phi1_field(aleph, x0.t, field_vector_from_exact(x0.v))
    if v0 is None:
        raise AalieError(
            "generalized minimal-subgroup construction needs exactly "
            "representable exponentials for the generator directions")
    w: list[FieldVector] = []
    for x in xs:
        shift = apply_matfun_field(aleph, "phi1", x.t, v0)
        if shift is None:
            raise AalieError(
                "generalized minimal-subgroup construction needs exactly "
                "representable exponentials for the generator directions")
        row = _fvec_sub(field_vector_from_exact(x.v), tuple(shift))
        if not _fvec_is_zero(row):
            w.append(row)
    # close W under J so the type-2 form is valid
    while True:
        reduced, pivots = rref(w)
        images = [_apply_j_field(aleph, tuple(r)) for r in reduced]
        new = [img for img in images if not in_row_span(reduced, img)]
        if not new:
            w = [tuple(r) for r in reduced]
            break
        w = [tuple(r) for r in reduced] + new
    return _descriptor_from_span(aleph, "type2", w, v0)


def lift_subgroup(quotient, h: SubgroupDescriptor) -> SubgroupDescriptor:
    """A connected subgroup downstairs lifts to the unique connected subgroup
    upstairs with the same Lie algebra data: the descriptor is reused as is."""
    if quotient.aleph != h.aleph:
        raise AmbientMismatch("subgroup and quotient have different ambients")
    return h


# ---------------------------------------------------------------------------
# closure helper used by property tests
# ---------------------------------------------------------------------------


def closed_under_product(h: SubgroupDescriptor, g1: GroupElement,
                         g2: GroupElement, tol: Optional[float] = None) -> bool:
    return subgroup_contains(h, mul(g1, g2), tol)


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def _encode_field_scalar(x: PiRat) -> dict:
    e = x.to_exact()
    if e is not None:
        return encode_exact_scalar(e)
    return {
        "num": [encode_gaussian(c) for c in x.num.coeffs],
        "den": [encode_gaussian(c) for c in x.den.coeffs],
    }


def _parse_field_scalar(obj, path: str) -> PiRat:
    if isinstance(obj, dict) and ("num" in obj or "den" in obj):
        num = PiPoly(tuple(parse_gaussian(c, f"{path}.num[{k}]")
                           for k, c in enumerate(obj.get("num", []))))
        den_raw = obj.get("den", [{"re": "1", "im": "0"}])
        den = PiPoly(tuple(parse_gaussian(c, f"{path}.den[{k}]")
                           for k, c in enumerate(den_raw)))
        return PiRat.make(num, den)
    return PiRat.from_exact(parse_exact_scalar(obj, path))


def encode_descriptor(h: SubgroupDescriptor) -> dict:
    out = {
        "kind": h.kind,
        "W": [[_encode_field_scalar(x) for x in row] for row in h.w_rows],
    }
    if h.kind == "type2":
        out["v0"] = [_encode_field_scalar(x) for x in h.v0]
    return out


def parse_descriptor(aleph: MultiplicityFunction, obj, path: str = "subgroup"
                     ) -> SubgroupDescriptor:
    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object")
    kind = obj.get("kind")
    if kind not in ("type1", "type2"):
        raise ParseError(f"{path}.kind", "must be 'type1' or 'type2'")
    w_raw = obj.get("W", [])
    if not isinstance(w_raw, list):
        raise ParseError(f"{path}.W", "expected a list of vectors")
    rows = []
    for r, row in enumerate(w_raw):
        if not isinstance(row, list):
            raise ParseError(f"{path}.W[{r}]", "expected a vector")
        rows.append(tuple(_parse_field_scalar(x, f"{path}.W[{r}][{k}]")
                          for k, x in enumerate(row)))
    v0 = None
    if kind == "type2" and "v0" in obj:
        raw = obj["v0"]
        if not isinstance(raw, list):
            raise ParseError(f"{path}.v0", "expected a vector")
        v0 = tuple(_parse_field_scalar(x, f"{path}.v0[{k}]")
                   for k, x in enumerate(raw))
    try:
        return make_descriptor(aleph, kind, rows, v0)
    except AalieError:
        raise
    except ValueError as exc:
        raise ParseError(path, str(exc)) from None
