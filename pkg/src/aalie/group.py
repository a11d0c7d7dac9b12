"""The simply connected group C^d x| C in bracket coordinates.

Elements are written [v, t] with the product [v,t][u,s] = [v + e^{tJ}u, t+s].
The t-coordinate of any element built here is always exact; the vector part
is exact whenever the required e^{tJ}-action stays inside the 2*pi*i module,
and otherwise the element is tagged approximate and carries float
coordinates.  Downstream lattice computations accept only exact elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import AmbientMismatch, InexactGenerator, NotInAbelianDomain
from .exactnum import (
    ExactScalar,
    ExactVector,
    ScalarLike,
    ZERO,
    default_tolerance,
    scalar,
    vec_add,
    vec_eval,
    vec_is_zero,
    vec_neg,
    vec_sub,
    zero_vector,
)
from .matrixfn import (
    apply_matfun_exact,
    exp_tj,
    kernel_basis_j,
    matfun_field_matrix,
    phi0,
)
from .pifield import PiRat, R_ONE, R_ZERO, PiPoly, P_ONE
from .spectrum import (
    MultiplicityFunction,
    TAlephResult,
    in_t_aleph,
    jordan_matrix,
    t_aleph,
)


@dataclass(frozen=True)
class GroupElement:
    aleph: MultiplicityFunction
    t: ExactScalar
    v: Optional[ExactVector]          # exact coordinates, or None
    v_num: tuple[complex, ...]        # always populated

    @property
    def exact(self) -> bool:
        return self.v is not None

    @property
    def dimension(self) -> int:
        return len(self.v_num)

    def t_num(self) -> complex:
        return self.t.evaluate()

    def __repr__(self) -> str:
        tag = "exact" if self.exact else "approx"
        return f"GroupElement({tag}, v={self.v_num}, t={self.t_num()})"


def element(aleph: MultiplicityFunction, v: Sequence[ScalarLike],
            t: ScalarLike = 0) -> GroupElement:
    """Exact element [v, t]."""
    coords = tuple(scalar(x) for x in v)
    if len(coords) != aleph.dimension:
        raise AmbientMismatch(
            f"vector length {len(coords)} != ambient dimension {aleph.dimension}")
    return GroupElement(aleph, scalar(t), coords, tuple(vec_eval(coords)))


def element_numeric(aleph: MultiplicityFunction, v_num: Sequence[complex],
                    t: ScalarLike) -> GroupElement:
    v_num = tuple(complex(x) for x in v_num)
    if len(v_num) != aleph.dimension:
        raise AmbientMismatch(
            f"vector length {len(v_num)} != ambient dimension {aleph.dimension}")
    return GroupElement(aleph, scalar(t), None, v_num)


def identity(aleph: MultiplicityFunction) -> GroupElement:
    return element(aleph, zero_vector(aleph.dimension), ZERO)


def _check_ambient(g: GroupElement, h: GroupElement) -> None:
    if g.aleph != h.aleph:
        raise AmbientMismatch("elements live over different multiplicity functions")


def _exp_action_num(aleph: MultiplicityFunction, t: ExactScalar,
                    u: Sequence[complex]) -> np.ndarray:
    return exp_tj(aleph, t.evaluate()) @ np.asarray(u, dtype=complex)


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    """[v,t][u,s] = [v + e^{tJ} u, t + s]."""
    _check_ambient(g, h)
    t_out = g.t + h.t
    if g.exact and h.exact:
        action = apply_matfun_exact(g.aleph, "exp", g.t, h.v)
        if action is not None:
            coords = vec_add(g.v, action)
            return GroupElement(g.aleph, t_out, coords, tuple(vec_eval(coords)))
    v_num = np.asarray(g.v_num) + _exp_action_num(g.aleph, g.t, h.v_num)
    return GroupElement(g.aleph, t_out, None, tuple(v_num))


def inverse(g: GroupElement) -> GroupElement:
    """[v,t]^{-1} = [e^{-tJ}(-v), -t]."""
    t_out = -g.t
    if g.exact:
        action = apply_matfun_exact(g.aleph, "exp", t_out, vec_neg(g.v))
        if action is not None:
            return GroupElement(g.aleph, t_out, action, tuple(vec_eval(action)))
    v_num = _exp_action_num(g.aleph, t_out, [-x for x in g.v_num])
    return GroupElement(g.aleph, t_out, None, tuple(v_num))


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """g h g^{-1} h^{-1} = [(e^{tJ}-1)u - (e^{sJ}-1)v, 0]; the t-part is exactly 0."""
    _check_ambient(g, h)
    if g.exact and h.exact:
        a = apply_matfun_exact(g.aleph, "exp", g.t, h.v)
        b = apply_matfun_exact(g.aleph, "exp", h.t, g.v)
        if a is not None and b is not None:
            coords = vec_sub(vec_sub(a, h.v), vec_sub(b, g.v))
            return GroupElement(g.aleph, ZERO, coords, tuple(vec_eval(coords)))
    a_num = _exp_action_num(g.aleph, g.t, h.v_num) - np.asarray(h.v_num)
    b_num = _exp_action_num(g.aleph, h.t, g.v_num) - np.asarray(g.v_num)
    return GroupElement(g.aleph, ZERO, None, tuple(a_num - b_num))


# ---------------------------------------------------------------------------
# matrix embeddings
# ---------------------------------------------------------------------------


def embed(g: GroupElement, variant: str = "threeBlock") -> np.ndarray:
    """Faithful (d+2)-dim or non-faithful (d+1)-dim matrix picture.

    The two-block form drops the t slot and is injective only when the
    period set of e^{tJ} is trivial.
    """
    d = g.dimension
    e = exp_tj(g.aleph, g.t.evaluate())
    v = np.asarray(g.v_num, dtype=complex)
    if variant == "threeBlock":
        m = np.zeros((d + 2, d + 2), dtype=complex)
        m[0, 0] = 1.0
        m[1:d + 1, 0] = v
        m[1:d + 1, 1:d + 1] = e
        m[d + 1, 0] = g.t.evaluate()
        m[d + 1, d + 1] = 1.0
        return m
    if variant == "twoBlock":
        m = np.zeros((d + 1, d + 1), dtype=complex)
        m[0, 0] = 1.0
        m[1:, 0] = v
        m[1:, 1:] = e
        return m
    raise ValueError("variant must be 'threeBlock' or 'twoBlock'")


def embed_exact_threeblock(g: GroupElement) -> Optional[list[list[PiRat]]]:
    """The 3-block matrix with entries in Q(i)(pi), when representable."""
    if not g.exact:
        return None
    e = matfun_field_matrix(g.aleph, "exp", g.t)
    if e is None:
        return None
    d = g.dimension
    m = [[R_ZERO] * (d + 2) for _ in range(d + 2)]
    m[0][0] = R_ONE
    for j in range(d):
        m[j + 1][0] = PiRat.from_exact(g.v[j])
        for k in range(d):
            m[j + 1][k + 1] = e[j][k]
    m[d + 1][0] = PiRat.from_exact(g.t)
    m[d + 1][d + 1] = R_ONE
    return m


# ---------------------------------------------------------------------------
# exponential map and its Abelian inverse
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraElement:
    aleph: MultiplicityFunction
    v: ExactVector
    t: ExactScalar


def algebra_element(aleph: MultiplicityFunction, v: Sequence[ScalarLike],
                    t: ScalarLike = 0) -> AlgebraElement:
    coords = tuple(scalar(x) for x in v)
    if len(coords) != aleph.dimension:
        raise AmbientMismatch(
            f"vector length {len(coords)} != ambient dimension {aleph.dimension}")
    return AlgebraElement(aleph, coords, scalar(t))


def algebra_embed_threeblock(x: AlgebraElement) -> np.ndarray:
    """The (d+2)-dim matrix [[0,0,0],[v, tJ, 0],[t,0,0]]."""
    d = x.aleph.dimension
    m = np.zeros((d + 2, d + 2), dtype=complex)
    tj = x.t.evaluate() * jordan_matrix(x.aleph).dense()
    m[1:d + 1, 0] = vec_eval(x.v)
    m[1:d + 1, 1:d + 1] = tj
    m[d + 1, 0] = x.t.evaluate()
    return m


def exp_map(x: AlgebraElement) -> GroupElement:
    """exp(v, t) = [phi0(t) v, t]; exact on ker(J) + C and all other
    module-representable cases."""
    coords = apply_matfun_exact(x.aleph, "phi0", x.t, x.v)
    if coords is not None:
        return GroupElement(x.aleph, x.t, coords, tuple(vec_eval(coords)))
    v_num = phi0(x.aleph, x.t.evaluate()) @ np.asarray(vec_eval(x.v), dtype=complex)
    return GroupElement(x.aleph, x.t, None, tuple(v_num))


def in_kernel_j(aleph: MultiplicityFunction, v: ExactVector) -> bool:
    kernel = set(aleph.kernel_coordinates)
    return all(v[j].is_zero() for j in range(len(v)) if j not in kernel)


def log_abelian(g: GroupElement) -> AlgebraElement:
    """Inverse of exp on the Abelian part ker(J) + C, where exp(v,t) = [v,t]."""
    if not g.exact:
        raise NotInAbelianDomain("logarithm requires exact coordinates")
    if not in_kernel_j(g.aleph, g.v):
        raise NotInAbelianDomain("vector part is not in ker(J)")
    return AlgebraElement(g.aleph, g.v, g.t)


# ---------------------------------------------------------------------------
# the center
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CenterDescription:
    """Z(G) = { [u, s] : u in span(kernel_basis), s in the period set }.

    The identity component replaces the period set by {0}.
    """

    kernel_basis: tuple[ExactVector, ...]
    t_part: TAlephResult


def center(aleph: MultiplicityFunction) -> CenterDescription:
    return CenterDescription(kernel_basis_j(aleph), t_aleph(aleph))


def is_central(g: GroupElement) -> bool:
    """Exact for exact elements: v in ker(J) and t a period of e^{tJ}."""
    if not in_t_aleph(g.aleph, g.t):
        return False
    if g.exact:
        return in_kernel_j(g.aleph, g.v)
    tol = default_tolerance()
    kernel = set(g.aleph.kernel_coordinates)
    return all(abs(x) <= tol for j, x in enumerate(g.v_num) if j not in kernel)


def is_simply_connected_twoblock(aleph: MultiplicityFunction) -> bool:
    """The (d+1)-dim representation is simply connected iff the period set
    is trivial."""
    return t_aleph(aleph).is_trivial


def require_exact(gens: Sequence[GroupElement]) -> None:
    for g in gens:
        if not g.exact:
            raise InexactGenerator("operation requires exact generators")


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def parse_element(aleph: MultiplicityFunction, obj, path: str = "element") -> GroupElement:
    from .errors import ParseError
    from .exactnum import parse_exact_scalar

    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object with v/t")
    raw_v = obj.get("v")
    if not isinstance(raw_v, list):
        raise ParseError(f"{path}.v", "expected a coordinate list")
    if len(raw_v) != aleph.dimension:
        raise ParseError(f"{path}.v",
                         f"expected {aleph.dimension} coordinates, got {len(raw_v)}")
    coords = tuple(parse_exact_scalar(x, f"{path}.v[{k}]")
                   for k, x in enumerate(raw_v))
    t = parse_exact_scalar(obj.get("t", {}), f"{path}.t")
    return element(aleph, coords, t)


def encode_element(g: GroupElement) -> dict:
    from .errors import InexactGenerator as _IG
    from .exactnum import encode_exact_scalar

    if not g.exact:
        raise _IG("approximate elements have no exact encoding")
    return {"v": [encode_exact_scalar(x) for x in g.v],
            "t": encode_exact_scalar(g.t)}


def parse_algebra_element(aleph: MultiplicityFunction, obj,
                          path: str = "element") -> AlgebraElement:
    g = parse_element(aleph, obj, path)
    return AlgebraElement(aleph, g.v, g.t)
