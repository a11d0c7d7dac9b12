"""Subgroup descriptors: validation, membership, straightening, intersections."""

import random

import numpy as np
import pytest

from aalie.errors import DependentBasis, NotInvariant, SingularPhi
from aalie.exactnum import PI, TWO_PI, ZERO, basis_vector, gaussian, scalar, vector
from aalie.group import element, identity, mul
from aalie.quotients import validate_quotient
from aalie.sampling import random_aleph, random_element
from aalie.spectrum import multiplicity_function
from aalie.subgroups import (
    element_of,
    intersect,
    lift_subgroup,
    make_descriptor,
    minimal_complex_subgroup,
    straighten,
    subgroup_contains,
    t_axis_subgroup,
    trivial_subgroup,
)

I = gaussian(0, 1)
HEIS = multiplicity_function([(0, 2, 1)])
CIRCLE = multiplicity_function([(I, 1, 1)])
MIXED = multiplicity_function([(0, 1, 1), (I, 1, 1)])


def test_make_descriptor_type1():
    h = make_descriptor(HEIS, "type1", [basis_vector(2, 0)])
    assert h.kind == "type1" and h.dim_complex == 1 and h.dim_real == 2


def test_make_descriptor_not_invariant():
    # J e2 = e1 is not in span{e2}
    with pytest.raises(NotInvariant):
        make_descriptor(HEIS, "type2", [basis_vector(2, 1)], [ZERO, ZERO])


def test_make_descriptor_full_space_invariant():
    h = make_descriptor(HEIS, "type2", [basis_vector(2, 0), basis_vector(2, 1)],
                        [scalar(3), scalar(1)])
    assert h.dim_complex == 3
    # v0 is reduced modulo W, which here is everything
    assert all(x.is_zero() for x in h.v0)


def test_dependent_basis_rejected():
    with pytest.raises(DependentBasis):
        make_descriptor(MIXED, "type1",
                        [vector([1, 0]), vector([gaussian(0, 1), 0])])


def test_type1_membership():
    h = make_descriptor(MIXED, "type1", [basis_vector(2, 0)])
    assert subgroup_contains(h, element(MIXED, [gaussian(4, 7), 0], 0))
    assert not subgroup_contains(h, element(MIXED, [gaussian(4, 7), 0], 1))
    assert not subgroup_contains(h, element(MIXED, [0, gaussian(1)], 0))


def test_t_axis_membership():
    h = t_axis_subgroup(MIXED)
    for t in (ZERO, scalar(1), TWO_PI, PI, scalar(gaussian(2, 3))):
        assert subgroup_contains(h, element(MIXED, [0, 0], t))
    assert not subgroup_contains(h, element(MIXED, [1, 0], 0))


def test_type2_membership_with_shift():
    # phi1(1) = 1 + N/2 sends e2 to (1/2, 1)
    h = make_descriptor(HEIS, "type2", [basis_vector(2, 0)],
                        [ZERO, scalar(1)])
    g = element(HEIS, [gaussian(1, 2) + gaussian(1, 2) * 0, 0], 0)
    inside = element(HEIS, [scalar(gaussian(1, 2)).scale(1), 0], 0)
    assert subgroup_contains(h, element(HEIS, [gaussian(1, 2), 0], 0))
    shifted = element(HEIS, [gaussian(1, 2), 1], 1)  # (1/2,1) + (e1-part)
    assert subgroup_contains(h, shifted)
    assert not subgroup_contains(h, element(HEIS, [0, 1], 0))


def test_element_of_produces_members():
    h = make_descriptor(HEIS, "type2", [basis_vector(2, 0)], [ZERO, scalar(1)])
    g = element_of(h, [gaussian(2)], scalar(1))
    assert g.exact
    assert subgroup_contains(h, g)
    assert g.v == vector([gaussian(5, 0) / 2, 1])  # 2*e1 + phi1(1)e2


def test_straighten_maps_generator_to_axis():
    v0 = [gaussian(2, 1)]
    st = straighten(CIRCLE, scalar(1), v0)
    g0 = element(CIRCLE, v0, 1)
    out = st.apply(g0)
    assert out.exact and all(x.is_zero() for x in out.v) and out.t == scalar(1)
    assert st.apply(identity(CIRCLE)).v == identity(CIRCLE).v


def test_straighten_is_homomorphism():
    rng = random.Random("straighten")
    for _ in range(25):
        a = random_aleph(rng, max_dim=4)
        t0 = scalar(1)
        from aalie.spectrum import k_set_contains

        if k_set_contains(a, t0):
            continue
        v0 = [gaussian(rng.randint(-2, 2), rng.randint(-2, 2))
              for _ in range(a.dimension)]
        st = straighten(a, t0, v0)
        g, h = random_element(rng, a), random_element(rng, a)
        lhs = st.apply(mul(g, h))
        rhs = mul(st.apply(g), st.apply(h))
        mag = 1 + np.max(np.abs(rhs.v_num))
        assert np.max(np.abs(np.asarray(lhs.v_num) - np.asarray(rhs.v_num))) < 1e-8 * mag
        assert lhs.t == rhs.t


def test_straighten_rejects_singular_parameter():
    with pytest.raises(SingularPhi):
        straighten(CIRCLE, TWO_PI, [scalar(1)])
    with pytest.raises(SingularPhi):
        straighten(CIRCLE, ZERO, [scalar(1)])


def test_intersect_type1_type1():
    h1 = make_descriptor(MIXED, "type1", [basis_vector(2, 0)])
    h2 = make_descriptor(MIXED, "type1",
                         [basis_vector(2, 0), basis_vector(2, 1)])
    meet = intersect(h1, h2)
    assert meet == h1
    h3 = make_descriptor(MIXED, "type1", [basis_vector(2, 1)])
    assert intersect(h1, h3) == trivial_subgroup(MIXED)


def test_intersect_type1_type2_forces_t_zero():
    h1 = make_descriptor(HEIS, "type1", [basis_vector(2, 0)])
    h2 = make_descriptor(HEIS, "type2", [basis_vector(2, 0), basis_vector(2, 1)],
                         [ZERO, ZERO])
    meet = intersect(h1, h2)
    assert meet.kind == "type1"
    assert meet == h1


def test_intersect_type2_same_v0():
    v0 = [ZERO, scalar(1)]
    h1 = make_descriptor(HEIS, "type2", [basis_vector(2, 0)], v0)
    h2 = make_descriptor(HEIS, "type2",
                         [basis_vector(2, 0), basis_vector(2, 1)], v0)
    meet = intersect(h1, h2)
    assert meet == h1
    assert intersect(h1, h1) == h1
    assert intersect(h2, h1) == meet


def test_minimal_subgroup_type1():
    xs = [element(MIXED, [1, 0], 0), element(MIXED, [gaussian(0, 1), 0], 0)]
    c = minimal_complex_subgroup(MIXED, xs)
    assert c.kind == "type1" and len(c.w_rows) == 1
    for x in xs:
        assert subgroup_contains(c, x)


def test_minimal_subgroup_t_axis():
    c = minimal_complex_subgroup(CIRCLE, [element(CIRCLE, [0], TWO_PI)])
    assert c.kind == "type2" and not c.w_rows
    assert all(x.is_zero() for x in c.v0)


def test_minimal_subgroup_empty():
    assert minimal_complex_subgroup(MIXED, []) == trivial_subgroup(MIXED)


def test_minimal_subgroup_mixed_central_generator():
    # central generator with both a kernel part and a period t-part:
    # v0 = u0/s0 leaves the 2*pi*i module but stays exactly representable
    x = element(MIXED, [1, 0], TWO_PI)
    c = minimal_complex_subgroup(MIXED, [x])
    assert c.kind == "type2"
    assert subgroup_contains(c, x)
    assert subgroup_contains(c, mul(x, x))
    assert not subgroup_contains(c, element(MIXED, [0, 1], 0))


def test_lift_roundtrip():
    q = validate_quotient(MIXED, [element(MIXED, [1, 0], 0)])
    h = make_descriptor(MIXED, "type1", [basis_vector(2, 0)])
    assert lift_subgroup(q, h) == h
    assert lift_subgroup(q, t_axis_subgroup(MIXED)) == t_axis_subgroup(MIXED)


def test_descriptor_json_roundtrip():
    from aalie.subgroups import encode_descriptor, parse_descriptor

    h = make_descriptor(HEIS, "type2", [basis_vector(2, 0)], [ZERO, scalar(1)])
    assert parse_descriptor(HEIS, encode_descriptor(h)) == h
    # a descriptor whose v0 needs a denominator beyond the module
    c = minimal_complex_subgroup(MIXED, [element(MIXED, [1, 0], TWO_PI)])
    assert parse_descriptor(MIXED, encode_descriptor(c)) == c
