"""Group law, embeddings, exponential map, center, commutators."""

import random

import numpy as np
import pytest

from aalie.errors import AmbientMismatch, NotInAbelianDomain
from aalie.exactnum import PI, TWO_PI, ZERO, gaussian, scalar, vector
from aalie.group import (
    algebra_element,
    algebra_embed_threeblock,
    center,
    commutator,
    element,
    embed,
    exp_map,
    identity,
    inverse,
    is_central,
    is_simply_connected_twoblock,
    log_abelian,
    mul,
)
from aalie.matrixfn import series_exp_oracle
from aalie.sampling import random_aleph, random_element
from aalie.spectrum import TAlephKind, multiplicity_function

I = gaussian(0, 1)
HEIS = multiplicity_function([(0, 2, 1)])
CIRCLE = multiplicity_function([(I, 1, 1)])
MIXED = multiplicity_function([(0, 1, 1), (I, 1, 1)])


def test_mul_heisenberg_example():
    # e^{J}(0,1) = (1,1), computed from the 2x2 exponential by hand
    g = element(HEIS, [1, 0], 1)
    h = element(HEIS, [0, 1], 2)
    p = mul(g, h)
    assert p.exact
    assert p.v == vector([2, 1])
    assert p.t == scalar(3)
    # cross-check against the three-block matrix product
    np.testing.assert_allclose(embed(p), embed(g) @ embed(h), atol=1e-12)


def test_mul_identity():
    g = element(MIXED, [gaussian(2, 1), gaussian(0, 3)], PI)
    e = identity(MIXED)
    assert mul(g, e).v == g.v and mul(g, e).t == g.t
    assert mul(e, g).v == g.v


def test_central_elements_commute():
    z = element(MIXED, [gaussian(3, 1), 0], TWO_PI)
    assert is_central(z)
    g = element(MIXED, [gaussian(1, 1), gaussian(0, 2)], scalar(1))
    assert mul(z, g).v == mul(g, z).v
    assert mul(z, g).t == mul(g, z).t


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        mul(identity(HEIS), identity(CIRCLE))


def test_inverse():
    assert inverse(identity(MIXED)).v == identity(MIXED).v
    g = element(MIXED, [gaussian(2, -1), 0], 0)  # v in ker J, t = 0
    gi = inverse(g)
    assert gi.exact and gi.v == vector([gaussian(-2, 1), 0])
    h = element(HEIS, [1, 0], 1)
    prod = mul(h, inverse(h))
    assert np.max(np.abs(np.asarray(prod.v_num))) < 1e-12
    assert prod.t.is_zero()


def test_embed_identity_and_homomorphism():
    np.testing.assert_allclose(embed(identity(MIXED)), np.eye(4), atol=0)
    rng = random.Random("embed-hom")
    for _ in range(50):
        a = random_aleph(rng, max_dim=6)
        g, h = random_element(rng, a), random_element(rng, a)
        lhs = embed(mul(g, h))
        rhs = embed(g) @ embed(h)
        assert np.max(np.abs(lhs - rhs)) < 1e-10 * (1 + np.max(np.abs(rhs)))


def test_twoblock_not_injective_when_periodic():
    g = element(CIRCLE, [0], TWO_PI)
    np.testing.assert_allclose(embed(g, "twoBlock"), np.eye(2), atol=1e-12)
    three = embed(g, "threeBlock")
    assert abs(three[2, 0] - TWO_PI.evaluate()) < 1e-12  # t slot remembers


def test_exp_map_nilpotent_example():
    x = algebra_element(HEIS, [0, 1], 2)
    g = exp_map(x)
    assert g.exact
    assert g.v == vector([1, 1]) and g.t == scalar(2)
    # oracle: series of the three-block algebra embedding
    np.testing.assert_allclose(embed(g),
                               series_exp_oracle(algebra_embed_threeblock(x)),
                               atol=1e-12)


def test_exp_map_kernel_is_identity_map():
    x = algebra_element(MIXED, [gaussian(5, 2), 0], PI)
    g = exp_map(x)
    assert g.exact and g.v == x.v and g.t == x.t


def test_exp_map_zero_vector():
    x = algebra_element(CIRCLE, [0], scalar(gaussian(1, 1)))
    g = exp_map(x)
    assert g.exact and g.v == vector([0]) and g.t == x.t


def test_log_abelian():
    g = element(MIXED, [gaussian(7), 0], PI)
    x = log_abelian(g)
    back = exp_map(x)
    assert back.v == g.v and back.t == g.t
    assert log_abelian(identity(MIXED)).v == vector([0, 0])
    with pytest.raises(NotInAbelianDomain):
        log_abelian(element(HEIS, [0, 1], 0))


def test_center_descriptions():
    c = center(MIXED)
    assert len(c.kernel_basis) == 1
    assert c.t_part.kind is TAlephKind.LATTICE and c.t_part.z0 == TWO_PI
    c2 = center(multiplicity_function([(I, 2, 1)]))
    assert c2.kernel_basis == () and c2.t_part.kind is TAlephKind.TRIVIAL
    c3 = center(HEIS)
    assert len(c3.kernel_basis) == 1 and c3.t_part.kind is TAlephKind.TRIVIAL


def test_is_central_cases():
    assert is_central(element(MIXED, [gaussian(1, 2), 0], TWO_PI.scale(3)))
    assert not is_central(element(HEIS, [0, 1], 0))
    assert is_central(identity(HEIS))


def test_commutator():
    g = element(HEIS, [0, 1], 0)
    h = element(HEIS, [0, 0], 1)
    c = commutator(g, h)
    assert c.exact and c.t.is_zero()
    assert c.v == vector([-1, 0])
    # cross-check via explicit products
    byhand = mul(mul(g, h), mul(inverse(g), inverse(h)))
    assert np.max(np.abs(np.asarray(byhand.v_num) - np.asarray(c.v_num))) < 1e-12
    # central or equal arguments give the identity
    z = element(MIXED, [gaussian(1), 0], 0)
    w = element(MIXED, [0, gaussian(2)], scalar(1))
    assert all(x.is_zero() for x in commutator(z, w).v)
    assert np.max(np.abs(np.asarray(commutator(w, w).v_num))) < 1e-12


def test_simply_connected_twoblock():
    assert is_simply_connected_twoblock(HEIS)
    assert not is_simply_connected_twoblock(CIRCLE)
    # real eigenvalue 1 still has 2*pi*i periods: not simply connected
    assert not is_simply_connected_twoblock(multiplicity_function([(1, 1, 1)]))


def test_associativity_random():
    rng = random.Random("assoc")
    for _ in range(40):
        a = random_aleph(rng, max_dim=5)
        g, h, k = (random_element(rng, a) for _ in range(3))
        lhs, rhs = mul(mul(g, h), k), mul(g, mul(h, k))
        mag = 1 + max(np.max(np.abs(lhs.v_num)), np.max(np.abs(rhs.v_num)))
        assert np.max(np.abs(np.asarray(lhs.v_num) - np.asarray(rhs.v_num))) < 1e-9 * mag
        assert lhs.t == rhs.t
