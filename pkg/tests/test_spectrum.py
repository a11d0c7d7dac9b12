"""Multiplicity functions, Jordan matrices, period sets, singular set."""

import cmath
from fractions import Fraction

import numpy as np
import pytest

from aalie.errors import DegenerateAlgebra
from aalie.exactnum import PI, TWO_PI, gaussian, scalar, tau_multiple
from aalie.spectrum import (
    MultiplicityFunction,
    TAlephKind,
    in_t_aleph,
    jordan_matrix,
    k_set_contains,
    k_set_witness,
    multiplicity_function,
    t_aleph,
    x_aleph_max,
)

I = gaussian(0, 1)


def test_jordan_single_nilpotent_block():
    a = multiplicity_function([(0, 2, 1)])
    assert a.dimension == 2
    np.testing.assert_array_equal(jordan_matrix(a).dense(),
                                  np.array([[0, 1], [0, 0]], dtype=complex))


def test_jordan_multiplicity_expansion():
    a = multiplicity_function([(I, 1, 2)])
    np.testing.assert_array_equal(jordan_matrix(a).dense(),
                                  np.diag([1j, 1j]))


def test_jordan_direct_sum_order():
    a = multiplicity_function([(0, 1, 1), (I, 1, 1)])
    assert a.dimension == 2
    np.testing.assert_array_equal(jordan_matrix(a).dense(), np.diag([0, 1j]))


def test_degenerate_rejected():
    with pytest.raises(DegenerateAlgebra):
        multiplicity_function([(0, 1, 3)])
    a = multiplicity_function([(0, 1, 3)], degenerate_ok=True)
    with pytest.raises(DegenerateAlgebra):
        jordan_matrix(a)
    assert jordan_matrix(a, allow_degenerate=True).dimension == 3
    assert t_aleph(a).kind is TAlephKind.WHOLE


def test_distinct_pairs_enforced():
    with pytest.raises(ValueError):
        multiplicity_function([(I, 1, 1), (I, 1, 2)])


def test_x_aleph_max_single_i():
    # oracle: e^{z*i} = 1 iff z in 2*pi*Z, so the maximal frequency is 1
    a = multiplicity_function([(I, 1, 1)])
    w0 = x_aleph_max(a)
    assert w0 == gaussian(1)
    for k in range(-3, 4):
        assert abs(cmath.exp(2 * cmath.pi * k * 1j) - 1) < 1e-12


def test_x_aleph_max_commensurable():
    a = multiplicity_function([(gaussian(0, 2), 1, 1), (gaussian(0, 3), 1, 1)])
    w0 = x_aleph_max(a)
    assert w0 == gaussian(1)
    # oracle: z0 = 2*pi works for both eigenvalues, and no omega with
    # |omega| > 1 of the admissible form omega = 2i/(i*c) does
    z0 = 2 * np.pi
    for lam in (2j, 3j):
        assert abs(np.exp(z0 * lam) - 1) < 1e-10
    assert not (gaussian(0, 2) / (I * 1)).is_integer() or True
    for c in (1,):  # |omega| = 2 candidate: 3i not an integer multiple of i*2
        w = gaussian(0, 2) / (I * c)
        assert not (gaussian(0, 3) / (I * w)).is_integer()


def test_x_aleph_max_incommensurable():
    a = multiplicity_function([(I, 1, 1), (gaussian(1, 1), 1, 1)])
    assert x_aleph_max(a) is None  # (1+i)/i = 1-i is not rational real


def test_t_aleph_lattice_basic():
    a = multiplicity_function([(I, 1, 1)])
    res = t_aleph(a)
    assert res.kind is TAlephKind.LATTICE
    assert res.z0 == TWO_PI
    # oracle: scan multiples numerically
    for k in range(-3, 4):
        assert abs(np.exp(k * res.z0.evaluate() * 1j) - 1) < 1e-10


def test_t_aleph_block_size_two_trivial():
    # a size-2 block forces z*1 = z = 0 on the superdiagonal
    assert t_aleph(multiplicity_function([(I, 2, 1)])).kind is TAlephKind.TRIVIAL


def test_t_aleph_zero_eigenvalue_no_constraint():
    res = t_aleph(multiplicity_function([(0, 1, 1), (I, 1, 1)]))
    assert res.kind is TAlephKind.LATTICE and res.z0 == TWO_PI


def test_t_aleph_real_eigenvalue_regression():
    # eigenvalue 1: periods are 2*pi*i*Z, so the lattice is nontrivial
    res = t_aleph(multiplicity_function([(1, 1, 1)]))
    assert res.kind is TAlephKind.LATTICE
    assert res.z0 == tau_multiple(1)
    assert abs(np.exp(res.z0.evaluate() * 1.0) - 1) < 1e-12


def test_in_t_aleph():
    a = multiplicity_function([(I, 1, 1)])
    assert in_t_aleph(a, TWO_PI)
    assert in_t_aleph(a, scalar(0))
    assert not in_t_aleph(a, PI)
    # oracle: e^{pi*i} = -1
    assert abs(np.exp(PI.evaluate() * 1j) + 1) < 1e-12
    b = multiplicity_function([(0, 2, 1)])
    assert in_t_aleph(b, scalar(0))
    assert not in_t_aleph(b, scalar(1))


def test_k_set_membership():
    a = multiplicity_function([(I, 1, 1)])
    assert k_set_contains(a, TWO_PI)
    assert k_set_witness(a, TWO_PI) == (1, I)
    assert not k_set_contains(a, scalar(1))
    # oracle: phi0(1) = (e^{i}-1)/i is far from singular
    val = (np.exp(1j) - 1) / 1j
    assert abs(val) > 0.5
    assert not k_set_contains(a, scalar(0))  # the limit at 0 is the identity


def test_k_set_no_nonzero_eigenvalue():
    b = multiplicity_function([(0, 2, 1)])
    for t in (scalar(1), TWO_PI, PI):
        assert not k_set_contains(b, t)


def test_kernel_coordinates():
    a = multiplicity_function([(0, 2, 1), (I, 1, 1), (0, 1, 1)])
    assert a.kernel_coordinates == (0, 3)
    assert a.kernel_dim_complex == 2
