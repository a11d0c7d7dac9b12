"""Closed-form matrix functions, the series oracle, kernels, ranks, HNF/SNF."""

import random
from fractions import Fraction

import numpy as np
import pytest

from aalie.errors import DimensionMismatch
from aalie.exactnum import (
    ExactScalar,
    ONE,
    PI,
    TWO_PI,
    ZERO,
    basis_vector,
    gaussian,
    scalar,
    tau_multiple,
    vector,
)
from aalie.matrixfn import (
    apply_matfun_exact,
    exp_tj,
    hermite_normal_form,
    hermite_smith,
    integer_kernel,
    kernel_basis_exp_minus_id,
    kernel_basis_j,
    phi0,
    phi1,
    rank_exact,
    row_module_contains,
    series_exp_oracle,
    smith_normal_form,
)
from aalie.sampling import random_aleph, random_exact_action_time, random_exact_scalar
from aalie.spectrum import jordan_matrix, multiplicity_function

I = gaussian(0, 1)


def test_exp_tj_nilpotent():
    a = multiplicity_function([(0, 2, 1)])
    np.testing.assert_allclose(exp_tj(a, 1.0), [[1, 1], [0, 1]], atol=1e-15)


def test_exp_tj_euler():
    a = multiplicity_function([(I, 1, 1)])
    np.testing.assert_allclose(exp_tj(a, 2 * np.pi), [[1]], atol=1e-12)


def test_exp_tj_at_zero():
    a = multiplicity_function([(I, 2, 1), (0, 1, 1)])
    np.testing.assert_allclose(exp_tj(a, 0.0), np.eye(3), atol=0)


def test_phi1_scalar_block():
    a = multiplicity_function([(0, 1, 1), (I, 1, 1)])
    m = phi1(a, 0.7)
    assert abs(m[0, 0] - 0.7) < 1e-15  # acts as multiplication by t on ker J


def test_phi1_nilpotent_two_terms():
    a = multiplicity_function([(0, 2, 1)])
    np.testing.assert_allclose(phi1(a, 2.0), [[2, 2], [0, 2]], atol=1e-14)
    np.testing.assert_allclose(phi1(a, 0.0), np.zeros((2, 2)), atol=0)


def test_phi0_values():
    a = multiplicity_function([(0, 2, 1)])
    np.testing.assert_allclose(phi0(a, 2.0), [[1, 1], [0, 1]], atol=1e-14)
    np.testing.assert_allclose(phi0(a, 0.0), np.eye(2), atol=0)
    b = multiplicity_function([(I, 1, 1)])
    np.testing.assert_allclose(phi0(b, 2 * np.pi), [[0]], atol=1e-12)


def test_series_oracle_basics():
    np.testing.assert_allclose(series_exp_oracle(np.zeros((3, 3))), np.eye(3), atol=0)
    n2 = np.array([[0, 1], [0, 0]], dtype=complex)
    np.testing.assert_allclose(series_exp_oracle(n2, 10), [[1, 1], [0, 1]], atol=0)
    with pytest.raises(DimensionMismatch):
        series_exp_oracle(np.zeros((2, 3)))


def test_exp_matches_series_oracle():
    rng = random.Random("matrixfn-oracle")
    for _ in range(40):
        a = random_aleph(rng, max_dim=8, small_spectrum=True)
        t = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        dense = t * jordan_matrix(a).dense()
        assert np.max(np.abs(exp_tj(a, t) - series_exp_oracle(dense))) < 1e-12


def test_one_parameter_group_law():
    rng = random.Random("matrixfn-group")
    for _ in range(25):
        a = random_aleph(rng, max_dim=6)
        t = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        s = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        lhs = exp_tj(a, t) @ exp_tj(a, s)
        assert np.max(np.abs(lhs - exp_tj(a, t + s))) < 1e-9


def test_defining_identity():
    rng = random.Random("matrixfn-phi")
    for _ in range(25):
        a = random_aleph(rng, max_dim=6)
        t = complex(rng.uniform(0.2, 2), rng.uniform(-1, 1))
        j = jordan_matrix(a).dense()
        lhs = t * j @ phi0(a, t)
        rhs = exp_tj(a, t) - np.eye(a.dimension)
        assert np.max(np.abs(lhs - rhs)) < 1e-9
        assert np.max(np.abs(phi1(a, t) - t * phi0(a, t))) < 1e-9


def test_kernel_basis_j_examples():
    a = multiplicity_function([(0, 2, 1)])
    assert kernel_basis_j(a) == (basis_vector(2, 0),)
    b = multiplicity_function([(0, 1, 1), (I, 1, 1)])
    assert kernel_basis_j(b) == (basis_vector(2, 0),)


def test_kernel_basis_j_is_exact_kernel():
    a = multiplicity_function([(0, 2, 1), (I, 1, 1)])
    jd = jordan_matrix(a)
    for v in kernel_basis_j(a):
        assert all(x.is_zero() for x in jd.apply_exact(v))
    # any standard vector outside the kernel breaks it
    for c in (1, 2):
        v = basis_vector(3, c)
        assert any(not x.is_zero() for x in jd.apply_exact(v))


def test_kernel_basis_exp_minus_id():
    a = multiplicity_function([(I, 1, 1)])
    assert kernel_basis_exp_minus_id(a, TWO_PI) == (basis_vector(1, 0),)
    assert kernel_basis_exp_minus_id(a, PI) == ()
    assert kernel_basis_exp_minus_id(a, ZERO) == (basis_vector(1, 0),)
    # t0 outside the singular set: kernel equals ker J
    b = multiplicity_function([(0, 2, 1), (I, 1, 1)])
    assert kernel_basis_exp_minus_id(b, scalar(1)) == kernel_basis_j(b)


def test_rank_exact_standard_lattice():
    vecs = [vector([1]), vector([gaussian(0, 1)])]
    assert rank_exact(vecs, "Q") == 2
    assert rank_exact(vecs, "R") == 2


def test_rank_exact_pi_drop():
    # 1 and 2*pi are Q-independent reals: Q-rank 2, R-rank 1
    vecs = [vector([1]), (TWO_PI,)]
    assert rank_exact(vecs, "Q") == 2
    assert rank_exact(vecs, "R") == 1


def test_rank_exact_colinear():
    v = vector([gaussian(1, 2), gaussian(0, 1)])
    w = tuple(x.scale(2) for x in v)
    assert rank_exact([v, w], "Q") == 1
    assert rank_exact([v, w], "R") == 1


def test_rank_r_never_exceeds_rank_q():
    rng = random.Random("rankQR")
    for _ in range(40):
        vecs = [tuple(random_exact_scalar(rng) for _ in range(2))
                for _ in range(rng.randint(1, 4))]
        assert rank_exact(vecs, "R") <= rank_exact(vecs, "Q")


def test_hnf_identity():
    h, u = hermite_normal_form([[1, 0], [0, 1]])
    assert h == [[1, 0], [0, 1]]
    assert u == [[1, 0], [0, 1]]


def test_hnf_product_identity():
    rng = random.Random("hnf")
    for _ in range(30):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        a = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        h, u = hermite_normal_form(a)
        prod = [[sum(u[i][k] * a[k][j] for k in range(m)) for j in range(n)]
                for i in range(m)]
        assert prod == h


def test_smith_textbook():
    # determinant 12, entry gcd 2: invariant factors (2, 6)
    d, u, v = smith_normal_form([[2, 4], [0, 6]])
    assert [d[0][0], d[1][1]] == [2, 6]
    assert d[0][1] == d[1][0] == 0
    a = [[2, 4], [0, 6]]
    ua = [[sum(u[i][k] * a[k][j] for k in range(2)) for j in range(2)]
          for i in range(2)]
    uav = [[sum(ua[i][k] * v[k][j] for k in range(2)) for j in range(2)]
           for i in range(2)]
    assert uav == d


def test_smith_zero_matrix():
    d, _, _ = smith_normal_form([[0]])
    assert d == [[0]]


def test_smith_random_product_and_divisibility():
    rng = random.Random("snf")
    for _ in range(30):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        a = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        d, u, v = smith_normal_form(a)
        ua = [[sum(u[i][k] * a[k][j] for k in range(m)) for j in range(n)]
              for i in range(m)]
        uav = [[sum(ua[i][k] * v[k][j] for k in range(n)) for j in range(n)]
               for i in range(m)]
        assert uav == d
        diag = [d[k][k] for k in range(min(m, n))]
        for x, y in zip(diag, diag[1:]):
            if x != 0 and y != 0:
                assert y % x == 0
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert d[i][j] == 0


def test_hermite_smith_dispatch():
    h, (u,) = hermite_smith([[2, 4], [0, 6]], "hermite")
    assert h[0][0] > 0
    d, (u2, v2) = hermite_smith([[2, 4], [0, 6]], "smith")
    assert d[0][0] == 2


def test_integer_kernel():
    a = [[1, 2, 3], [2, 4, 6]]
    basis = integer_kernel(a, 3)
    assert len(basis) == 2
    for x in basis:
        assert all(sum(r[j] * x[j] for j in range(3)) == 0 for r in a)
    assert integer_kernel([], 2) == [(1, 0), (0, 1)]


def test_row_module_contains():
    rows = [[2, 0], [0, 3]]
    assert row_module_contains(rows, [4, 3])
    assert not row_module_contains(rows, [1, 0])
    assert row_module_contains(rows, [0, 0])


def test_exact_action_matches_numeric():
    rng = random.Random("exact-action")
    checked = 0
    for _ in range(200):
        a = random_aleph(rng, max_dim=5, lattice_friendly=rng.random() < 0.5)
        t = random_exact_action_time(rng, a)
        v = tuple(random_exact_scalar(rng, span=2) for _ in range(a.dimension))
        for kind, dense in (("exp", exp_tj), ("phi0", phi0), ("phi1", phi1)):
            got = apply_matfun_exact(a, kind, t, v)
            if got is None:
                continue
            checked += 1
            num = dense(a, t.evaluate()) @ np.array([x.evaluate() for x in v])
            assert np.max(np.abs(np.array([x.evaluate() for x in got]) - num)) < 1e-8
    assert checked > 100
