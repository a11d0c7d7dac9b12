"""Matrix functions of tJ evaluated per Jordan block, plus rank machinery.

Every function of tJ used here (the exponential and the two divided
differences phi0 = (e^{tJ}-1)/(tJ), phi1 = (e^{tJ}-1)/J) is upper
triangular Toeplitz on each block, so a block is described by the vector
of its diagonal coefficients.  Three evaluation layers share that shape:

* numeric (complex floats) -- always available;
* exact (ExactScalar coordinates) -- available when e^{t*lambda} is a
  Gaussian rational and the needed powers of t stay in the 2*pi*i module;
* field (Q(i)(pi) coordinates) -- available whenever e^{t*lambda} is a
  Gaussian rational; powers and quotients of t are unrestricted there.

The integer Hermite/Smith forms and the exact Q/R ranks at the bottom
support the lattice computations downstream.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, lcm
from typing import Literal, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch
from .exactnum import (
    ExactScalar,
    ExactVector,
    GaussianRational,
    ONE,
    ONE_G,
    ZERO,
    ZERO_G,
    basis_vector,
)
from .pifield import (
    FieldVector,
    PiPoly,
    PiRat,
    P_ONE,
    R_ONE,
    R_ZERO,
    rank as field_rank,
)
from .spectrum import MultiplicityFunction, exp_eigenvalue_exact

MatFunKind = Literal["exp", "phi0", "phi1"]


# ---------------------------------------------------------------------------
# numeric layer
# ---------------------------------------------------------------------------


def _numeric_block_coeffs(kind: MatFunKind, t: complex, lam: complex, n: int) -> np.ndarray:
    c = np.zeros(n, dtype=complex)
    if kind == "exp":
        e = np.exp(t * lam)
        for m in range(n):
            c[m] = e * t**m / factorial(m)
        return c
    if kind == "phi1":
        if lam == 0:
            for m in range(n):
                c[m] = t ** (m + 1) / factorial(m + 1)
        else:
            e = np.exp(t * lam)
            a = [e - 1.0] + [e * t**j / factorial(j) for j in range(1, n)]
            b = [(-1.0) ** m / lam ** (m + 1) for m in range(n)]
            for m in range(n):
                c[m] = sum(a[j] * b[m - j] for j in range(m + 1))
        return c
    if kind == "phi0":
        if t == 0:
            c[0] = 1.0
            return c
        return _numeric_block_coeffs("phi1", t, lam, n) / t
    raise ValueError(f"unknown matrix function {kind!r}")


def _assemble(aleph: MultiplicityFunction, kind: MatFunKind, t: complex) -> np.ndarray:
    d = aleph.dimension
    out = np.zeros((d, d), dtype=complex)
    cache: dict[tuple[complex, int], np.ndarray] = {}
    for lam, n, start in aleph.blocks:
        lv = lam.as_complex()
        key = (lv, n)
        if key not in cache:
            cache[key] = _numeric_block_coeffs(kind, t, lv, n)
        c = cache[key]
        for j in range(n):
            for k in range(j, n):
                out[start + j, start + k] = c[k - j]
    return out


def exp_tj(aleph: MultiplicityFunction, t: complex) -> np.ndarray:
    """Dense e^{tJ}."""
    return _assemble(aleph, "exp", complex(t))


def phi1(aleph: MultiplicityFunction, t: complex) -> np.ndarray:
    """Dense (e^{tJ} - 1)/J, the terminating series t + t^2 J/2! + ..."""
    return _assemble(aleph, "phi1", complex(t))


def phi0(aleph: MultiplicityFunction, t: complex) -> np.ndarray:
    """Dense (e^{tJ} - 1)/(tJ), extended to the identity at t = 0."""
    return _assemble(aleph, "phi0", complex(t))


def oracle_terms(m: np.ndarray, bound: float = 1e-16) -> int:
    """Smallest truncation order with ||m||^(T+1)/(T+1)! below ``bound``."""
    norm = float(np.linalg.norm(m, 1))
    term = 1.0
    T = 0
    while True:
        term = term * max(norm, 1e-300) / (T + 1)
        if term < bound or T > 800:
            return max(T, 1)
        T += 1


def series_exp_oracle(m: np.ndarray, terms: Optional[int] = None) -> np.ndarray:
    """Plain truncated exponential series; the independent cross-check.

    With ``terms=None`` the order is chosen so that the first dropped
    term has 1-norm below 1e-16.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"square matrix required, got shape {m.shape}")
    if terms is None:
        terms = oracle_terms(m)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    out = np.eye(m.shape[0], dtype=complex)
    acc = np.eye(m.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        acc = acc @ m / k
        out = out + acc
    return out


# ---------------------------------------------------------------------------
# exact layer (ExactScalar coordinates)
# ---------------------------------------------------------------------------


def _try_powers(t: ExactScalar, count: int) -> Optional[list[ExactScalar]]:
    """[1, t, ..., t^(count-1)] inside the module, or None."""
    powers = [ONE]
    for _ in range(1, count):
        nxt = powers[-1].try_mul(t)
        if nxt is None:
            return None
        powers.append(nxt)
    return powers


def _jinv_coeffs(lam: GaussianRational, n: int) -> list[GaussianRational]:
    """Toeplitz coefficients of (lam*1 + N)^(-1)."""
    inv = lam.inverse()
    out = []
    cur = inv
    for m in range(n):
        out.append(cur)
        cur = -cur * inv
    return out


def exact_block_coeffs(kind: MatFunKind, t: ExactScalar, lam: GaussianRational,
                       n: int) -> Optional[list[ExactScalar]]:
    """Toeplitz coefficients of the block function, inside the module."""
    if kind == "exp":
        s = exp_eigenvalue_exact(t, lam)
        if s is None:
            return None
        pw = _try_powers(t, n)
        if pw is None:
            return None
        return [pw[m].scale(s / factorial(m)) for m in range(n)]
    if kind == "phi1":
        if lam.is_zero():
            pw = _try_powers(t, n + 1)
            if pw is None:
                return None
            return [pw[m + 1].scale(Fraction(1, factorial(m + 1))) for m in range(n)]
        s = exp_eigenvalue_exact(t, lam)
        if s is None:
            return None
        pw = _try_powers(t, n)
        if pw is None:
            return None
        a = [ExactScalar(s - ONE_G)] + [pw[j].scale(s / factorial(j)) for j in range(1, n)]
        b = _jinv_coeffs(lam, n)
        return [sum((a[j].scale(b[m - j]) for j in range(m + 1)), ZERO) for m in range(n)]
    if kind == "phi0":
        if t.is_zero():
            return [ONE] + [ZERO] * (n - 1)
        if lam.is_zero():
            pw = _try_powers(t, n)
            if pw is None:
                return None
            return [pw[m].scale(Fraction(1, factorial(m + 1))) for m in range(n)]
        s = exp_eigenvalue_exact(t, lam)
        if s != ONE_G:
            # a nontrivial e^{t*lam} forces a bare 1/t, which leaves the module
            return None
        pw = _try_powers(t, n)
        if pw is None:
            return None
        b = _jinv_coeffs(lam, n)
        out = []
        for m in range(n):
            acc = ZERO
            for j in range(1, m + 1):
                acc = acc + pw[j - 1].scale(b[m - j] / factorial(j))
            out.append(acc)
        return out
    raise ValueError(f"unknown matrix function {kind!r}")


def _apply_toeplitz_exact(coeffs: list[ExactScalar],
                          block: Sequence[ExactScalar]) -> Optional[list[ExactScalar]]:
    n = len(block)
    out = []
    for j in range(n):
        acc = ZERO
        for k in range(j, n):
            if block[k].is_zero():
                continue
            term = coeffs[k - j].try_mul(block[k])
            if term is None:
                return None
            acc = acc + term
        out.append(acc)
    return out


def apply_matfun_exact(aleph: MultiplicityFunction, kind: MatFunKind,
                       t: ExactScalar, v: ExactVector) -> Optional[ExactVector]:
    """f(tJ) v with exact coordinates, or None when that leaves the module.

    Blocks on which v vanishes contribute exactly zero regardless of t, so
    only the supporting blocks constrain exactness.
    """
    out: list[ExactScalar] = list(v)
    for lam, n, start in aleph.blocks:
        blk = v[start:start + n]
        if all(x.is_zero() for x in blk):
            for j in range(n):
                out[start + j] = ZERO
            continue
        coeffs = exact_block_coeffs(kind, t, lam, n)
        if coeffs is None:
            return None
        res = _apply_toeplitz_exact(coeffs, blk)
        if res is None:
            return None
        out[start:start + n] = res
    return tuple(out)


# ---------------------------------------------------------------------------
# field layer (Q(i)(pi) coordinates)
# ---------------------------------------------------------------------------


def field_block_coeffs(kind: MatFunKind, t: ExactScalar, lam: GaussianRational,
                       n: int) -> Optional[list[PiRat]]:
    tp = PiPoly.from_exact(t)
    powers = [P_ONE]
    for _ in range(1, n + 1):
        powers.append(powers[-1] * tp)
    if kind == "exp":
        s = exp_eigenvalue_exact(t, lam)
        if s is None:
            return None
        return [PiRat.from_poly(powers[m].scale(s / factorial(m))) for m in range(n)]
    if kind == "phi1":
        if lam.is_zero():
            return [PiRat.from_poly(powers[m + 1].scale(Fraction(1, factorial(m + 1))))
                    for m in range(n)]
        s = exp_eigenvalue_exact(t, lam)
        if s is None:
            return None
        a = [PiPoly.const(s - ONE_G)] + [powers[j].scale(s / factorial(j))
                                         for j in range(1, n)]
        b = _jinv_coeffs(lam, n)
        out = []
        for m in range(n):
            acc = PiPoly()
            for j in range(m + 1):
                acc = acc + a[j].scale(b[m - j])
            out.append(PiRat.from_poly(acc))
        return out
    if kind == "phi0":
        if t.is_zero():
            return [R_ONE] + [R_ZERO] * (n - 1)
        c1 = field_block_coeffs("phi1", t, lam, n)
        if c1 is None:
            return None
        tinv = PiRat.make(P_ONE, tp)
        return [c * tinv for c in c1]
    raise ValueError(f"unknown matrix function {kind!r}")


def apply_matfun_field(aleph: MultiplicityFunction, kind: MatFunKind,
                       t: ExactScalar, v: Sequence[PiRat]) -> Optional[list[PiRat]]:
    out: list[PiRat] = [R_ZERO] * aleph.dimension
    for lam, n, start in aleph.blocks:
        blk = v[start:start + n]
        if all(x.is_zero() for x in blk):
            continue
        coeffs = field_block_coeffs(kind, t, lam, n)
        if coeffs is None:
            return None
        for j in range(n):
            acc = R_ZERO
            for k in range(j, n):
                if not blk[k].is_zero():
                    acc = acc + coeffs[k - j] * blk[k]
            out[start + j] = acc
    return out


def matfun_field_matrix(aleph: MultiplicityFunction, kind: MatFunKind,
                        t: ExactScalar) -> Optional[list[list[PiRat]]]:
    d = aleph.dimension
    out = [[R_ZERO] * d for _ in range(d)]
    for lam, n, start in aleph.blocks:
        coeffs = field_block_coeffs(kind, t, lam, n)
        if coeffs is None:
            return None
        for j in range(n):
            for k in range(j, n):
                out[start + j][start + k] = coeffs[k - j]
    return out


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


def kernel_basis_j(aleph: MultiplicityFunction) -> tuple[ExactVector, ...]:
    """Basis of ker J: the first coordinate of every nilpotent-or-zero block."""
    d = aleph.dimension
    return tuple(basis_vector(d, c) for c in aleph.kernel_coordinates)


def _unit_exponential(t: ExactScalar, lam: GaussianRational) -> bool:
    if lam.is_zero():
        return True
    if not (t.alg * lam).is_zero():
        return False
    q = t.tau * lam
    return q.is_real() and q.re.denominator == 1


def kernel_basis_exp_minus_id(aleph: MultiplicityFunction,
                              t: ExactScalar) -> tuple[ExactVector, ...]:
    """Exact basis of ker(e^{tJ} - 1).

    For t = 0 this is the whole space.  Otherwise a block contributes its
    first coordinate exactly when e^{t*lambda} = 1; the unipotent factor
    e^{tN} - 1 then has kernel ker N.
    """
    d = aleph.dimension
    if t.is_zero():
        return tuple(basis_vector(d, j) for j in range(d))
    out = []
    for lam, n, start in aleph.blocks:
        if _unit_exponential(t, lam):
            out.append(basis_vector(d, start))
    return tuple(out)


# ---------------------------------------------------------------------------
# exact ranks over Q and over R
# ---------------------------------------------------------------------------


def rational_components_row(v: ExactVector) -> list[Fraction]:
    """Flatten to coordinates in the Q-basis (1, i, 2*pi*i, -2*pi) per slot."""
    row: list[Fraction] = []
    for x in v:
        row.extend(x.components())
    return row


def _real_split_row(v: ExactVector) -> list[PiRat]:
    """Real/imaginary parts as degree-<=1 polynomials in pi."""
    row: list[PiRat] = []
    for x in v:
        re_poly = PiPoly((GaussianRational(x.alg.re), GaussianRational(-2 * x.tau.im)))
        im_poly = PiPoly((GaussianRational(x.alg.im), GaussianRational(2 * x.tau.re)))
        row.append(PiRat.from_poly(re_poly))
        row.append(PiRat.from_poly(im_poly))
    return row


def rank_exact(vectors: Sequence[ExactVector], field: Literal["Q", "R"]) -> int:
    """Exact rank of the span, over Q or over R.

    Over Q each complex coordinate contributes four rational components,
    and the result equals the free rank of the generated additive group.
    Over R coordinates are split into real pairs with entries in Q[pi];
    since pi is transcendental, elimination over the rational-function
    field gives the true real rank with no tolerance anywhere.
    """
    vectors = list(vectors)
    if not vectors:
        return 0
    if field == "Q":
        rows = [[PiRat.const(GaussianRational(c)) for c in rational_components_row(v)]
                for v in vectors]
        return field_rank(rows)
    if field == "R":
        return field_rank([_real_split_row(v) for v in vectors])
    raise ValueError("field must be 'Q' or 'R'")


# ---------------------------------------------------------------------------
# integer normal forms and lattice utilities
# ---------------------------------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style HNF: returns (H, U) with U unimodular and U @ A = H."""
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    r = 0
    for c in range(n):
        if r >= m:
            break
        if not any(A[i][c] for i in range(r, m)):
            continue
        while True:
            piv = min((i for i in range(r, m) if A[i][c] != 0),
                      key=lambda i: abs(A[i][c]))
            if piv != r:
                A[r], A[piv] = A[piv], A[r]
                U[r], U[piv] = U[piv], U[r]
            others = [i for i in range(r + 1, m) if A[i][c] != 0]
            if not others:
                break
            for i in others:
                q = A[i][c] // A[r][c]
                if q:
                    for k in range(n):
                        A[i][k] -= q * A[r][k]
                    for k in range(m):
                        U[i][k] -= q * U[r][k]
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                for k in range(n):
                    A[i][k] -= q * A[r][k]
                for k in range(m):
                    U[i][k] -= q * U[r][k]
        r += 1
    return A, U


def smith_normal_form(rows: Sequence[Sequence[int]]
                      ) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith form: returns (D, U, V) with U @ A @ V = D diagonal, d_k | d_{k+1}."""
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def row_sub(i, j, q):
        for k in range(n):
            A[i][k] -= q * A[j][k]
        for k in range(m):
            U[i][k] -= q * U[j][k]

    def col_sub(i, j, q):
        for k in range(m):
            A[k][i] -= q * A[k][j]
        for k in range(n):
            V[k][i] -= q * V[k][j]

    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                   if A[i][j] != 0]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[t], A[pi] = A[pi], A[t]
        U[t], U[pi] = U[pi], U[t]
        for k in range(m):
            A[k][t], A[k][pj] = A[k][pj], A[k][t]
        for k in range(n):
            V[k][t], V[k][pj] = V[k][pj], V[k][t]
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_sub(i, t, q)
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        U[t], U[i] = U[i], U[t]
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_sub(j, t, q)
                    if A[t][j]:
                        for k in range(m):
                            A[k][t], A[k][j] = A[k][j], A[k][t]
                        for k in range(n):
                            V[k][t], V[k][j] = V[k][j], V[k][t]
                        dirty = True
            if not dirty:
                break
        # enforce the divisibility chain
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % A[t][t] != 0:
                    row_sub(t, i, -1)  # add row i into row t, then restart
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def hermite_smith(rows: Sequence[Sequence[int]], form: Literal["hermite", "smith"] = "hermite"):
    """Dispatching wrapper: (transformed matrix, unimodular factors)."""
    if form == "hermite":
        H, U = hermite_normal_form(rows)
        return H, (U,)
    if form == "smith":
        D, U, V = smith_normal_form(rows)
        return D, (U, V)
    raise ValueError("form must be 'hermite' or 'smith'")


def unimodular_inverse(V: Sequence[Sequence[int]]) -> list[list[int]]:
    H, U = hermite_normal_form(V)
    n = len(H)
    if H != _identity(n):
        raise ValueError("matrix is not unimodular")
    return U


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of { x in Z^ncols : A x = 0 } for the matrix with the given rows."""
    if not rows:
        return [tuple(1 if j == k else 0 for j in range(ncols)) for k in range(ncols)]
    transpose = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    H, U = hermite_normal_form(transpose)
    out = []
    for i in range(ncols):
        if all(x == 0 for x in H[i]):
            out.append(tuple(U[i]))
    return out


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    D, _, _ = smith_normal_form(rows)
    return [D[k][k] for k in range(min(len(D), len(D[0]) if D else 0)) if D[k][k] != 0]


def row_module_contains(rows: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
    """Is x an integer combination of the rows?"""
    H, _ = hermite_normal_form(rows)
    v = list(map(int, x))
    n = len(v)
    for row in H:
        c = next((k for k in range(n) if row[k] != 0), None)
        if c is None:
            continue
        if v[c] % row[c] != 0:
            return False
        q = v[c] // row[c]
        if q:
            for k in range(n):
                v[k] -= q * row[k]
    return all(val == 0 for val in v)


def row_modules_equal(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    return (all(row_module_contains(b, r) for r in a)
            and all(row_module_contains(a, r) for r in b))


def scaled_integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Clear denominators globally; returns (integer rows, common scale)."""
    scale = 1
    for r in rows:
        for x in r:
            scale = lcm(scale, x.denominator)
    out = [[int(x * scale) for x in r] for r in rows]
    return out, scale
