import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ, ilcm
from sympy.matrices.normalforms import smith_normal_form

from weightedproj.lattice import (
    LatticeError,
    determinant,
    hermite_normal_form,
    identity,
    is_unimodular,
    kernel_basis,
    mat_mul,
    mat_vec,
    p_content,
    quotient_basis,
    smith_invariants,
    unimodular_inverse,
)


def sympy_invariants(rows):
    """Independent oracle: nonzero diagonal of sympy's Smith normal form."""
    if not rows:
        return []
    d = smith_normal_form(Matrix(rows), domain=ZZ)
    return [abs(d[i, i]) for i in range(min(d.shape)) if d[i, i] != 0]


@pytest.mark.parametrize("value,p,expected", [(12, 2, 4), (12, 5, 1), (72, 3, 9), (-72, 2, 8)])
def test_p_content(value, p, expected):
    assert p_content(value, p) == expected


def test_p_content_errors():
    with pytest.raises(LatticeError, match="p-content undefined at zero"):
        p_content(0, 2)
    with pytest.raises(LatticeError):
        p_content(12, 4)


PRIMES = [p for p in range(2, 101) if all(p % d for d in range(2, p))]


@given(st.integers(-10**6, 10**6).filter(bool), st.integers(-10**6, 10**6).filter(bool), st.sampled_from(PRIMES))
def test_p_content_multiplicative(a, b, p):
    assert p_content(a * b, p) == p_content(a, p) * p_content(b, p)


def test_kernel_of_single_row():
    basis = kernel_basis([(2, 3, 4)])
    assert len(basis) == 2
    assert all(2 * b[0] + 3 * b[1] + 4 * b[2] == 0 for b in basis)
    assert sympy_invariants(basis) == [1, 1]


def test_kernel_trivial_cases():
    assert kernel_basis(identity(3)) == []
    assert kernel_basis([(0, 0, 0)]) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert kernel_basis([], 2) == [(1, 0), (0, 1)]


def test_kernel_saturated_random():
    rng = random.Random(7)
    for _ in range(200):
        m = [[rng.randint(-20, 20) for _ in range(6)] for _ in range(4)]
        if rng.random() < 0.3:
            m[3] = [2 * a - 3 * b for a, b in zip(m[0], m[1])]
        basis = kernel_basis(m)
        rank = Matrix(m).rank()
        assert len(basis) == 6 - rank
        assert all(not any(mat_vec(m, k)) for k in basis)
        # saturated: the basis spans a lattice with trivial torsion quotient
        assert sympy_invariants(basis) == [1] * len(basis)
        # integer solutions from sympy's rational nullspace add neither rank nor index
        for vec in Matrix(m).nullspace():
            den = ilcm(*[x.q for x in vec])
            sol = [int(x * den) for x in vec]
            assert sympy_invariants(basis + [sol]) == [1] * len(basis)


def test_kernel_is_deterministic():
    m = [(3, 5, -7, 2), (1, 1, 1, 1)]
    assert kernel_basis(m) == kernel_basis([tuple(r) for r in m])


@pytest.mark.parametrize("u", [(1, 0, 0), (1, 2, 3, 4), (1, 1), (6, 10, 15), (3, 5, 7, 11, 13)])
def test_quotient_basis(u):
    q = quotient_basis(u)
    assert len(q) == len(u) - 1
    assert not any(mat_vec(q, u))
    assert sympy_invariants(q) == [1] * (len(u) - 1)


def test_quotient_basis_coordinate():
    assert quotient_basis((1, 0, 0)) == ((0, 1, 0), (0, 0, 1))


def test_quotient_basis_rejects_imprimitive():
    with pytest.raises(LatticeError, match="weight vector not primitive"):
        quotient_basis((2, 4, 6))


def test_quotient_basis_random():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 6)
        u = [rng.randint(-30, 30) for _ in range(n + 1)]
        g = math.gcd(*u)
        if g == 0:
            continue
        u = [x // g for x in u]
        q = quotient_basis(u)
        assert not any(mat_vec(q, u))
        assert sympy_invariants(q) == [1] * n


def test_smith_invariants_against_sympy():
    rng = random.Random(3)
    for _ in range(100):
        rows = [[rng.randint(-9, 9) for _ in range(rng.randint(1, 5))]]
        ncols = len(rows[0])
        rows += [[rng.randint(-9, 9) for _ in range(ncols)] for _ in range(rng.randint(0, 4))]
        assert smith_invariants(rows) == sympy_invariants(rows)


def test_hnf_shape():
    a = [(4, 6, 10), (3, 1, 2)]
    h, u = hermite_normal_form(a)
    assert mat_mul(a, u) == h
    assert abs(determinant(u)) == 1
    assert h[0][1] == h[0][2] == 0 and h[0][0] > 0


def test_unimodular_inverse():
    u = ((2, 1, 0), (1, 1, 0), (0, 3, 1))
    assert is_unimodular(u)
    assert mat_mul(u, unimodular_inverse(u)) == identity(3)
    with pytest.raises(LatticeError):
        unimodular_inverse(((2, 0), (0, 1)))
