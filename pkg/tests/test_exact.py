from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, strategies as st

from k3hilb.exact import (
    DimensionError,
    IntMatrix,
    IntPolynomial,
    char_poly,
    cyclotomic,
    cyclotomic_root_of_unity_part,
    is_isometry,
    rational_kernel,
    spectral_radius_bounds,
    symmetric_square,
)

small = st.integers(-6, 6)


def square_matrices(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)
    ).map(IntMatrix)


def leibniz_det(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, p in enumerate(perm):
            prod *= rows[i][p]
        total += -prod if inv % 2 else prod
    return total


def test_char_poly_examples():
    assert char_poly(IntMatrix([[2, 1], [1, 2]])).coeffs == (3, -4, 1)
    m = IntMatrix([[32, 8, 13], [-24, -5, -9], [-7, -2, -3]])
    assert char_poly(m).coeffs == (-1, 24, -24, 1)
    assert str(char_poly(m)) == "t^3 - 24t^2 + 24t - 1"


def test_dimension_errors():
    with pytest.raises(DimensionError):
        IntMatrix([[1, 2, 3], [4, 5, 6]]).det()
    with pytest.raises(DimensionError):
        IntMatrix([[1, 2]]) @ IntMatrix([[1, 2]])


@given(square_matrices())
def test_char_poly_matches_leibniz_interpolation(m):
    # det(tI - M) at n+1 integer points determines the polynomial
    n = m.shape[0]
    p = char_poly(m)
    for t in range(-n, 1):
        shifted = [[(t if i == j else 0) - m[i, j] for j in range(n)] for i in range(n)]
        assert p(t) == leibniz_det(shifted)


@given(square_matrices())
def test_cayley_hamilton(m):
    assert char_poly(m).at_matrix(m) == IntMatrix.zeros(m.shape[0])


@given(square_matrices())
def test_det_agrees_with_sympy(m):
    assert m.det() == sympy.Matrix(m.tolist()).det()


@given(square_matrices(3), square_matrices(3))
def test_det_multiplicative(a, b):
    if a.shape == b.shape:
        assert (a @ b).det() == a.det() * b.det()


def test_isometry_closure():
    g = IntMatrix([[4, 0, 7], [0, -2, 0], [7, 0, 4]])
    m1 = IntMatrix([[3, 2, 7], [-4, -3, -7], [0, 0, -1]])
    m2 = IntMatrix([[-1, 0, 0], [-7, -3, -4], [7, 2, 3]])
    for m in (m1, m2, m1 @ m2, (m1 @ m2) ** 5, m2 @ m1 @ m2):
        assert is_isometry(m, g)
    assert not is_isometry(IntMatrix([[3, 2, 7], [-4, 3, -7], [0, 0, -1]]), g)


def test_rational_kernel():
    m = IntMatrix([[1, 2], [2, 4]])
    (v,) = rational_kernel(m)
    assert all(sum(m[i, j] * v[j] for j in range(2)) == 0 for i in range(2))
    assert any(v)


@pytest.mark.parametrize("n", range(1, 40))
def test_cyclotomic_matches_sympy(n):
    t = sympy.Symbol("t")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, t), t).all_coeffs()[::-1]
    assert list(cyclotomic(n).coeffs) == [int(c) for c in expected]


def test_root_of_unity_part():
    assert cyclotomic_root_of_unity_part(IntPolynomial((-1, 24, -24, 1))) == [1]
    p = cyclotomic(1) * cyclotomic(6) * IntPolynomial((1, -3, 1))
    assert cyclotomic_root_of_unity_part(p) == [1, 6]
    assert cyclotomic_root_of_unity_part(IntPolynomial((1, -3, 1))) == []
    with pytest.raises(ValueError):
        cyclotomic_root_of_unity_part(IntPolynomial((0,)))


def test_symmetric_square_eigenvalues():
    m = IntMatrix([[2, 0], [0, 3]])
    assert char_poly(symmetric_square(m)) == IntPolynomial.from_roots([4, 6, 9])


def test_spectral_radius_examples():
    r = spectral_radius_bounds(IntPolynomial((-1, 24, -24, 1)))
    assert Fraction(229560, 10000) < r.lower <= r.upper < Fraction(229570, 10000)
    assert r.width <= Fraction(1, 10**6)
    lin = spectral_radius_bounds(IntPolynomial((-5, 1)))
    assert lin.lower == lin.upper == 5
    with pytest.raises(ValueError):
        spectral_radius_bounds(IntPolynomial((1, 0, 1)))


@given(st.integers(5, 400))
def test_spectral_radius_brackets_sign_change(a):
    c = (a - 2) ** 2 - 2
    p = IntPolynomial((1, -c, 1))
    r = spectral_radius_bounds(p)
    assert p(r.lower) * p(r.upper) <= 0
    # largest root of t^2 - c t + 1 is below c and above c - 1
    assert c - 1 < r.lower <= r.upper < c
