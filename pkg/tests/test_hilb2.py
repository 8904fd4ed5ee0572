from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from k3hilb.exact import IntMatrix, IntPolynomial, is_isometry
from k3hilb.hilb2 import (
    E,
    H1,
    H2,
    PRINTED_A7,
    Hilb2Lattice,
    abelian_fibration_obstruction,
    beauville_matrix,
    brute_force_zero,
    composed_action,
    delta_class,
    delta_invariance_test,
    expected_char_poly,
    fujiki_product,
    invariant_class,
    periodicity_reduction,
    printed_variant_report,
    surface_class_product,
)
from k3hilb.surface import InvalidParameter

vec = st.tuples(*[st.integers(-9, 9)] * 3)
a_values = st.integers(5, 80) | st.integers(-80, -5)


def reflection_oracle(X, k):
    """Columns are images of H1, E, H2 under x -> -x + q(x, A) A, A = H_k - E."""
    h = H1 if k == 1 else H2
    A = tuple(p - q for p, q in zip(h, E))
    cols = []
    for x in (H1, E, H2):
        c = X.q(x, A)
        cols.append(tuple(-xi + c * ai for xi, ai in zip(x, A)))
    return IntMatrix.from_columns(cols)


def test_a7_matrices():
    X = Hilb2Lattice(7)
    m1, m2 = beauville_matrix(X, 1).matrix, beauville_matrix(X, 2).matrix
    assert m1.tolist() == [[3, 2, 7], [-4, -3, -7], [0, 0, -1]]
    assert m2.tolist() == [[-1, 0, 0], [-7, -3, -4], [7, 2, 3]]
    assert (m1 @ m2).tolist() == [[32, 8, 13], [-24, -5, -9], [-7, -2, -3]]


def test_printed_variant_is_not_an_involution():
    X = Hilb2Lattice(7)
    for k in (1, 2):
        printed = PRINTED_A7[k]
        assert printed @ printed != IntMatrix.identity(3)
        assert not is_isometry(printed, X.gram)
    rep = printed_variant_report(X)
    assert rep["applies"] and rep["product_matches_printed"]
    assert not printed_variant_report(Hilb2Lattice(9))["applies"]


def test_invalid_a():
    with pytest.raises(InvalidParameter):
        Hilb2Lattice(3)


@pytest.mark.parametrize("a", list(range(5, 41)) + [-5, -7, -12])
def test_involution_invariants(a):
    X = Hilb2Lattice(a)
    I = IntMatrix.identity(3)
    for k in (1, 2):
        m = beauville_matrix(X, k).matrix
        assert m == reflection_oracle(X, k)
        assert m @ m == I
        assert m.T @ X.gram @ m == X.gram
        assert m.det() == 1
    comp = composed_action(X)
    assert comp.matrix.det() == 1
    c = (a - 2) ** 2 - 2
    assert comp.char_poly == IntPolynomial((-1, 1)) * IntPolynomial((1, -c, 1))
    assert comp.char_poly == expected_char_poly(a)


def test_a7_spectrum():
    comp = composed_action(Hilb2Lattice(7))
    assert str(comp.char_poly) == "t^3 - 24t^2 + 24t - 1"
    assert 229560 < comp.radius.lower * 10000 and comp.radius.upper * 10000 < 229570


@pytest.mark.parametrize("a", range(5, 51))
def test_invariant_class_law(a):
    X = Hilb2Lattice(a)
    inv = invariant_class(X)
    assert inv.vector == (2, -(a + 4), 2)
    assert inv.primitive == (inv.vector if a % 2 else (1, -(a + 4) // 2, 1))
    assert composed_action(X).matrix @ inv.vector == inv.vector
    for h in (H1, H2):
        A = tuple(p - q for p, q in zip(h, E))
        assert X.q(A, inv.vector) == 0
    assert inv.verdict == "NOT_EFFECTIVE"


@given(a_values, vec, vec, vec, vec)
def test_fujiki_symmetric(a, w, x, y, z):
    X = Hilb2Lattice(a)
    ref = fujiki_product(X, w, x, y, z)
    for p in permutations((w, x, y, z)):
        assert fujiki_product(X, *p) == ref


@given(a_values, vec, vec)
def test_fujiki_specialisation(a, x, y):
    X = Hilb2Lattice(a)
    assert fujiki_product(X, x, x, y, y) == X.q(x) * X.q(y) + 2 * X.q(x, y) ** 2
    assert fujiki_product(X, x, x, x, x) == 3 * X.q(x) ** 2


@given(a_values, st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
def test_e_alpha_beta_squared(a, x1, y1, x2, y2):
    X = Hilb2Lattice(a)
    assert fujiki_product(X, E, (x1, 0, y1), (x2, 0, y2), (x2, 0, y2)) == 0


@given(a_values, vec, vec, vec)
def test_fujiki_linear(a, x, y, z):
    X = Hilb2Lattice(a)
    s = tuple(p + q for p, q in zip(x, y))
    assert fujiki_product(X, s, z, z, E) == fujiki_product(X, x, z, z, E) + fujiki_product(X, y, z, z, E)


def test_fujiki_examples():
    X = Hilb2Lattice(7)
    assert fujiki_product(X, H1, H1, E, E) == -8
    assert fujiki_product(X, E, H1, H2, H2) == 0
    assert fujiki_product(X, H1, H1, H2, H2) == 16 + 2 * 49


def test_surface_class_examples():
    X = Hilb2Lattice(7)
    assert surface_class_product(X, E, E) == -1
    assert surface_class_product(X, H1, H1) == 4
    assert surface_class_product(X, H1, H2) == 7
    assert surface_class_product(X, H1, E) == 0


def expanded_delta(a):
    """Hand expansion of (H1^2 - 4 Sigma)(2 H2 - 3 E)^2, independent of FourClass."""
    fuj = 4 * (4 * 4 + 2 * a * a) + 9 * (4 * -2)       # H1^2 (4 H2^2 + 9 E^2); cross terms vanish
    sig = 4 * 4 + 9 * -1                                 # Sigma . (2H2 - 3E)^2
    return fuj - 4 * sig


@pytest.mark.parametrize("a", range(5, 51))
def test_delta_law(a):
    X = Hilb2Lattice(a)
    d = delta_invariance_test(X)
    assert d.image_of_e == (0, -3, 2)
    assert d.with_e == -4
    assert d.with_image == 8 * a * a - 36 == expanded_delta(a)
    assert d.verdict == "NOT_INVARIANT"


def test_delta_class_text():
    assert str(delta_class(Hilb2Lattice(7), 1)) == "H1^2 - 4*Sigma"


def test_periodicity_reduction():
    assert periodicity_reduction(Hilb2Lattice(7))
    for a in range(7, 60):
        assert periodicity_reduction(expected_char_poly(a)).holds
    # trace-2 guard: (t - 1)^3 has only root-of-unity eigenvalues
    guard = periodicity_reduction(IntPolynomial.from_roots([1, 1, 1]))
    assert not guard.holds and guard.eigenvalue_one_multiplicity == 3
    # (t - 1)(t^2 + 1): the i eigenvalues make periodic classes non-invariant
    assert not periodicity_reduction(IntPolynomial((-1, 1)) * IntPolynomial((1, 0, 1)))


@pytest.mark.parametrize("a", range(5, 31))
def test_fibration_obstruction_vs_search(a):
    f = abelian_fibration_obstruction(Hilb2Lattice(a), 200)
    brute = brute_force_zero(a, 200)
    assert (f.verdict == "ISOTROPIC") == (brute is not None)
    if f.zero is not None:
        assert Hilb2Lattice(a).q(f.zero) == 0


def test_a5_zero_from_pencil():
    f = abelian_fibration_obstruction(Hilb2Lattice(5))
    assert f.verdict == "ISOTROPIC" and f.zero == (1, 0, -2)
