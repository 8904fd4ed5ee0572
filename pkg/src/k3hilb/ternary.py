"""Isotropy of integral ternary quadratic forms via Hasse-Minkowski.

The Gram matrix is diagonalised over Q, brought to Legendre normal form
(squarefree, pairwise coprime coefficients) and tested with Hilbert symbols
at the real place and at every prime dividing 2 * (product of coefficients).
An isotropic form gets an explicit zero from a search inside Holzer's box,
mapped back to the original coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .exact import IntMatrix, _factorize, bilinear, is_square, primitive_integer_vector

REAL = "inf"


class DegenerateForm(ValueError):
    pass


def squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * core with core squarefree (sign kept on core)."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    s, core = 1, (1 if n > 0 else -1)
    for p, e in _factorize(n).items():
        s *= p ** (e // 2)
        if e % 2:
            core *= p
    return s, core


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _split_p(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def hilbert_symbol(a: int, b: int, p) -> int:
    """(a, b)_p for nonzero integers a, b; p a prime or REAL."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if p == REAL:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    return sign * legendre(u, p) ** beta * legendre(v, p) ** alpha


def diagonalize(gram: IntMatrix):
    """Orthogonal basis over Q.

    Returns (diagonal, basis, isotropic) where ``isotropic`` is a basis
    vector found with q = 0 along the way (then the form is isotropic and
    the other two entries are None).
    """
    n = gram.shape[0]
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    q = lambda u, v: sum(u[i] * gram.rows[i][j] * v[j] for i in range(n) for j in range(n))
    diag = []
    for i in range(n):
        qi = q(basis[i], basis[i])
        if qi == 0:
            return None, None, basis[i]
        diag.append(qi)
        for j in range(i + 1, n):
            c = q(basis[i], basis[j]) / qi
            if c:
                basis[j] = [x - c * y for x, y in zip(basis[j], basis[i])]
    return diag, basis, None


@dataclass(frozen=True)
class NormalForm:
    coeffs: tuple[int, int, int]
    # zero W of the normal form gives zero (mult_i * W_i) of the diagonal form
    multipliers: tuple[Fraction, Fraction, Fraction]


def legendre_normal_form(diag) -> NormalForm:
    coeffs, mult = [], []
    for d in diag:
        d = Fraction(d)
        n, m = d.numerator * d.denominator, d.denominator
        s, core = squarefree_split(n)
        coeffs.append(core)
        mult.append(Fraction(m, s))
    while True:
        g = gcd(*coeffs)
        if g > 1:
            coeffs = [c // g for c in coeffs]
            continue
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            h = gcd(coeffs[i], coeffs[j])
            if h > 1:
                p = min(_factorize(h))
                coeffs[i] //= p
                coeffs[j] //= p
                coeffs[k] *= p
                mult[k] *= p
                break
        else:
            return NormalForm(tuple(coeffs), tuple(mult))


def local_places(coeffs) -> list:
    primes = set(_factorize(2 * coeffs[0] * coeffs[1] * coeffs[2]))
    return [REAL] + sorted(primes)


def is_locally_isotropic(coeffs, p) -> bool:
    a, b, c = coeffs
    return hilbert_symbol(-a * c, -b * c, p) == 1


def holzer_zero(coeffs) -> tuple[int, int, int] | None:
    """Search the box |x|<=sqrt|bc|, |y|<=sqrt|ac|, |z|<=sqrt|ab| for a zero."""
    a, b, c = coeffs
    ybox, zbox = isqrt(abs(a * c)), isqrt(abs(a * b))
    for y in range(0, ybox + 1):
        for z in range(0, zbox + 1):
            if y == 0 and z == 0:
                continue
            r = -(b * y * y + c * z * z)
            if r % a:
                continue
            r //= a
            if is_square(r):
                return isqrt(r), y, z
    return None


@dataclass(frozen=True)
class IsotropyResult:
    isotropic: bool
    zero: tuple[int, ...] | None
    diagonal: tuple[Fraction, ...] | None
    normal_form: tuple[int, int, int] | None
    obstructions: tuple           # places where the Hilbert symbol is -1
    symbols: tuple                # (place, symbol) for every place checked

    @property
    def obstructing_place(self):
        """Smallest finite obstructing prime if any, else the real place."""
        finite = [p for p in self.obstructions if p != REAL]
        if finite:
            return finite[0]
        return self.obstructions[0] if self.obstructions else None


def _normalize_sign(v: tuple[int, ...]) -> tuple[int, ...]:
    first = next(x for x in v if x)
    return v if first > 0 else tuple(-x for x in v)


def ternary_isotropy(gram: IntMatrix) -> IsotropyResult:
    if gram.shape != (3, 3) or gram != gram.T:
        raise ValueError("need a symmetric 3x3 Gram matrix")
    if gram.det() == 0:
        raise DegenerateForm("degenerate ternary form")
    diag, basis, iso = diagonalize(gram)
    if iso is not None:
        zero = _normalize_sign(primitive_integer_vector(iso))
        assert bilinear(gram, zero, zero) == 0
        return IsotropyResult(True, zero, None, None, (), ())
    nf = legendre_normal_form(diag)
    symbols = tuple((p, hilbert_symbol(-nf.coeffs[0] * nf.coeffs[2], -nf.coeffs[1] * nf.coeffs[2], p))
                    for p in local_places(nf.coeffs))
    bad = tuple(p for p, s in symbols if s == -1)
    if bad:
        return IsotropyResult(False, None, tuple(diag), nf.coeffs, bad, symbols)
    w = holzer_zero(nf.coeffs)
    if w is None:
        raise RuntimeError(f"no zero found in Holzer box for locally isotropic {nf.coeffs}")
    w_diag = [m * x for m, x in zip(nf.multipliers, w)]
    v = [sum(w_diag[i] * basis[i][j] for i in range(3)) for j in range(3)]
    zero = _normalize_sign(primitive_integer_vector(v))
    assert bilinear(gram, zero, zero) == 0
    return IsotropyResult(True, zero, tuple(diag), nf.coeffs, (), symbols)
