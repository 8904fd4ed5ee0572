"""NS(X) = NS(S) + ZE for X = S^[2], with the Beauville-Bogomolov form q.

Coordinates are always in the basis (H1, E, H2), Gram
[[4, 0, a], [0, -2, 0], [a, 0, 4]].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import (
    IntMatrix,
    IntPolynomial,
    RationalInterval,
    bilinear,
    char_poly,
    companion_matrix,
    cyclotomic_multiplicity,
    cyclotomic_root_of_unity_part,
    is_isometry,
    primitive_integer_vector,
    rational_kernel,
    spectral_radius_bounds,
    symmetric_square,
)
from .surface import SurfaceLattice, check_parameter, has_elliptic_pencil
from .ternary import ternary_isotropy

H1, E, H2 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
BASIS = (H1, E, H2)
LABELS = ("H1", "E", "H2")

# The a = 7 involutions as they circulate in print, with entry (2,2) = +3.
# Neither is an involution nor preserves q; kept to report the discrepancy.
PRINTED_A7 = {
    1: IntMatrix(((3, 2, 7), (-4, 3, -7), (0, 0, -1))),
    2: IntMatrix(((-1, 0, 0), (-7, 3, -4), (7, 2, 3))),
}


@dataclass(frozen=True)
class Hilb2Lattice:
    a: int
    gram: IntMatrix = field(init=False)

    def __post_init__(self):
        check_parameter(self.a)
        a = self.a
        object.__setattr__(self, "gram", IntMatrix(((4, 0, a), (0, -2, 0), (a, 0, 4))))

    @property
    def surface(self) -> SurfaceLattice:
        return SurfaceLattice(self.a)

    def q(self, u, v=None) -> int:
        return bilinear(self.gram, u, u if v is None else v)


def build_hilb2(a: int) -> Hilb2Lattice:
    return Hilb2Lattice(a)


def _gen(k: int) -> tuple[int, int, int]:
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    return H1 if k == 1 else H2


def as_combination(v) -> str:
    parts = []
    for c, name in zip(v, LABELS):
        if c == 0:
            continue
        coef = "" if abs(c) == 1 else str(abs(c))
        parts.append(("-" if c < 0 else "+", f"{coef}{name}"))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# --------------------------------------------------------------------------
# involutions and their product
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Isometry:
    matrix: IntMatrix          # columns are images of H1, E, H2
    label: str
    datum: tuple[int, int, int] | None = None

    def __call__(self, v):
        return self.matrix @ v


def beauville_matrix(L: Hilb2Lattice, k: int) -> Isometry:
    """iota_k^* as x -> -x + q(x, A) A with A = H_k - E (q(A) = 2)."""
    h = _gen(k)
    A = tuple(x - y for x, y in zip(h, E))
    assert L.q(A) == 2
    cols = []
    for b in BASIS:
        c = L.q(b, A)
        cols.append(tuple(-x + c * y for x, y in zip(b, A)))
    m = IntMatrix.from_columns(cols)
    if m @ m != IntMatrix.identity(3) or not is_isometry(m, L.gram):
        raise AssertionError(f"reflection in {A} failed the involution/isometry check")
    return Isometry(m, f"iota{k}*", A)


@dataclass(frozen=True)
class ComposedAction:
    isometry: Isometry
    char_poly: IntPolynomial
    eigenvector: tuple[int, int, int]
    radius: RationalInterval

    @property
    def matrix(self) -> IntMatrix:
        return self.isometry.matrix


def expected_char_poly(a: int) -> IntPolynomial:
    s = (a - 2) ** 2 - 2
    return IntPolynomial((-1, 1)) * IntPolynomial((1, -s, 1))


def fixed_vector(m: IntMatrix) -> tuple[int, int, int]:
    """Primitive generator of ker(M - I), positive first nonzero entry."""
    kernel = rational_kernel(m - IntMatrix.identity(m.shape[0]))
    if len(kernel) != 1:
        raise ArithmeticError(f"eigenvalue-1 eigenspace has dimension {len(kernel)}")
    v = primitive_integer_vector(kernel[0])
    first = next(x for x in v if x)
    return v if first > 0 else tuple(-x for x in v)


def composed_action(L: Hilb2Lattice, width=Fraction(1, 10**6)) -> ComposedAction:
    """(iota2 iota1)^* = M1 @ M2 on NS(X), its spectrum and fixed class."""
    m1 = beauville_matrix(L, 1).matrix
    m2 = beauville_matrix(L, 2).matrix
    m = m1 @ m2
    assert m.det() == 1
    assert is_isometry(m, L.gram)
    p = char_poly(m)
    assert p == expected_char_poly(L.a), f"unexpected characteristic polynomial {p}"
    v = fixed_vector(m)
    return ComposedAction(Isometry(m, "(iota2 iota1)*"), p, v, spectral_radius_bounds(p, width))


@dataclass(frozen=True)
class InvariantClass:
    vector: tuple[int, int, int]       # 2H1 - (a+4)E + 2H2
    primitive: tuple[int, int, int]    # generator of the fixed lattice (half of vector for even a)
    ample: tuple[int, int, int]
    pairing: int
    verdict: str


def invariant_class(L: Hilb2Lattice) -> InvariantClass:
    """The fixed class of the composed action and its effectivity.

    A = H1 - E is ample; a nonzero effective class pairs strictly positively
    with an ample class, so q(A, v) <= 0 rules v (and -v when q(A, v) = 0)
    out.
    """
    m = (beauville_matrix(L, 1).matrix @ beauville_matrix(L, 2).matrix)
    prim = fixed_vector(m)
    v = (2, -(L.a + 4), 2)
    assert m @ v == v
    # v is 1 or 2 times the generator depending on the parity of a
    assert v in (prim, tuple(2 * x for x in prim))
    A = (1, -1, 0)
    pairing = L.q(A, v)
    verdict = "NOT_EFFECTIVE" if pairing == 0 else "UNDECIDED"
    return InvariantClass(v, prim, A, pairing, verdict)


def printed_variant_report(L: Hilb2Lattice) -> dict:
    """How the printed a = 7 factors compare with the reflections."""
    if L.a != 7:
        return {"applies": False}
    out = {"applies": True}
    ident = IntMatrix.identity(3)
    for k, printed in PRINTED_A7.items():
        ours = beauville_matrix(L, k).matrix
        diff = [(i + 1, j + 1) for i in range(3) for j in range(3) if printed[i, j] != ours[i, j]]
        out[f"M{k}"] = {
            "printed": printed,
            "involution": printed @ printed == ident,
            "isometry": is_isometry(printed, L.gram),
            "differs_at": diff,
        }
    product = beauville_matrix(L, 1).matrix @ beauville_matrix(L, 2).matrix
    out["product_matches_printed"] = product == IntMatrix(((32, 8, 13), (-24, -5, -9), (-7, -2, -3)))
    # iota2^* H1 as an isometry forces the coefficient -1 on H1
    out["iota2_H1"] = beauville_matrix(L, 2).matrix.column(0)
    return out


# --------------------------------------------------------------------------
# abelian fibrations: isotropy of q
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FibrationObstruction:
    verdict: str                       # ISOTROPIC | ANISOTROPIC
    zero: tuple[int, int, int] | None
    place: object                      # obstructing place when anisotropic
    obstructions: tuple
    symbols: tuple
    normal_form: tuple | None
    search_bound: int
    search_zero: tuple[int, int, int] | None


def brute_force_zero(a: int, bound: int) -> tuple[int, int, int] | None:
    """First nonzero (x, z, y) in (x, y) order with max-norm <= bound and q = 0.

    q(xH1 + zE + yH2) = 4x^2 + 2axy + 4y^2 - 2z^2.  Integer arrays; the
    square root guess is confirmed by exact integer comparison.
    """
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    x, y = np.meshgrid(r, r, indexing="ij")
    val = 4 * x * x + 2 * a * x * y + 4 * y * y
    ok = (val >= 0) & (val % 2 == 0)
    half = np.where(ok, val // 2, 0)
    z = np.rint(np.sqrt(half.astype(np.float64))).astype(np.int64)
    hit = ok & (z * z == half) & (z <= bound) & ~((x == 0) & (y == 0))
    idx = np.argwhere(hit)
    if len(idx) == 0:
        return None
    i, j = idx[0]
    xs, ys, zs = int(x[i, j]), int(y[i, j]), int(z[i, j])
    assert 4 * xs * xs + 2 * a * xs * ys + 4 * ys * ys - 2 * zs * zs == 0
    return xs, zs, ys


def abelian_fibration_obstruction(L: Hilb2Lattice, search_bound: int = 200) -> FibrationObstruction:
    """Does q represent zero on NS(X)?  Decided by local-global, sanity-checked by search."""
    pencil = has_elliptic_pencil(L.surface)
    found = brute_force_zero(L.a, search_bound) if search_bound > 0 else None
    if pencil.present:
        x, y = pencil.isotropic_vector
        zero = (x, 0, y)
        assert L.q(zero) == 0
        return FibrationObstruction("ISOTROPIC", zero, None, (), (), None, search_bound, found)
    res = ternary_isotropy(L.gram)
    if res.isotropic:
        assert L.q(res.zero) == 0
        return FibrationObstruction("ISOTROPIC", res.zero, None, (), res.symbols, res.normal_form,
                                    search_bound, found)
    if found is not None:
        raise AssertionError(f"local obstruction at {res.obstructions} but search found {found}")
    return FibrationObstruction("ANISOTROPIC", None, res.obstructing_place, res.obstructions,
                                res.symbols, res.normal_form, search_bound, None)


# --------------------------------------------------------------------------
# degree-4 intersection numbers
# --------------------------------------------------------------------------

def fujiki_product(L: Hilb2Lattice, alpha, beta, gamma, delta) -> int:
    """alpha.beta.gamma.delta, the symmetric polarisation of q(a)q(b) + 2q(a,b)^2."""
    q = L.q
    return q(alpha, beta) * q(gamma, delta) + q(alpha, gamma) * q(beta, delta) + q(alpha, delta) * q(beta, gamma)


def surface_class_product(L: Hilb2Lattice, alpha, beta) -> int:
    """Sigma.alpha.beta: restriction to T_p = Bl_p S, where E is the exceptional curve."""
    s_a, m_a = (alpha[0], alpha[2]), alpha[1]
    s_b, m_b = (beta[0], beta[2]), beta[1]
    return L.surface.dot(s_a, s_b) - m_a * m_b


@dataclass(frozen=True)
class FourClass:
    """sum c_ij e_i e_j (i <= j) + sigma * Sigma in H^4(X)."""

    sym: tuple[tuple[tuple[int, int], int], ...]
    sigma: int = 0

    @classmethod
    def square(cls, v, sigma: int = 0) -> FourClass:
        return cls.product(v, v, sigma)

    @classmethod
    def product(cls, u, v, sigma: int = 0) -> FourClass:
        coeffs: dict[tuple[int, int], int] = {}
        for i in range(3):
            for j in range(3):
                c = u[i] * v[j]
                if c:
                    key = (min(i, j), max(i, j))
                    coeffs[key] = coeffs.get(key, 0) + c
        return cls(tuple(sorted((k, c) for k, c in coeffs.items() if c)), sigma)

    def sigma_coefficient(self) -> int:
        return self.sigma

    def dot(self, L: Hilb2Lattice, alpha, beta) -> int:
        """Intersection number with the product alpha*beta."""
        total = 0
        for (i, j), c in self.sym:
            total += c * fujiki_product(L, BASIS[i], BASIS[j], alpha, beta)
        return total + self.sigma * surface_class_product(L, alpha, beta)

    def __str__(self):
        parts = []
        for (i, j), c in self.sym:
            mono = f"{LABELS[i]}^2" if i == j else f"{LABELS[i]}{LABELS[j]}"
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        if self.sigma:
            parts.append(f"{self.sigma}*Sigma")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def delta_class(L: Hilb2Lattice, k: int) -> FourClass:
    """H_k^2 - q(H_k) Sigma."""
    h = _gen(k)
    return FourClass.square(h, sigma=-L.q(h))


@dataclass(frozen=True)
class DeltaTest:
    with_e: int             # Delta_1 . E^2
    with_image: int         # Delta_1 . (iota2^* E)^2
    image_of_e: tuple[int, int, int]
    equal: bool

    @property
    def verdict(self) -> str:
        return "INVARIANT_UNDECIDED" if self.equal else "NOT_INVARIANT"


def delta_invariance_test(L: Hilb2Lattice) -> DeltaTest:
    delta = delta_class(L, 1)
    image = beauville_matrix(L, 2)(E)
    first = delta.dot(L, E, E)
    second = delta.dot(L, image, image)
    return DeltaTest(first, second, tuple(image), first == second)


# --------------------------------------------------------------------------
# periodic vs invariant
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodicityReduction:
    holds: bool
    eigenvalue_one_multiplicity: int
    cyclotomic_on_ns: tuple[int, ...]
    cyclotomic_on_sym2: tuple[int, ...]

    def __bool__(self):
        return self.holds


def sym2_spectrum_poly(p: IntPolynomial) -> IntPolynomial:
    """Char poly of the action on Sym^2(NS + T) with T a trivial summand.

    Sym^2 splits as Sym^2 NS + NS (x) T + Sym^2 T; only the eigenvalue
    pattern matters, so T contributes eigenvalue 1 once per piece.
    """
    c = companion_matrix(p)
    return char_poly(symmetric_square(c)) * p * IntPolynomial((-1, 1))


def periodicity_reduction(target) -> PeriodicityReduction:
    """Do periodic classes in H^4 have to be invariant?

    ``target`` is a Hilb2Lattice or directly the characteristic polynomial of
    the action on NS(X).  Holds iff 1 is a simple eigenvalue on NS(X), no
    other eigenvalue is a root of unity, and every root-of-unity eigenvalue
    of the induced action on Sym^2 is 1.
    """
    p = composed_action(target).char_poly if isinstance(target, Hilb2Lattice) else target
    mult = cyclotomic_multiplicity(p, 1)
    on_ns = tuple(cyclotomic_root_of_unity_part(p))
    on_sym2 = tuple(cyclotomic_root_of_unity_part(sym2_spectrum_poly(p)))
    holds = mult == 1 and on_ns == (1,) and on_sym2 == (1,)
    return PeriodicityReduction(holds, mult, on_ns, on_sym2)

