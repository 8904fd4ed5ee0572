"""The rank-2 lattice NS(S) with form b_a(x, y) = 4x^2 + 2axy + 4y^2.

Basis h1 = (1, 0), h2 = (0, 1).  Nodal classes (b_a(v) = -2) are found
through the Pell equation t^2 - (a^2 - 16) y^2 = -8 with t = 4x + ay,
which is 4*b_a(x, y) + 8 = 0 after completing the square.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

from .exact import IntMatrix, bilinear, is_square
from .pell import (
    Congruence,
    PellProblem,
    apply_unit,
    enumerate_solutions,
    solution_classes,
    sort_key,
    square_case_solutions,
    unit_order_mod,
)


class InvalidParameter(ValueError):
    pass


def check_parameter(a: int) -> int:
    if not isinstance(a, int) or isinstance(a, bool):
        raise InvalidParameter(f"a must be an integer, got {a!r}")
    if abs(a) < 5:
        raise InvalidParameter(f"a={a} violates |a| >= 5 (the form must be hyperbolic)")
    return a


@dataclass(frozen=True)
class SurfaceLattice:
    a: int
    gram: IntMatrix = field(init=False)
    D: int = field(init=False)

    def __post_init__(self):
        check_parameter(self.a)
        object.__setattr__(self, "gram", IntMatrix(((4, self.a), (self.a, 4))))
        object.__setattr__(self, "D", self.a * self.a - 16)

    def form(self, v) -> int:
        x, y = v
        return 4 * x * x + 2 * self.a * x * y + 4 * y * y

    def dot(self, v, w) -> int:
        return bilinear(self.gram, v, w)

    def degree(self, v, k: int) -> int:
        """h_k . v"""
        return self.dot(_generator(k), v)

    def pell_problem(self) -> PellProblem:
        # x = (t - a y) / 4 must be integral
        return PellProblem(self.D, -8, Congruence(4, self.a))


def build(a: int) -> SurfaceLattice:
    return SurfaceLattice(a)


def _generator(k: int) -> tuple[int, int]:
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    return (1, 0) if k == 1 else (0, 1)


@dataclass(frozen=True)
class NodalClass:
    v: tuple[int, int]
    degrees: tuple[int, int]

    @property
    def x(self) -> int:
        return self.v[0]

    @property
    def y(self) -> int:
        return self.v[1]


def _nodal(L: SurfaceLattice, v: tuple[int, int]) -> NodalClass:
    assert L.form(v) == -2
    return NodalClass(v, (L.degree(v, 1), L.degree(v, 2)))


def _from_pell(L: SurfaceLattice, sol: tuple[int, int]) -> tuple[int, int]:
    t, y = sol
    x, r = divmod(t - L.a * y, 4)
    assert r == 0
    return x, y


@dataclass(frozen=True)
class EllipticPencil:
    """Outcome of the isotropy test for b_a on NS(S)."""

    present: bool
    isotropic_vector: tuple[int, int] | None
    discriminant: int
    isqrt_discriminant: int

    def __bool__(self):
        return self.present


def has_elliptic_pencil(L: SurfaceLattice) -> EllipticPencil:
    """b_a represents 0 iff a^2 - 16 is a square; witness either way."""
    D, s = L.D, isqrt(L.D)
    if s * s != D:
        return EllipticPencil(False, None, D, s)
    # 4x + ay = s*y  =>  x/y = (s - a)/4
    num, den = s - L.a, 4
    g = gcd(num, den)
    x, y = num // g, den // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    assert L.form((x, y)) == 0
    return EllipticPencil(True, (x, y), D, s)


def nodal_solutions(L: SurfaceLattice, y_bound: int) -> list[tuple[int, int]]:
    """Pell pairs (t, y) behind the nodal classes with |y| <= y_bound."""
    if is_square(L.D):
        cong = Congruence(4, L.a)
        return [s for s in square_case_solutions(L.D, -8)
                if abs(s[1]) <= y_bound and cong.holds(*s)]
    return enumerate_solutions(L.pell_problem(), y_bound)


def nodal_classes(L: SurfaceLattice, y_bound: int) -> list[NodalClass]:
    """Every v with b_a(v) = -2 and |y| <= y_bound, ordered by the Pell (|y|, y, t) key."""
    return [_nodal(L, _from_pell(L, s)) for s in nodal_solutions(L, y_bound)]


def brute_force_nodal(L: SurfaceLattice, box: int, y_bound: int) -> list[tuple[int, int]]:
    return sorted(((x, y) for x in range(-box, box + 1) for y in range(-y_bound, y_bound + 1)
                   if L.form((x, y)) == -2), key=lambda v: sort_key((4 * v[0] + L.a * v[1], v[1])))


def _nodal_candidates(L: SurfaceLattice) -> list[tuple[int, int]]:
    """Nodal vectors that realise the smallest |y| in every unit orbit.

    Along an orbit |y| and |t| grow away from the class representative; the
    integrality filter mod 4 is periodic with the order of the unit mod 4,
    so scanning that many steps either side is enough.
    """
    if is_square(L.D):
        return [_from_pell(L, s) for s in nodal_solutions(L, 8)]
    problem = L.pell_problem()
    cong = problem.congruence
    out = []
    for cls in solution_classes(problem):
        order = unit_order_mod(cls.unit, L.D, 4)
        orbit = [apply_unit(cls.fundamental, cls.unit, L.D, k) for k in range(-order - 1, order + 2)]
        sizes = [(abs(y), abs(t)) for t, y in orbit]
        # the window must be monotone away from its bottom
        bottom = sizes.index(min(sizes))
        assert all(sizes[i] >= sizes[i + 1] for i in range(bottom))
        assert all(sizes[i] <= sizes[i + 1] for i in range(bottom, len(sizes) - 1))
        for t, y in orbit:
            for s in ((t, y), (-t, -y)):
                if cong.holds(*s):
                    out.append(_from_pell(L, s))
    return out


@dataclass(frozen=True)
class AmpleCertificate:
    passed: bool
    witness: int               # 8a^2 - 256
    finite_range: int          # explicit check covers 1 <= |y| <= finite_range
    finite_checked: int        # nodal classes examined explicitly
    counterexample: NodalClass | None = None
    note: str = ""


def ample_pair_certificate(L: SurfaceLattice) -> AmpleCertificate:
    """Do h1 and h2 pair with the same nonzero sign against every nodal class?

    On nodal classes (a t)^2 - (D y)^2 = 16 D y^2 - 8 a^2, with h1.v = t and
    4 h2.v = a t - D y.  Once 16 D y^2 > 8 a^2 the sign of h2.v is that of
    a*t, so only |y| with 2 D y^2 <= a^2 need an explicit look (y = 0 would
    need t^2 = -8).  For |a| >= 6 the witness 8a^2 - 256 is positive and that
    finite range is empty.
    """
    a, D = L.a, L.D
    witness = 8 * a * a - 256
    boundary = isqrt(a * a // (2 * D))
    candidates = _nodal_candidates(L)
    if a < 0:
        # h1.h2 = a < 0: opposite halves of the positive cone, no common chamber
        classes = sorted((_nodal(L, v) for v in candidates), key=lambda v: (abs(v.y), v.y, v.degrees[0]))
        bad = next((v for v in classes if v.degrees[0] * v.degrees[1] <= 0), None)
        return AmpleCertificate(False, witness, boundary, len(classes), bad,
                                f"h1.h2 = {a} < 0: h1 and h2 lie in opposite halves of the positive cone")
    if not candidates:
        return AmpleCertificate(True, witness, boundary, 0, None,
                                "no nodal classes: h1 and h2 are ample outright")
    first_y = min(abs(y) for _, y in candidates)
    classes = nodal_classes(L, max(boundary, first_y))
    checked = 0
    for v in classes:
        if abs(v.y) > boundary:
            continue
        checked += 1
        d1, d2 = v.degrees
        if d1 == 0 or d2 == 0 or (d1 > 0) != (d2 > 0):
            return AmpleCertificate(False, witness, boundary, checked, v,
                                    "h1 and h2 separated by a nodal class")
    # beyond the boundary sign(h2.v) = sign(a t) = sign(h1.v) since a > 0
    return AmpleCertificate(True, witness, boundary, checked, None,
                            "signs agree on all nodal classes")


def min_nodal_degree(L: SurfaceLattice, k: int) -> int | None:
    """min |h_k . v| over all nodal classes, or None when there are none.

    For k = 1 the degree is |t|, increasing in |y|, so the minimum sits on an
    orbit bottom.  The swap (x, y) -> (y, x) preserves b_a and exchanges h1
    and h2, which settles k = 2.
    """
    _generator(k)
    cands = _nodal_candidates(L)
    if not cands:
        return None
    best = min(cands, key=lambda v: abs(L.degree(v, 1)))
    m = abs(L.degree(best, 1))
    if k == 2:
        swapped = (best[1], best[0])
        assert L.form(swapped) == -2
        assert abs(L.degree(swapped, 2)) == m
    return m


@dataclass(frozen=True)
class Checklist:
    k: int
    items: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    @property
    def verdict(self) -> str:
        return "VERY_AMPLE_AND_LINE_FREE" if self.passed else "NOT_CERTIFIED"


def very_ample_checklist(L: SurfaceLattice, k: int) -> Checklist:
    """Hypotheses for h_k to embed S as a quartic containing no lines."""
    h = _generator(k)
    square = L.form(h)
    pencil = has_elliptic_pencil(L)
    mdeg = min_nodal_degree(L, k)
    items = (
        ("degree", square >= 4, f"h{k}^2 = {square}"),
        ("no_elliptic_pencil", not pencil.present,
         f"isotropic vector {pencil.isotropic_vector}" if pencil.present
         else f"{pencil.isqrt_discriminant}^2 != {pencil.discriminant}"),
        ("no_orthogonal_nodal_class", mdeg != 0, f"min |h{k}.v| = {mdeg}"),
        ("no_lines", mdeg is None or mdeg >= 2, f"min |h{k}.v| = {mdeg}"),
    )
    return Checklist(k, items)


def reflect_nodal(L: SurfaceLattice, w, v) -> tuple[int, int]:
    """Picard-Lefschetz reflection w -> w + (w.v) v in a (-2)-class v."""
    if isinstance(v, NodalClass):
        v = v.v
    if L.form(v) != -2:
        raise ValueError(f"{v} is not a nodal class (b_a = {L.form(v)})")
    c = L.dot(w, v)
    return w[0] + c * v[0], w[1] + c * v[1]
