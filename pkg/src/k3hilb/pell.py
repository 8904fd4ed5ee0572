"""Generalized Pell equations t^2 - D*y^2 = N.

Solutions come in classes under multiplication by the norm-one units
+-eps^k, eps = u + v*sqrt(D).  A class is represented by its member with the
smallest positive y (ties broken towards positive t).

Finding one member of every class uses a bounded search below the classical
fundamental-solution bound when that bound is small, and otherwise the
Lagrange-Matthews-Mollin continued fraction method.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator

from .exact import is_square

# largest y range scanned by the bounded search before switching to LMM
BOUNDED_SEARCH_LIMIT = 20_000


@dataclass(frozen=True)
class Congruence:
    """Filter t = residue * y (mod modulus)."""

    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")

    def holds(self, t: int, y: int) -> bool:
        return (t - self.residue * y) % self.modulus == 0


@dataclass(frozen=True)
class PellProblem:
    D: int
    N: int
    congruence: Congruence | None = None

    def __post_init__(self):
        if self.D <= 0 or is_square(self.D):
            raise ValueError(f"D must be a positive non-square, got {self.D}")
        if self.N == 0:
            raise ValueError("N must be nonzero")

    def residual(self, t: int, y: int) -> int:
        return t * t - self.D * y * y - self.N


@dataclass(frozen=True)
class PellSolutionClass:
    fundamental: tuple[int, int]
    unit: tuple[int, int]


# --------------------------------------------------------------------------
# continued fractions
# --------------------------------------------------------------------------

def _floor_quadratic(p: int, q: int, s: int) -> int:
    """floor((p + sqrt(D)) / q), with s = isqrt(D) and D non-square."""
    if q > 0:
        return (p + s) // q
    return -((p + s) // -q) - 1


def pqa(p0: int, q0: int, D: int) -> Iterator[tuple[int, int, int, int, int]]:
    """Continued fraction expansion of (p0 + sqrt(D)) / q0.

    Yields (i, P_i, Q_i, G_{i-1}, B_{i-1}) where G, B are the numerator
    sequences of the convergents in Robertson's normalisation, so that
    G_{i-1}^2 - D*B_{i-1}^2 = (-1)^i * Q_i * q0.  Requires q0 | D - p0^2.
    """
    if (D - p0 * p0) % q0:
        raise ValueError("q0 must divide D - p0^2")
    s = isqrt(D)
    a_prev2, a_prev1 = 0, 1
    b_prev2, b_prev1 = 1, 0
    g_prev2, g_prev1 = -p0, q0
    p, q = p0, q0
    i = 0
    while True:
        yield i, p, q, g_prev1, b_prev1
        a = _floor_quadratic(p, q, s)
        a_prev2, a_prev1 = a_prev1, a * a_prev1 + a_prev2
        b_prev2, b_prev1 = b_prev1, a * b_prev1 + b_prev2
        g_prev2, g_prev1 = g_prev1, a * g_prev1 + g_prev2
        p = a * q - p
        q = (D - p * p) // q
        i += 1


def _period_data(D: int) -> tuple[int, int, int]:
    """(A, B, l): A^2 - D*B^2 = (-1)^l from the first period of sqrt(D)."""
    for i, _p, q, g, b in pqa(0, 1, D):
        if i >= 1 and q == 1:
            return g, b, i


def fundamental_unit(D: int) -> tuple[int, int]:
    """Minimal (u, v) with u, v > 0 and u^2 - D*v^2 = 1."""
    if D < 2 or is_square(D):
        raise ValueError(f"D must be a non-square >= 2, got {D}")
    g, b, length = _period_data(D)
    if length % 2:
        g, b = g * g + D * b * b, 2 * g * b
    assert g * g - D * b * b == 1
    return g, b


def negative_unit(D: int) -> tuple[int, int] | None:
    """Minimal positive solution of u^2 - D*v^2 = -1, if any."""
    g, b, length = _period_data(D)
    return (g, b) if length % 2 else None


def apply_unit(sol: tuple[int, int], unit: tuple[int, int], D: int, power: int = 1) -> tuple[int, int]:
    t, y = sol
    u, v = unit
    if power < 0:
        v, power = -v, -power
    for _ in range(power):
        t, y = u * t + D * v * y, v * t + u * y
    return t, y


# --------------------------------------------------------------------------
# class representatives
# --------------------------------------------------------------------------

def canonical_representative(sol: tuple[int, int], unit: tuple[int, int], D: int) -> tuple[int, int]:
    """Member of the class of ``sol`` under +-eps^k with least positive y.

    |y| is unimodal along an orbit, so walk downhill and look at the bottom
    and its neighbours.
    """
    cur = sol
    for direction in (1, -1):
        while True:
            nxt = apply_unit(cur, unit, D, direction)
            if abs(nxt[1]) < abs(cur[1]):
                cur = nxt
            else:
                break
    candidates = []
    for k in (-1, 0, 1):
        t, y = apply_unit(cur, unit, D, k)
        if y < 0:
            t, y = -t, -y
        if y > 0:
            candidates.append((y, t < 0, abs(t), t))
    y, _neg, _abs, t = min(candidates)
    return t, y


def _nagell_bound(D: int, N: int, unit: tuple[int, int]) -> int:
    """Classical bound on y for fundamental solutions, doubled."""
    u, v = unit
    if N < 0:
        # y <= sqrt(|N| (u+1) / (2D))
        bound = isqrt(-N * (u + 1) // (2 * D)) + 1
    else:
        # y <= v * sqrt(N / (2(u+1)))
        bound = isqrt(v * v * N // (2 * (u + 1))) + 1
    return 2 * bound


def _seeds_by_bounded_search(D: int, N: int, y_max: int) -> set[tuple[int, int]]:
    seeds = set()
    for y in range(0, y_max + 1):
        r = N + D * y * y
        if r >= 0 and is_square(r):
            t = isqrt(r)
            seeds.update({(t, y), (-t, y)})
    return seeds


def _square_divisors(n: int) -> list[int]:
    n = abs(n)
    return [f for f in range(1, isqrt(n) + 1) if n % (f * f) == 0]


def _seeds_by_lmm(D: int, N: int) -> set[tuple[int, int]]:
    """One solution in every class (Lagrange-Matthews-Mollin)."""
    seeds = set()
    neg = negative_unit(D)
    for f in _square_divisors(N):
        m = N // (f * f)
        am = abs(m)
        zs = [z for z in range(-am // 2 + 1, am // 2 + 1) if (z * z - D) % am == 0]
        for z in zs:
            seen = set()
            for i, p, q, g, b in pqa(z, am, D):
                if i >= 1 and abs(q) == 1:
                    val = g * g - D * b * b
                    if val == m:
                        seeds.add((f * g, f * b))
                    elif neg is not None:
                        nb, nc = neg
                        seeds.add((f * (g * nb + b * nc * D), f * (g * nc + b * nb)))
                    break
                if (p, q) in seen:
                    break
                seen.add((p, q))
    return seeds


def solution_classes(problem: PellProblem) -> list[PellSolutionClass]:
    """One PellSolutionClass per class of solutions (congruence filter ignored)."""
    D, N = problem.D, problem.N
    unit = fundamental_unit(D)
    y_max = _nagell_bound(D, N, unit)
    if y_max <= BOUNDED_SEARCH_LIMIT:
        seeds = _seeds_by_bounded_search(D, N, y_max)
    else:
        seeds = _seeds_by_lmm(D, N)
    reps = {canonical_representative(s, unit, D) for s in seeds}
    for t, y in reps:
        assert t * t - D * y * y == N
        # closure: unit images stay inside the known classes
        assert canonical_representative(apply_unit((t, y), unit, D), unit, D) in reps
    ordered = sorted(reps, key=lambda s: (s[1], s[0] < 0, abs(s[0])))
    return [PellSolutionClass(r, unit) for r in ordered]


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

def _orbit_within(rep: tuple[int, int], unit: tuple[int, int], D: int, y_bound: int) -> set[tuple[int, int]]:
    out = set()
    if abs(rep[1]) <= y_bound:
        out.add(rep)
    for direction in (1, -1):
        prev, cur = rep, apply_unit(rep, unit, D, direction)
        while abs(cur[1]) <= y_bound or abs(cur[1]) <= abs(prev[1]):
            if abs(cur[1]) <= y_bound:
                out.add(cur)
            prev, cur = cur, apply_unit(cur, unit, D, direction)
    return out


def sort_key(sol: tuple[int, int]) -> tuple[int, int, int]:
    t, y = sol
    return abs(y), y, t


def enumerate_solutions(problem: PellProblem, y_bound: int) -> list[tuple[int, int]]:
    """All (t, y) with |y| <= y_bound, filter applied, ordered by (|y|, y, t)."""
    if y_bound < 0:
        raise ValueError("y_bound must be non-negative")
    D = problem.D
    found = set()
    for cls in solution_classes(problem):
        orbit = _orbit_within(cls.fundamental, cls.unit, D, y_bound)
        found |= orbit
        found |= {(-t, -y) for t, y in orbit}
    if problem.congruence is not None:
        found = {s for s in found if problem.congruence.holds(*s)}
    for t, y in found:
        assert problem.residual(t, y) == 0
    return sorted(found, key=sort_key)


def brute_force_solutions(D: int, N: int, y_bound: int, congruence: Congruence | None = None) -> list[tuple[int, int]]:
    """Direct scan over |y| <= y_bound; used as an oracle."""
    out = []
    for y in range(-y_bound, y_bound + 1):
        r = N + D * y * y
        if r >= 0 and is_square(r):
            t = isqrt(r)
            for tt in {t, -t}:
                if congruence is None or congruence.holds(tt, y):
                    out.append((tt, y))
    return sorted(out, key=sort_key)


def unit_order_mod(unit: tuple[int, int], D: int, modulus: int) -> int:
    """Order of the matrix [[u, Dv], [v, u]] in GL_2(Z/modulus)."""
    u, v = unit
    step = ((u % modulus, D * v % modulus), (v % modulus, u % modulus))
    ident = ((1 % modulus, 0), (0, 1 % modulus))
    cur, k = step, 1
    while cur != ident:
        cur = tuple(tuple(sum(cur[i][l] * step[l][j] for l in range(2)) % modulus
                          for j in range(2)) for i in range(2))
        k += 1
    return k


# --------------------------------------------------------------------------
# square D: finitely many solutions
# --------------------------------------------------------------------------

def square_case_solutions(D: int, N: int) -> list[tuple[int, int]]:
    """All solutions when D = s^2: (t - s*y)(t + s*y) = N has finitely many."""
    if not is_square(D) or D == 0:
        raise ValueError("D must be a positive perfect square")
    if N == 0:
        raise ValueError("N must be nonzero")
    s = isqrt(D)
    out = set()
    n = abs(N)
    for d1 in range(1, n + 1):
        if n % d1:
            continue
        for e1 in (d1, -d1):
            e2 = N // e1
            # t - s y = e1, t + s y = e2
            if (e1 + e2) % 2 or (e2 - e1) % (2 * s):
                continue
            out.add(((e1 + e2) // 2, (e2 - e1) // (2 * s)))
    return sorted(out, key=sort_key)

