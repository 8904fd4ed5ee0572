"""Acceptance criteria 1-10; each test reports one PASS/FAIL line."""

import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import permutations

from k3hilb.exact import IntMatrix, IntPolynomial, char_poly, is_square
from k3hilb.hilb2 import (
    E,
    Hilb2Lattice,
    abelian_fibration_obstruction,
    beauville_matrix,
    brute_force_zero,
    composed_action,
    delta_invariance_test,
    fujiki_product,
    invariant_class,
    periodicity_reduction,
)
from k3hilb.pell import Congruence, PellProblem, brute_force_solutions, enumerate_solutions, solution_classes
from k3hilb.report import dumps, report_json
from k3hilb.surface import (
    ample_pair_certificate,
    build,
    has_elliptic_pencil,
    min_nodal_degree,
    nodal_classes,
    reflect_nodal,
)
from k3hilb.verdict import density_verdict

RESULTS: list[str] = []
SEED = 20240607


@contextmanager
def criterion(n: int, text: str):
    try:
        yield
    except BaseException:
        line = f"FAIL criterion {n:>2}: {text}"
        RESULTS.append(line)
        print(line)
        raise
    line = f"PASS criterion {n:>2}: {text}"
    RESULTS.append(line)
    print(line)


def test_criterion_01_nodal_class_and_no_pencil():
    with criterion(1, "a=7: b(3,-1) = -2, no elliptic pencil (D=33 non-square)"):
        L = build(7)
        assert L.form((3, -1)) == -2
        assert L.D == 33 and not is_square(33)
        assert not has_elliptic_pencil(L).present


def test_criterion_02_pell_minimum_and_no_lines():
    with criterion(2, "a=7: minimal |t| = 5 at |y| = 1; min nodal degree 5, no lines"):
        classes = solution_classes(PellProblem(33, -8))
        t, y = min((c.fundamental for c in classes), key=lambda s: abs(s[0]))
        assert (abs(t), abs(y)) == (5, 1)
        L = build(7)
        assert min_nodal_degree(L, 1) == 5 and min_nodal_degree(L, 2) == 5
        assert all(abs(c.degrees[0]) != 1 and abs(c.degrees[1]) != 1 for c in nodal_classes(L, 200))


def test_criterion_03_ample_pair():
    with criterion(3, "a=7 ample pair passes with witness 136; a=5 fails at (1,-1)"):
        c7 = ample_pair_certificate(build(7))
        assert c7.passed and c7.witness == 8 * 49 - 256 == 136
        c5 = ample_pair_certificate(build(5))
        assert not c5.passed and c5.counterexample.v == (1, -1)


def test_criterion_04_involutions_and_product():
    with criterion(4, "a=7: M^2 = I, M^T G M = G, product and char poly exact, radius in (22.9560, 22.9570)"):
        X = Hilb2Lattice(7)
        I = IntMatrix.identity(3)
        ms = [beauville_matrix(X, k).matrix for k in (1, 2)]
        for m in ms:
            assert m @ m == I and m.T @ X.gram @ m == X.gram
        prod = ms[0] @ ms[1]
        assert prod.tolist() == [[32, 8, 13], [-24, -5, -9], [-7, -2, -3]]
        assert char_poly(prod) == IntPolynomial((-1, 1)) * IntPolynomial((1, -23, 1))
        r = composed_action(X).radius
        assert Fraction("22.9560") < r.lower <= r.upper < Fraction("22.9570")


def test_criterion_05_invariant_class():
    with criterion(5, "a=7: L = (2,-11,2), q(H1-E, L) = 0, NOT_EFFECTIVE; law (2,-(a+4),2) for a in 7..50"):
        inv = invariant_class(Hilb2Lattice(7))
        assert inv.vector == (2, -11, 2)
        assert Hilb2Lattice(7).q((1, -1, 0), inv.vector) == 0
        assert inv.verdict == "NOT_EFFECTIVE"
        for a in range(7, 51):
            assert invariant_class(Hilb2Lattice(a)).vector == (2, -(a + 4), 2)


def test_criterion_06_no_abelian_fibration():
    with criterion(6, "a=7: ANISOTROPIC with 3-adic obstruction; no zero up to bound 200"):
        f = abelian_fibration_obstruction(Hilb2Lattice(7), 200)
        assert f.verdict == "ANISOTROPIC" and f.place == 3
        assert (3, -1) in f.symbols
        assert brute_force_zero(7, 200) is None


def test_criterion_07_delta_not_invariant():
    with criterion(7, "a=7: Delta.E^2 = -4, Delta.(iota2*E)^2 = 356, NOT_INVARIANT; (-4, 8a^2-36) for a in 5..50"):
        d = delta_invariance_test(Hilb2Lattice(7))
        assert (d.with_e, d.with_image) == (-4, 356) and d.verdict == "NOT_INVARIANT"
        assert periodicity_reduction(Hilb2Lattice(7)).holds
        for a in range(5, 51):
            d = delta_invariance_test(Hilb2Lattice(a))
            assert (d.with_e, d.with_image) == (-4, 8 * a * a - 36)


def test_criterion_08_density_verdicts():
    with criterion(8, "verdicts: 7 dense (8/8), 5 elliptic, 8 stage 1; scan 5..13 dense = {7, 13}"):
        r7 = density_verdict(7)
        assert r7.verdict == "POTENTIALLY_DENSE" and all(s.passed for s in r7.stages) and len(r7.stages) == 8
        assert density_verdict(5).verdict == "ELLIPTIC_CASE"
        r8 = density_verdict(8)
        assert r8.verdict == "NOT_ESTABLISHED" and r8.failed_stage == 1
        dense = {a for a in range(5, 14) if density_verdict(a).verdict == "POTENTIALLY_DENSE"}
        assert dense == {7, 13}


def test_criterion_09_property_suites():
    with criterion(9, "property suites, 100+ seeded cases each"):
        rng = random.Random(SEED)
        for _ in range(100):
            D = rng.choice([d for d in range(2, 500) if not is_square(d)])
            N = rng.choice([n for n in range(-80, 81) if n])
            yb = rng.randint(0, 200)
            cong = Congruence(4, rng.randint(0, 3)) if rng.random() < 0.5 else None
            assert enumerate_solutions(PellProblem(D, N, cong), yb) == brute_force_solutions(D, N, yb, cong)

        for _ in range(100):
            L = build(rng.randint(6, 80))
            classes = nodal_classes(L, 60)
            if not classes:
                L, classes = build(7), nodal_classes(build(7), 60)
            v = rng.choice(classes).v
            w = (rng.randint(-50, 50), rng.randint(-50, 50))
            assert L.form(reflect_nodal(L, w, v)) == L.form(w)

        vec = lambda: tuple(rng.randint(-9, 9) for _ in range(3))
        for _ in range(100):
            X = Hilb2Lattice(rng.choice([a for a in range(-60, 61) if abs(a) >= 5]))
            args = [vec() for _ in range(4)]
            ref = fujiki_product(X, *args)
            assert all(fujiki_product(X, *p) == ref for p in permutations(args))
            x, y = args[:2]
            assert fujiki_product(X, x, x, y, y) == X.q(x) * X.q(y) + 2 * X.q(x, y) ** 2
            assert fujiki_product(X, E, (x[0], 0, x[2]), (y[0], 0, y[2]), (y[0], 0, y[2])) == 0

        for _ in range(100):
            n = rng.randint(1, 5)
            m = IntMatrix([[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)])
            assert char_poly(m).at_matrix(m) == IntMatrix.zeros(n)

        for _ in range(100):
            a = rng.choice([a for a in range(-40, 41) if abs(a) >= 5])
            text = report_json(density_verdict(a, search_bound=10, y_bound=rng.randint(0, 20)))
            assert dumps(json.loads(text)) == text


def _timed(*argv) -> tuple[float, subprocess.CompletedProcess]:
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "k3hilb", *argv], capture_output=True, text=True)
    return time.perf_counter() - start, proc


def test_criterion_10_runtime_budget():
    with criterion(10, "runtime: verify --a 7 < 1 s, scan 5..200 < 30 s"):
        t_verify, proc = _timed("verify", "--a", "7")
        assert proc.returncode == 0 and "POTENTIALLY_DENSE" in proc.stdout
        t_scan, proc = _timed("scan", "--from", "5", "--to", "200")
        assert proc.returncode == 0
        print(f"    verify --a 7: {t_verify:.2f} s, scan 5..200: {t_scan:.2f} s")
        assert t_verify < 1.0
        assert t_scan < 30.0
