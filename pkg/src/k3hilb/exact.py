"""Exact integer/rational linear algebra on small matrices and polynomials.

Everything here works over ``int`` and ``fractions.Fraction``; no floats.
Matrices are tiny (dimension <= 6), so the algorithms favour clarity over
asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, immutable."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> IntMatrix:
        return cls(tuple((0,) * (n if m is None else m) for _ in range(n)))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> IntMatrix:
        return cls(tuple(zip(*cols)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def is_square(self) -> bool:
        n, m = self.shape
        return n == m

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.rows)))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def trace(self) -> int:
        self._require_square()
        return sum(self.rows[i][i] for i in range(len(self.rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + other.scale(-1)

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(tuple(tuple(c * x for x in r) for r in self.rows))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.shape[1] != other.shape[0]:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.T.rows
            return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols)
                                   for r in self.rows))
        vec = tuple(other)
        if self.shape[1] != len(vec):
            raise DimensionError(f"cannot apply {self.shape} matrix to length-{len(vec)} vector")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.rows)

    def __pow__(self, k: int) -> IntMatrix:
        self._require_square()
        if k < 0:
            raise ValueError("negative powers not supported")
        result, base = IntMatrix.identity(self.shape[0]), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def det(self) -> int:
        """Bareiss fraction-free elimination."""
        self._require_square()
        n = self.shape[0]
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def _require_square(self):
        if not self.is_square:
            raise DimensionError(f"matrix of shape {self.shape} is not square")

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self):
        width = max((len(str(x)) for r in self.rows for x in r), default=1)
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in self.rows)


def bilinear(g: IntMatrix, u: Sequence[int], v: Sequence[int]) -> int:
    return sum(u[i] * g.rows[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def is_isometry(m: IntMatrix, g: IntMatrix) -> bool:
    """True iff ``m.T @ g @ m == g``."""
    if not (m.is_square and g.is_square) or m.shape != g.shape:
        raise DimensionError(f"shapes {m.shape} and {g.shape} do not match")
    if g != g.T:
        raise ValueError("Gram matrix must be symmetric")
    return m.T @ g @ m == g


def symmetric_square(m: IntMatrix) -> IntMatrix:
    """Matrix of the induced action on Sym^2, basis e_i*e_j for i <= j."""
    m._require_square()
    n = m.shape[0]
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: k for k, p in enumerate(pairs)}
    cols = []
    for (i, j) in pairs:
        # image of e_i*e_j is (M e_i)(M e_j)
        ci, cj = m.column(i), m.column(j)
        col = [0] * len(pairs)
        for k in range(n):
            for l in range(n):
                c = ci[k] * cj[l]
                if c:
                    col[index[(min(k, l), max(k, l))]] += c
        cols.append(col)
    return IntMatrix.from_columns(cols)


def companion_matrix(p: IntPolynomial) -> IntMatrix:
    if p.degree < 1 or p.leading != 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    n = p.degree
    rows = []
    for i in range(n):
        row = [0] * n
        if i > 0:
            row[i - 1] = 1
        row[n - 1] = -p.coeffs[i]
        rows.append(row)
    return IntMatrix(tuple(map(tuple, rows)))


def rational_kernel(m: IntMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel of ``m`` over Q (reduced row echelon form)."""
    n_rows, n_cols = m.shape
    a = [[Fraction(x) for x in r] for r in m.rows]
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


def primitive_integer_vector(v: Iterable[Fraction | int]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector (sign kept)."""
    from math import gcd, lcm

    v = [Fraction(x) for x in v]
    if all(x == 0 for x in v):
        raise ValueError("zero vector has no primitive representative")
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial: -1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def divmod_monic(self, d: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Division by a monic divisor; stays in Z[t]."""
        if d.leading != 1:
            raise ValueError("divisor must be monic")
        r = list(self.coeffs)
        q = [0] * max(len(r) - d.degree, 0)
        for k in range(len(r) - 1 - d.degree, -1, -1):
            c = r[k + d.degree]
            q[k] = c
            if c:
                for i, dc in enumerate(d.coeffs):
                    r[k + i] -= c * dc
        return IntPolynomial(tuple(q)), IntPolynomial(tuple(r))

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def at_matrix(self, m: IntMatrix) -> IntMatrix:
        n = m.shape[0]
        acc = IntMatrix.zeros(n)
        for c in reversed(self.coeffs):
            acc = acc @ m + IntMatrix.identity(n).scale(c)
        return acc

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, b in terms[1:]:
            out += f" {s} {b}"
        return out


def char_poly(m: IntMatrix) -> IntPolynomial:
    """det(tI - M) via Faddeev-LeVerrier; every division is exact."""
    if not m.is_square:
        raise DimensionError(f"matrix of shape {m.shape} is not square")
    n = m.shape[0]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    ident = IntMatrix.identity(n)
    mk = IntMatrix.zeros(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[n - k + 1])
        tr = (m @ mk).trace()
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return IntPolynomial(tuple(coeffs))


# --------------------------------------------------------------------------
# cyclotomic factors
# --------------------------------------------------------------------------

def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    n = abs(n)
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in _factorize(n):
        result -= result // p
    return result


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
    for d in range(1, n):
        if n % d == 0:
            p, r = p.divmod_monic(cyclotomic(d))
            assert r.is_zero
    return p


def cyclotomic_multiplicity(p: IntPolynomial, n: int) -> int:
    phi = cyclotomic(n)
    k = 0
    while not p.is_zero and p.degree >= phi.degree:
        q, r = p.divmod_monic(phi)
        if not r.is_zero:
            break
        p, k = q, k + 1
    return k


def cyclotomic_root_of_unity_part(p: IntPolynomial) -> list[int]:
    """Indices n of every cyclotomic polynomial Phi_n dividing p, ascending.

    phi(n) >= sqrt(n/2) bounds the search to n <= 2*deg(p)^2.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    deg = p.degree
    found = []
    for n in range(1, 2 * deg * deg + 1):
        if totient(n) <= deg and cyclotomic_multiplicity(p, n):
            found.append(n)
    return found


# --------------------------------------------------------------------------
# real roots over Q
# --------------------------------------------------------------------------

def _trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _qrem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a.pop()
        _trim(a)
    return a


def _qgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        a, b = b, _qrem(a, b)
    return [x / a[-1] for x in a]


def _qdiv(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = f
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a.pop()
        _trim(a)
    assert not a
    return q


def _qeval(c: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for v in reversed(c):
        acc = acc * x + v
    return acc


def squarefree_part(p: IntPolynomial) -> list[Fraction]:
    """p / gcd(p, p') as a monic rational coefficient list."""
    c = [Fraction(x) for x in p.coeffs]
    d = [Fraction(x) for x in p.derivative().coeffs]
    if not d:
        return [x / c[-1] for x in c]
    g = _qgcd(c, d)
    q = _qdiv(c, g)
    return [x / q[-1] for x in q]


class SturmChain:
    """Sturm sequence of a squarefree rational polynomial."""

    def __init__(self, coeffs: list[Fraction]):
        self.chain = [list(coeffs)]
        deriv = _trim([i * x for i, x in enumerate(coeffs)][1:])
        if deriv:
            self.chain.append(deriv)
            while True:
                r = _qrem(self.chain[-2], self.chain[-1])
                if not r:
                    break
                self.chain.append([-x for x in r])

    def sign_changes(self, x: Fraction) -> int:
        signs = [s for s in ((_qeval(c, x) > 0) - (_qeval(c, x) < 0) for c in self.chain) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """Number of distinct real roots in (lo, hi]."""
        return self.sign_changes(lo) - self.sign_changes(hi)


@dataclass(frozen=True)
class RationalInterval:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lower), Fraction(self.upper)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __contains__(self, x) -> bool:
        return self.lower <= x <= self.upper

    def __str__(self):
        return f"[{self.lower}, {self.upper}]"


def cauchy_bound(coeffs: Sequence[Fraction]) -> Fraction:
    lead = abs(Fraction(coeffs[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in coeffs[:-1]), default=Fraction(0))


def spectral_radius_bounds(p: IntPolynomial, width: Fraction | int = Fraction(1, 10**6)) -> RationalInterval:
    """Certified enclosure of the largest real root of p, which must exceed 1.

    Works on the squarefree part and bisects with Sturm counts, so the
    result is exact: the root lies in [lower, upper] and width <= ``width``.
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if p.is_zero:
        raise ValueError("zero polynomial")
    sq = squarefree_part(p)
    if len(sq) == 2:
        root = -sq[0] / sq[1]
        if root <= 1:
            raise ValueError("polynomial has no real root above 1")
        return RationalInterval(root, root)
    sturm = SturmChain(sq)
    lo, hi = Fraction(1), cauchy_bound(sq)
    if sturm.count(lo, hi) == 0:
        raise ValueError("polynomial has no real root above 1")
    while hi - lo > width:
        mid = (lo + hi) / 2
        if sturm.count(mid, hi) > 0:
            lo = mid
        elif _qeval(sq, mid) == 0:
            return RationalInterval(mid, mid)
        else:
            hi = mid
    return RationalInterval(lo, hi)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
