"""Prime-exponent vectors and exact integer linear algebra.

Deciding whether naturals x_1,...,x_m are multiplicatively independent
(x_1^{a_1}...x_m^{a_m} = 1 forces all a_i = 0) reduces to an exact kernel
computation on their prime-exponent vectors.  Every Dependent answer comes
with an integer certificate that re-verifies by summing exponent vectors,
plus a high-precision logarithm cross-check.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import InternalInconsistencyError, InvalidInputError

_TRIAL_LIMIT = 10**6
# Deterministic Miller-Rabin witness set: correct for all n < 3.3 * 10^24,
# far beyond the 64-bit input scale this module supports.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_LOG_CHECK_DPS = 50


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (fixed witness set)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite n.

    The polynomial offset is drawn from an RNG seeded by n, so runs are
    randomized in style but fully reproducible.
    """
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    """Complete prime factorization of a natural number n >= 1."""

    n: int
    factors: dict[int, int]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"cannot factor {self.n}: need n >= 1")
        prod = 1
        for p, e in self.factors.items():
            if e < 1 or not is_prime(p):
                raise InvalidInputError(f"bad factor entry {p}^{e} for {self.n}")
            prod *= p**e
        if prod != self.n:
            raise InvalidInputError(f"factors of {self.n} reconstruct {prod}")

    def primes(self) -> list[int]:
        return sorted(self.factors)


_INPUT_LIMIT = 1 << 64


def factor(n: int) -> Factorization:
    """Factor a natural by trial division to 10^6, then seeded Pollard rho.

    Inputs are capped at 64 bits; beyond that the rho stage has no useful
    runtime guarantee, so the call is rejected instead of left to stall.
    """
    if n < 1:
        raise InvalidInputError(f"cannot factor {n}: need n >= 1")
    if n >= _INPUT_LIMIT:
        raise InvalidInputError(f"{n} exceeds the 64-bit input scale")
    remaining = n
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while remaining % p == 0:
            found[p] = found.get(p, 0) + 1
            remaining //= p
    # 2/3-coprime wheel; stop early once the cofactor is provably prime.
    if remaining > 1 and is_prime(remaining):
        found[remaining] = found.get(remaining, 0) + 1
        remaining = 1
    d, step = 7, 4
    while d * d <= remaining and d <= _TRIAL_LIMIT:
        if remaining % d == 0:
            while remaining % d == 0:
                found[d] = found.get(d, 0) + 1
                remaining //= d
            if remaining > 1 and is_prime(remaining):
                found[remaining] = found.get(remaining, 0) + 1
                remaining = 1
        d += step
        step = 6 - step
    stack = [remaining] if remaining > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        g = _pollard_rho(m)
        stack.extend((g, m // g))
    return Factorization(n, dict(sorted(found.items())))


def perfect_power_root(n: int) -> tuple[int, int]:
    """Return (m, g) with n = m^g and g maximal; (1, 1) for n = 1."""
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got {n}")
    if n == 1:
        return (1, 1)
    facs = factor(n).factors
    g = math.gcd(*facs.values())
    m = 1
    for p, e in facs.items():
        m *= p ** (e // g)
    return (m, g)


# ---------------------------------------------------------------------------
# Exact kernels over the rationals.


def _rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref, pivot column indices)."""
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def _primitive(vec: list[Fraction]) -> list[int]:
    """Scale a rational vector to a primitive integer vector, leading entry > 0."""
    den = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * den) for x in vec]
    g = math.gcd(*ints)
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return ints


def rational_kernel(rows: list[list[Fraction]]) -> list[list[int]]:
    """Basis of {a : sum_i a_i * rows[i] = 0}, as primitive integer vectors.

    Exact elimination over the rationals; the basis is the canonical one read
    off the RREF free columns, so output is deterministic.
    """
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise InvalidInputError("kernel rows must all have equal length")
    # Null space of the transpose: columns of A are the input rows.
    a = [[Fraction(rows[i][j]) for i in range(m)] for j in range(n)]
    if n == 0:
        rref, pivots = [], []
    else:
        rref, pivots = _rref(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(m):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m
        v[free] = Fraction(1)
        for j, p in enumerate(pivots):
            v[p] = -rref[j][free]
        basis.append(_primitive(v))
    return basis


def integer_kernel(rows: list[list[int]]) -> list[list[int]]:
    """rational_kernel specialized to integer input rows."""
    return rational_kernel([[Fraction(x) for x in row] for row in rows])


# ---------------------------------------------------------------------------
# Multiplicative independence.


@dataclass(frozen=True)
class ExponentMatrix:
    """Prime-exponent rows for a tuple of naturals, over their joint primes."""

    primes: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    ns: tuple[int, ...]

    @classmethod
    def from_naturals(cls, ns: list[int]) -> "ExponentMatrix":
        if not ns:
            raise InvalidInputError("need at least one natural number")
        facs = [factor(n) for n in ns]
        primes = sorted({p for f in facs for p in f.factors})
        rows = tuple(
            tuple(f.factors.get(p, 0) for p in primes) for f in facs
        )
        return cls(tuple(primes), rows, tuple(ns))


@dataclass(frozen=True)
class DependencyCertificate:
    """Integer exponents (a_1,...,a_m), not all zero, with prod x_i^{a_i} = 1."""

    exponents: tuple[int, ...]

    def verify(self, matrix: ExponentMatrix) -> bool:
        if all(a == 0 for a in self.exponents):
            return False
        cols = len(matrix.primes)
        for j in range(cols):
            if sum(a * row[j] for a, row in zip(self.exponents, matrix.rows)) != 0:
                return False
        return True


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    matrix: ExponentMatrix
    certificate: DependencyCertificate | None = None
    kernel: tuple[tuple[int, ...], ...] = field(default=())


def _certificate_key(vec: list[int]) -> tuple:
    # Graded-lexicographic: grade by total absolute exponent, then entries.
    return (sum(abs(x) for x in vec), tuple(vec))


def _log_cross_check(ns: tuple[int, ...], exponents: tuple[int, ...]) -> None:
    old = mpmath.mp.dps
    mpmath.mp.dps = _LOG_CHECK_DPS
    try:
        s = mpmath.fsum(a * mpmath.log(x) for a, x in zip(exponents, ns))
        if abs(s) >= mpmath.mpf(10) ** -30:
            raise InternalInconsistencyError(
                f"certificate {exponents} for {ns} fails the log cross-check: {s}"
            )
    finally:
        mpmath.mp.dps = old


def mult_independent(ns: list[int]) -> IndependenceResult:
    """Decide multiplicative independence of naturals, with exact certificate.

    Dependent results carry the graded-lexicographically smallest primitive
    kernel vector; it is re-verified on the exponent matrix and numerically
    against the logarithms at 50 digits.
    """
    if not ns:
        raise InvalidInputError("need at least one natural number")
    if any(n < 1 for n in ns):
        raise InvalidInputError(f"multiplicative independence needs naturals >= 1, got {ns}")
    matrix = ExponentMatrix.from_naturals(ns)
    kernel = integer_kernel([list(r) for r in matrix.rows])
    if not kernel:
        return IndependenceResult(True, matrix)
    best = min(kernel, key=_certificate_key)
    cert = DependencyCertificate(tuple(best))
    if not cert.verify(matrix):
        raise InternalInconsistencyError(f"kernel vector {best} does not verify on {ns}")
    _log_cross_check(matrix.ns, cert.exponents)
    return IndependenceResult(False, matrix, cert, tuple(tuple(v) for v in kernel))
