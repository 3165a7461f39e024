"""High-precision evaluation of n^gamma and LLL-based integer-relation search.

The probe is an empirical cross-check: find_integer_relation builds the
classic algdep lattice (identity block next to the powers 1, x, ..., x^d
scaled by 10^precision and rounded), reduces it with an exact rational LLL at
delta = 0.99, and reports a candidate minimal polynomial only after a rigorous
residual bound clears 10^(-precision/2).  A candidate is heuristic evidence,
never a proof; NoneFound is never interpreted as transcendence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import iv

from . import numeric
from .errors import (
    ImpreciseInputError,
    InvalidBasisError,
    InvalidInputError,
    PrecisionExceededError,
)
from .gamma import Gamma, NumericGamma, canonicalize, format_gamma, gamma_interval

DEFAULT_DELTA = Fraction(99, 100)


# ---------------------------------------------------------------------------
# Power evaluation.


def eval_power(n: int, g: Gamma, digits: int) -> numeric.ComplexBall:
    """n^gamma = exp(gamma log n) to `digits` significant digits, rigorous radius.

    Principal branch throughout; n = 1 returns exactly 1 for every gamma.
    """
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got {n}")
    if digits < 1:
        raise InvalidInputError(f"digits must be >= 1, got {digits}")
    if n == 1:
        return numeric.ball_exact_int(1)
    if isinstance(g, NumericGamma) and digits > g.max_requestable_digits():
        raise PrecisionExceededError(f"literal states {g.digits} digits, {digits} requested")
    bits = int(digits * 3.33) + 60
    for _ in range(10):
        with numeric.interval_precision(bits), numeric.working_dps(int(bits / 3.32) + 5):
            re_g, im_g, is_real = gamma_interval(g)
            ln = iv.log(n)
            zre = re_g * ln
            mag = iv.exp(zre)
            if is_real:
                val_re, val_im = mag, iv.mpf(0)
            else:
                zim = im_g * ln
                val_re, val_im = mag * iv.cos(zim), mag * iv.sin(zim)
            ball = numeric.ball_from_intervals(val_re, val_im, is_real)
            target = ball.abs_lower() * (Fraction(1, 10) ** digits)
            if ball.radius <= target and ball.abs_lower() > 0:
                return ball
        bits *= 2
    raise PrecisionExceededError(
        f"cannot reach {digits} significant digits for {n}^({format_gamma(g)})"
    )


def _eval_power_absolute(n: int, g: Gamma, precision: int) -> numeric.ComplexBall:
    """Like eval_power but with absolute radius below 10^-(precision+2)."""
    target = mpmath.mpf(10) ** -(precision + 2)
    digits = precision + 8
    for _ in range(8):
        ball = eval_power(n, g, digits)
        if ball.radius < target:
            return ball
        digits += precision // 2 + 16
    raise PrecisionExceededError(
        f"cannot reach absolute radius 10^-{precision + 2} for {n}^({format_gamma(g)})"
    )


# ---------------------------------------------------------------------------
# Exact LLL.


def _dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def _gso(basis):
    """Gram-Schmidt over the rationals: orthogonal vectors and mu coefficients."""
    n = len(basis)
    ortho: list[list[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in basis[i]]
        for j in range(i):
            denom = _dot(ortho[j], ortho[j])
            if denom == 0:
                raise InvalidBasisError("basis vectors are linearly dependent")
            mu[i][j] = _dot(basis[i], ortho[j]) / denom
            v = [a - mu[i][j] * c for a, c in zip(v, ortho[j])]
        ortho.append(v)
    return ortho, mu


def lll_reduce(basis: list[list[int]], delta: Fraction = DEFAULT_DELTA) -> list[list[int]]:
    """LLL-reduce an independent integer basis, exactly.

    The output spans the same lattice, is size-reduced (|mu_ij| <= 1/2) and
    satisfies the Lovasz condition at the given delta in (1/4, 1).
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise InvalidInputError(f"delta must lie in (1/4, 1), got {delta}")
    if not basis:
        raise InvalidBasisError("empty basis")
    width = len(basis[0])
    if any(len(row) != width for row in basis):
        raise InvalidBasisError("ragged basis")
    b = [[int(x) for x in row] for row in basis]
    ortho, mu = _gso(b)
    if any(all(x == 0 for x in o) for o in ortho):
        raise InvalidBasisError("basis vectors are linearly dependent")
    n = len(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                r = round(mu[k][j])
                b[k] = [a - r * c for a, c in zip(b[k], b[j])]
                for jj in range(j):
                    mu[k][jj] -= r * mu[j][jj]
                mu[k][j] -= r
        lhs = _dot(ortho[k], ortho[k])
        rhs = (delta - mu[k][k - 1] ** 2) * _dot(ortho[k - 1], ortho[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            ortho, mu = _gso(b)
            k = max(k - 1, 1)
    return b


# ---------------------------------------------------------------------------
# Integer relations.


@dataclass(frozen=True)
class RelationQuery:
    """Search caps: polynomial degree, coefficient height, working digits.

    The precision must fund the search: at least 10 + degree * (decimal
    length of the height cap) digits.
    """

    degree_cap: int
    height_cap: int
    precision: int

    def __post_init__(self):
        if self.degree_cap < 1 or self.height_cap < 1 or self.precision < 1:
            raise InvalidInputError("degree, height and precision must all be >= 1")
        needed = 10 + self.degree_cap * len(str(self.height_cap))
        if self.precision < needed:
            raise InvalidInputError(
                f"precision {self.precision} below the policy minimum {needed} "
                f"for degree {self.degree_cap}, height {self.height_cap}"
            )


@dataclass(frozen=True)
class RelationResult:
    polynomial: tuple[int, ...] | None
    residual_bound: mpmath.mpf | None
    degree_cap: int
    height_cap: int
    precision: int

    @property
    def found(self) -> bool:
        return self.polynomial is not None


def _normalize_coeffs(coeffs: list[int]) -> tuple[int, ...] | None:
    """Trim, make primitive, leading (highest-degree) coefficient positive."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if not coeffs:
        return None
    g = math.gcd(*coeffs)
    coeffs = [c // g for c in coeffs]
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def _relation_candidates(values, height_cap, precision):
    """LLL-reduce the scaled-value lattice; yield primitive coefficient vectors."""
    m = len(values)
    scale = 10**precision
    complex_part = not all(v.is_real for v in values)
    rows = []
    with numeric.working_dps(2 * precision + 20):
        for i, v in enumerate(values):
            row = [0] * m
            row[i] = 1
            row.append(int(mpmath.nint(v.real * scale)))
            if complex_part:
                row.append(int(mpmath.nint(v.imag * scale)))
            rows.append(row)
    reduced = lll_reduce(rows, DEFAULT_DELTA)
    candidates = []
    seen = set()
    for vec in reduced:
        coeffs = _normalize_coeffs(list(vec[:m]))
        if coeffs is None or coeffs in seen:
            continue
        seen.add(coeffs)
        if max(abs(c) for c in coeffs) > height_cap:
            continue
        candidates.append((len(coeffs), _dot(vec, vec), coeffs))
    # lowest degree first, then shortest lattice vector: minimal annihilators win
    candidates.sort()
    for _, _, coeffs in candidates:
        yield coeffs


def _residual(coeffs, values, dps) -> mpmath.mpf:
    with numeric.working_dps(dps):
        return numeric.poly_residual_upper(list(coeffs), list(values))


def find_integer_relation(x: numeric.ComplexBall, q: RelationQuery) -> RelationResult:
    """Search for a primitive integer polynomial nearly annihilating x.

    The candidate's rigorous residual bound must clear 10^(-precision/2); a
    near-threshold residual triggers one doubling of the working precision
    before the candidate is accepted or discarded.
    """
    if x.radius >= mpmath.mpf(10) ** -q.precision:
        raise ImpreciseInputError(
            f"input radius {mpmath.nstr(x.radius, 5)} exceeds 10^-{q.precision}"
        )
    threshold = mpmath.mpf(10) ** (-Fraction(q.precision, 2))
    none = RelationResult(None, None, q.degree_cap, q.height_cap, q.precision)
    with numeric.working_dps(2 * q.precision + 20):
        powers = numeric.ball_powers(x, q.degree_cap)
    for coeffs in _relation_candidates(powers, q.height_cap, q.precision):
        resid = _residual(coeffs, powers, 2 * q.precision + 20)
        if resid >= threshold:
            continue
        if resid > threshold * mpmath.mpf(10) ** -5:
            # Near-threshold: double the working precision once and re-check.
            with numeric.working_dps(4 * q.precision + 40):
                powers_hi = numeric.ball_powers(x, q.degree_cap)
            resid = _residual(coeffs, powers_hi, 4 * q.precision + 40)
            if resid >= threshold:
                continue
        return RelationResult(coeffs, resid, q.degree_cap, q.height_cap, q.precision)
    return none


def find_linear_relation(
    values: list[numeric.ComplexBall], height_cap: int, precision: int
) -> tuple[int, ...] | None:
    """Integer coefficients c (|c| <= height) with sum c_i v_i rigorously tiny.

    Degree-one analogue of find_integer_relation for Q-linear-independence
    heuristics; returns None when no candidate clears the residual test.
    """
    for v in values:
        if v.radius >= mpmath.mpf(10) ** -precision:
            raise ImpreciseInputError("value radius too large for the requested precision")
    threshold = mpmath.mpf(10) ** (-Fraction(precision, 2))
    for coeffs in _relation_candidates(values, height_cap, precision):
        resid = _residual(coeffs, values, 2 * precision + 20)
        if resid < threshold:
            return coeffs
    return None


# ---------------------------------------------------------------------------
# Verdict cross-checking.


@dataclass(frozen=True)
class ProbeOutcome:
    kind: str  # "agrees-algebraic" | "agrees-no-relation" | "mismatch"
    verdict_status: str
    polynomial: tuple[int, ...] | None
    detail: str = ""


def _poly_eval_fraction(coeffs, value: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * value + c
    return acc


def _poly_divides(divisor, dividend) -> bool:
    """Exact divisibility of integer polynomials over the rationals."""
    rem = [Fraction(c) for c in dividend]
    d = len(divisor) - 1
    lead = Fraction(divisor[-1])
    while len(rem) - 1 >= d and any(rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        factor = rem[-1] / lead
        shift = len(rem) - 1 - d
        for i, c in enumerate(divisor):
            rem[shift + i] -= factor * c
        rem.pop()
    return not any(rem)


def _witness_annihilated(witness, coeffs) -> tuple[bool, str]:
    if witness.value is not None:
        ok = _poly_eval_fraction(coeffs, witness.value) == 0
        return ok, f"witness value {witness.value}"
    if witness.min_poly is not None:
        ok = _poly_divides(list(witness.min_poly), list(coeffs))
        return ok, f"witness minimal polynomial {list(witness.min_poly)}"
    return False, "witness carries no exact value"


def probe_point(n: int, g: Gamma, q: RelationQuery) -> ProbeOutcome:
    """Compare the (assumption-free) verdict for n^gamma with the lattice probe.

    Algebraic verdicts must be matched by a found polynomial that annihilates
    the exact witness value; transcendental verdicts must come back NoneFound;
    unknown accepts either and reports what the probe saw.  A mismatch is
    returned as data, never raised.
    """
    from .verdicts import AssumptionSet, Status, classify_point

    verdict = classify_point(canonicalize(g), n, AssumptionSet())
    x = _eval_power_absolute(n, g, q.precision)
    result = find_integer_relation(x, q)
    status = verdict.status
    if status is Status.ALGEBRAIC:
        if result.polynomial is None:
            return ProbeOutcome(
                "mismatch",
                status.value,
                None,
                f"verdict {verdict.rule} is algebraic but no relation found within "
                f"degree {q.degree_cap}, height {q.height_cap}",
            )
        ok, what = _witness_annihilated(verdict.witness, result.polynomial)
        if ok:
            return ProbeOutcome("agrees-algebraic", status.value, result.polynomial)
        return ProbeOutcome(
            "mismatch",
            status.value,
            result.polynomial,
            f"found polynomial does not annihilate the {what}",
        )
    if status is Status.TRANSCENDENTAL:
        if result.polynomial is None:
            return ProbeOutcome("agrees-no-relation", status.value, None)
        return ProbeOutcome(
            "mismatch",
            status.value,
            result.polynomial,
            "verdict is transcendental but the probe found a candidate relation",
        )
    if result.polynomial is not None:
        return ProbeOutcome("agrees-algebraic", status.value, result.polynomial)
    return ProbeOutcome("agrees-no-relation", status.value, None)
