"""Rigorous enclosures: mpmath interval arithmetic plus complex midpoint-radius balls.

Every numeric value that leaves this package carries an explicit error radius.
Real quantities are computed with mpmath's outward-rounded interval context;
complex balls propagate radii with conservative upper bounds (all radius
arithmetic is rounded up).
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import iv, mp


@contextmanager
def interval_precision(bits: int):
    """Temporarily set the interval context's binary precision."""
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


@contextmanager
def working_dps(dps: int):
    old = mp.dps
    mp.dps = dps
    try:
        yield
    finally:
        mp.dps = old


def fraction_to_interval(lo: Fraction, hi: Fraction | None = None):
    """Interval enclosing [lo, hi] (or the single rational lo), outward rounded."""
    if hi is None:
        hi = lo
    lo_iv = iv.mpf(lo.numerator) / iv.mpf(lo.denominator)
    hi_iv = iv.mpf(hi.numerator) / iv.mpf(hi.denominator)
    return iv.mpf([lo_iv.a, hi_iv.b])


def _uadd(*xs):
    acc = mpmath.mpf(0)
    for x in xs:
        acc = mpmath.fadd(acc, x, rounding="u")
    return acc


def _umul(a, b):
    return mpmath.fmul(a, b, rounding="u")


def _half_width_upper(x, mid):
    """Upper bound on sup_{t in x} |t - mid| for an interval x and mpf mid."""
    lo = mpmath.fsub(mid, mpmath.mpf(x.a), rounding="u")
    hi = mpmath.fsub(mpmath.mpf(x.b), mid, rounding="u")
    return max(lo, hi, mpmath.mpf(0))


@dataclass(frozen=True)
class ComplexBall:
    """Complex enclosure: |true - (real + i*imag)| <= radius.

    is_real marks values known to be real exactly (their imag part is 0 by
    construction, not by rounding); the relation probe uses it to decide how
    many scaled columns the lattice needs.
    """

    real: mpmath.mpf
    imag: mpmath.mpf
    radius: mpmath.mpf
    is_real: bool

    @property
    def mid(self) -> mpmath.mpc:
        return mpmath.mpc(self.real, self.imag)

    def abs_upper(self) -> mpmath.mpf:
        return _uadd(_abs_upper_mid(self), self.radius)

    def abs_lower(self) -> mpmath.mpf:
        lo = mpmath.fsub(abs(self.mid), self.radius, rounding="d")
        return max(lo, mpmath.mpf(0))


def _abs_upper_mid(b: ComplexBall) -> mpmath.mpf:
    # |re| + |im| bounds the modulus from above; cheap and direction-safe.
    return _uadd(abs(b.real), abs(b.imag))


def ball_exact_int(n: int) -> ComplexBall:
    return ComplexBall(mpmath.mpf(n), mpmath.mpf(0), mpmath.mpf(0), True)


def _ulp_bound(magnitude) -> mpmath.mpf:
    # 4 ulps at the current precision; covers a rounded elementary operation.
    return _umul(magnitude, mpmath.mpf(2) ** (4 - mp.prec))


def ball_from_intervals(re, im, is_real: bool) -> ComplexBall:
    re_mid = mpmath.mpf(re.mid)
    im_mid = mpmath.mpf(im.mid)
    rad = _uadd(_half_width_upper(re, re_mid), _half_width_upper(im, im_mid))
    return ComplexBall(re_mid, im_mid, rad, is_real)


def ball_add(x: ComplexBall, y: ComplexBall) -> ComplexBall:
    re = x.real + y.real
    im = x.imag + y.imag
    rad = _uadd(x.radius, y.radius, _ulp_bound(_uadd(abs(re), abs(im))))
    return ComplexBall(re, im, rad, x.is_real and y.is_real)


def ball_scale_int(x: ComplexBall, c: int) -> ComplexBall:
    re = x.real * c
    im = x.imag * c
    rad = _uadd(_umul(x.radius, abs(c)), _ulp_bound(_uadd(abs(re), abs(im))))
    return ComplexBall(re, im, rad, x.is_real)


def ball_mul(x: ComplexBall, y: ComplexBall) -> ComplexBall:
    re = x.real * y.real - x.imag * y.imag
    im = x.real * y.imag + x.imag * y.real
    ax, ay = _abs_upper_mid(x), _abs_upper_mid(y)
    rad = _uadd(
        _umul(ax, y.radius),
        _umul(ay, x.radius),
        _umul(x.radius, y.radius),
        _ulp_bound(_uadd(_umul(ax, ay), abs(re), abs(im))),
    )
    return ComplexBall(re, im, rad, x.is_real and y.is_real)


def ball_powers(x: ComplexBall, degree: int) -> list[ComplexBall]:
    """[x^0, x^1, ..., x^degree] with propagated radii."""
    out = [ball_exact_int(1)]
    for _ in range(degree):
        out.append(ball_mul(out[-1], x))
    return out


def poly_residual_upper(coeffs: list[int], powers: list[ComplexBall]) -> mpmath.mpf:
    """Rigorous upper bound on |sum_i coeffs[i] * x^i| given ball powers of x."""
    acc = ball_exact_int(0)
    for c, p in zip(coeffs, powers):
        if c:
            acc = ball_add(acc, ball_scale_int(p, c))
    return acc.abs_upper()
