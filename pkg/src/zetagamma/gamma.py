"""Exact tagged representation of the exponent gamma in n^gamma.

Variants: Rational p/q; AlgebraicIrrational (irreducible primitive integer
minimal polynomial of degree 2..8 plus an isolating box with rational corners
selecting one complex root); LogRatio log(a)/log(b) for naturals a, b >= 2;
NamedTranscendental (pi or e); NumericLiteral (an opaque decimal with a stated
precision).  canonicalize() factors out the rational-scaling equivalence under
which exceptional sets are invariant: the input always equals scale * canonical.

Textual grammar (bit-exact round trip):
    rat:p/q | alg:<poly>@<box> | logratio:a/b | const:pi | const:e
    | num:<decimal>~<digits>
where <poly> is like x^2-2 and <box> is [lo,hi] or [lo,hi]x[lo,hi] with
rational corners.  A missing @<box> selects the root with the largest real
part (ties broken by largest imaginary part, resolved at 40-digit precision)
and stores a synthesized isolating box.
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

import sympy
from mpmath import iv

from . import numeric
from .errors import InvalidInputError, PrecisionExceededError
from .lattice import mult_independent, perfect_power_root

_ALGEBRAIC_DEGREE_CAP = 8


# ---------------------------------------------------------------------------
# Variants.


@dataclass(frozen=True)
class RationalGamma:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Box:
    """Closed axis-aligned box in the complex plane, rational corners."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    def __post_init__(self):
        for name in ("re_lo", "re_hi", "im_lo", "im_hi"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.re_lo > self.re_hi or self.im_lo > self.im_hi:
            raise InvalidInputError(f"degenerate box {self}")


@dataclass(frozen=True)
class AlgebraicGamma:
    """One root of an irreducible integer polynomial of degree >= 2."""

    min_poly: tuple[int, ...]  # ascending coefficients, primitive, leading > 0
    root_index: int  # index into sympy's canonical root ordering
    box: Box = field(compare=False)

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1


@dataclass(frozen=True)
class LogRatioGamma:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 2 or self.b < 2:
            raise InvalidInputError(f"logratio needs a, b >= 2, got {self.a}, {self.b}")


@dataclass(frozen=True)
class NamedGamma:
    name: str  # "pi" | "e"

    def __post_init__(self):
        if self.name not in ("pi", "e"):
            raise InvalidInputError(f"unknown named constant {self.name!r}")


@dataclass(frozen=True)
class NumericGamma:
    """Classification-opaque decimal literal with a stated precision."""

    text: str
    digits: int

    def __post_init__(self):
        if not _re.fullmatch(r"[+-]?\d+(\.\d+)?", self.text):
            raise InvalidInputError(f"bad decimal literal {self.text!r}")
        if self.digits < 1:
            raise InvalidInputError("stated precision must be >= 1 digit")

    @property
    def value(self) -> Fraction:
        return Fraction(self.text)

    @property
    def abs_radius(self) -> Fraction:
        """Absolute uncertainty implied by the stated significant digits."""
        v = abs(self.value)
        if v == 0:
            return Fraction(1, 10**self.digits)
        scale = Fraction(10) ** (_decimal_magnitude(v) + 1 - self.digits)
        return scale

    def max_requestable_digits(self) -> int:
        return self.digits


def _decimal_magnitude(v: Fraction) -> int:
    """floor(log10(v)) for positive rational v, computed exactly."""
    if v >= 1:
        return len(str(v.numerator // v.denominator)) - 1
    k = 0
    while v < 1:
        v *= 10
        k += 1
    return -k


Gamma = Union[RationalGamma, AlgebraicGamma, LogRatioGamma, NamedGamma, NumericGamma]


@dataclass(frozen=True)
class CanonicalGamma:
    """canonical plus a nonzero rational scale: input = scale * canonical."""

    canonical: Gamma
    scale: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale == 0:
            raise InvalidInputError("scale must be nonzero")

    @property
    def is_rational(self) -> bool:
        return isinstance(self.canonical, RationalGamma)

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise InvalidInputError("gamma is not rational")
        return self.scale * self.canonical.value


# ---------------------------------------------------------------------------
# Algebraic roots: sympy bridge, isolation, selection.


@lru_cache(maxsize=256)
def _sympy_poly(min_poly: tuple[int, ...]):
    x = sympy.Symbol("x")
    return sympy.Poly([int(c) for c in reversed(min_poly)], x)


@lru_cache(maxsize=256)
def _all_roots(min_poly: tuple[int, ...]):
    return tuple(_sympy_poly(min_poly).all_roots(radicals=False))


def _enclosure(root, eps: Fraction) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Rational box [re +- eps] x [im +- eps] guaranteed to contain the root."""
    deps = sympy.Rational(eps.numerator, eps.denominator)
    if root.is_real:
        val = root.eval_rational(dx=deps)
        re = Fraction(int(val.p), int(val.q))
        return (re - eps, re + eps, Fraction(0), Fraction(0))
    val = root.eval_rational(dx=deps, dy=deps)
    re_s, im_s = sympy.re(val), sympy.im(val)
    re = Fraction(int(re_s.p), int(re_s.q))
    im = Fraction(int(im_s.p), int(im_s.q))
    return (re - eps, re + eps, im - eps, im + eps)


def _interval_position(lo: Fraction, hi: Fraction, bound_lo: Fraction, bound_hi: Fraction):
    """'in' / 'out' / None (undecided) for [lo,hi] against the closed [bound_lo,bound_hi]."""
    if lo > bound_lo and hi < bound_hi:
        return "in"
    if hi < bound_lo or lo > bound_hi:
        return "out"
    return None


def _root_in_box(root, box: Box, min_poly: tuple[int, ...]) -> bool:
    if root.is_real and not (box.im_lo <= 0 <= box.im_hi):
        return False
    eps = Fraction(1, 10**12)
    for _ in range(8):
        re_lo, re_hi, im_lo, im_hi = _enclosure(root, eps)
        re_pos = _interval_position(re_lo, re_hi, box.re_lo, box.re_hi)
        if root.is_real:
            im_pos = "in"
        else:
            im_pos = _interval_position(im_lo, im_hi, box.im_lo, box.im_hi)
        if re_pos == "out" or im_pos == "out":
            return False
        if re_pos == "in" and im_pos == "in":
            return True
        eps = eps * Fraction(1, 10**12)
    raise InvalidInputError(
        f"a root of {format_poly(min_poly)} is indistinguishable from the boundary "
        f"of the isolating box; enlarge the box"
    )


def _select_principal_root(min_poly: tuple[int, ...]) -> int:
    """Index of the root with the largest (Re, Im), resolved at 40 digits."""
    eps = Fraction(1, 10**40)
    keyed = []
    for k, root in enumerate(_all_roots(min_poly)):
        re_lo, re_hi, im_lo, im_hi = _enclosure(root, eps)
        keyed.append(((re_lo + re_hi) / 2, (im_lo + im_hi) / 2, k))
    keyed.sort()
    return keyed[-1][2]


def _round_out(value: Fraction, grid: int, up: bool) -> Fraction:
    scaled = value * grid
    n = -((-scaled.numerator) // scaled.denominator) if up else scaled.numerator // scaled.denominator
    return Fraction(n, grid)


def _synthesize_box(min_poly: tuple[int, ...], index: int) -> Box:
    """Box around root #index, strictly separating it from the other roots.

    Corners are rounded outward to a decimal grid no coarser than a quarter of
    the chosen half-width, so the printed form stays short while the enlarged
    box (at most 1.5x the half-width per side) still excludes every other root,
    which sits at least 8 half-widths away.
    """
    roots = _all_roots(min_poly)
    eps = Fraction(1, 10**40)
    centers = []
    for root in roots:
        re_lo, re_hi, im_lo, im_hi = _enclosure(root, eps)
        centers.append(((re_lo + re_hi) / 2, (im_lo + im_hi) / 2))
    cx, cy = centers[index]
    sep = min(
        max(abs(ox - cx), abs(oy - cy))
        for k, (ox, oy) in enumerate(centers)
        if k != index
    )
    half = max(sep / 8, 4 * eps)
    grid = 1
    while Fraction(1, grid) > half / 4:
        grid *= 10
    return Box(
        _round_out(cx - half, grid, up=False),
        _round_out(cx + half, grid, up=True),
        _round_out(cy - half, grid, up=False),
        _round_out(cy + half, grid, up=True),
    )


def algebraic_gamma(coeffs: list[int] | tuple[int, ...], box: Box | None = None) -> AlgebraicGamma:
    """Construct an algebraic irrational gamma from ascending integer coefficients.

    The polynomial is normalized to a primitive one with positive leading
    coefficient and must be irreducible over the rationals with degree in
    2..8.  The box (when given) must isolate exactly one root.
    """
    cs = [int(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) < 3:
        raise InvalidInputError("minimal polynomial must have degree >= 2")
    if len(cs) - 1 > _ALGEBRAIC_DEGREE_CAP:
        raise InvalidInputError(
            f"degree {len(cs) - 1} exceeds the supported cap {_ALGEBRAIC_DEGREE_CAP}"
        )
    g = math.gcd(*cs)
    if g:
        cs = [c // g for c in cs]
    if cs[-1] < 0:
        cs = [-c for c in cs]
    min_poly = tuple(cs)
    if not _sympy_poly(min_poly).is_irreducible:
        raise InvalidInputError(f"{format_poly(min_poly)} is reducible over the rationals")
    roots = _all_roots(min_poly)
    if box is None:
        index = _select_principal_root(min_poly)
        box = _synthesize_box(min_poly, index)
        return AlgebraicGamma(min_poly, index, box)
    inside = [k for k, r in enumerate(roots) if _root_in_box(r, box, min_poly)]
    if len(inside) != 1:
        raise InvalidInputError(
            f"isolating box must contain exactly one root of {format_poly(min_poly)}, "
            f"found {len(inside)}"
        )
    return AlgebraicGamma(min_poly, inside[0], box)


def _quadratic_exact_parts(g: AlgebraicGamma) -> tuple[Fraction, Fraction] | None:
    """(re, im) as exact rationals when the root is Gaussian-rational, else None."""
    if g.degree != 2:
        return None
    c0, c1, c2 = g.min_poly
    disc = c1 * c1 - 4 * c0 * c2
    if disc >= 0:
        return None  # real quadratic roots are irrational (poly is irreducible)
    s = math.isqrt(-disc)
    if s * s != -disc:
        return None
    re = Fraction(-c1, 2 * c2)
    im = Fraction(s, 2 * c2)
    # Pick the sign matching the selected root.
    _, _, im_lo, im_hi = _enclosure(_all_roots(g.min_poly)[g.root_index], Fraction(1, 10**6))
    if im_hi < 0:
        im = -im
    return (re, im)


# ---------------------------------------------------------------------------
# Canonicalization.


def canonicalize(g: Gamma) -> CanonicalGamma:
    """Factor gamma as scale * canonical, canonical modulo rational scaling.

    Rational p/q becomes scale p/q times the canonical rational 1 (or 0 with
    scale 1).  A log ratio with multiplicatively dependent arguments is
    rewritten as the rational it equals; otherwise both arguments are reduced
    to non-perfect-powers and the power exponents move into the scale.  The
    other variants are already canonical.
    """
    if isinstance(g, RationalGamma):
        if g.value == 0:
            return CanonicalGamma(RationalGamma(Fraction(0)), Fraction(1))
        return CanonicalGamma(RationalGamma(Fraction(1)), g.value)
    if isinstance(g, LogRatioGamma):
        dep = mult_independent([g.a, g.b])
        if not dep.independent:
            alpha, beta = dep.certificate.exponents
            # a^alpha * b^beta = 1 with alpha != 0, so log a / log b = -beta/alpha.
            value = Fraction(-beta, alpha)
            return CanonicalGamma(RationalGamma(Fraction(1)), value)
        a0, ga = perfect_power_root(g.a)
        b0, gb = perfect_power_root(g.b)
        return CanonicalGamma(LogRatioGamma(a0, b0), Fraction(ga, gb))
    return CanonicalGamma(g, Fraction(1))


# ---------------------------------------------------------------------------
# Numeric evaluation.


def gamma_interval(g: Gamma) -> tuple:
    """(re, im, is_real) interval enclosure of gamma at the current iv precision."""
    zero = iv.mpf(0)
    if isinstance(g, RationalGamma):
        return (numeric.fraction_to_interval(g.value), zero, True)
    if isinstance(g, LogRatioGamma):
        return (iv.log(g.a) / iv.log(g.b), zero, True)
    if isinstance(g, NamedGamma):
        return (iv.pi if g.name == "pi" else iv.exp(iv.mpf(1)), zero, True)
    if isinstance(g, NumericGamma):
        r = g.abs_radius
        return (numeric.fraction_to_interval(g.value - r, g.value + r), zero, True)
    if isinstance(g, AlgebraicGamma):
        exact = _quadratic_exact_parts(g)
        if exact is not None:
            re, im = exact
            return (
                numeric.fraction_to_interval(re),
                numeric.fraction_to_interval(im),
                im == 0,
            )
        root = _all_roots(g.min_poly)[g.root_index]
        eps = Fraction(1, 2 ** (iv.prec + 8))
        re_lo, re_hi, im_lo, im_hi = _enclosure(root, eps)
        return (
            numeric.fraction_to_interval(re_lo, re_hi),
            numeric.fraction_to_interval(im_lo, im_hi),
            bool(root.is_real),
        )
    raise InvalidInputError(f"unknown gamma variant {g!r}")


def _is_input_limited(g: Gamma) -> bool:
    return isinstance(g, NumericGamma)


def evaluate(g: Gamma, digits: int) -> numeric.ComplexBall:
    """Value of gamma to `digits` significant decimal digits with rigorous radius."""
    if digits < 1:
        raise InvalidInputError(f"digits must be >= 1, got {digits}")
    if isinstance(g, NumericGamma) and digits > g.max_requestable_digits():
        raise PrecisionExceededError(
            f"literal states {g.digits} digits, {digits} requested"
        )
    if isinstance(g, RationalGamma) and g.value == 0:
        return numeric.ball_exact_int(0)
    bits = int(digits * 3.33) + 40
    for _ in range(10):
        with numeric.interval_precision(bits), numeric.working_dps(
            max(digits + 15, int(bits / 3.32) + 5)
        ):
            re, im, is_real = gamma_interval(g)
            ball = numeric.ball_from_intervals(re, im, is_real)
            target = ball.abs_lower() * (Fraction(1, 10) ** digits)
            if ball.radius <= target and (ball.radius == 0 or ball.abs_lower() > 0):
                return ball
        bits *= 2
    raise PrecisionExceededError(
        f"cannot reach {digits} significant digits for {format_gamma(g)}"
    )


# ---------------------------------------------------------------------------
# Textual grammar.


def format_poly(min_poly: tuple[int, ...]) -> str:
    """Ascending coefficients -> compact text like x^2-2 (descending powers)."""
    parts = []
    for e in range(len(min_poly) - 1, -1, -1):
        c = min_poly[e]
        if c == 0:
            continue
        if e == 0:
            term = str(abs(c))
        else:
            xs = "x" if e == 1 else f"x^{e}"
            term = xs if abs(c) == 1 else f"{abs(c)}{xs}"
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(sign + term)
    return "".join(parts) if parts else "0"


_TERM_RE = _re.compile(r"([+-]?)(\d*)\*?(x(?:\^(\d+))?)?$")
_PARSE_DEGREE_CAP = 64  # guards the dense coefficient tuple, not the math


def parse_poly(text: str) -> tuple[int, ...]:
    """Parse integer-coefficient polynomial text into ascending coefficients."""
    s = text.replace(" ", "")
    if not s:
        raise InvalidInputError("empty polynomial")
    chunks = _re.findall(r"[+-]?[^+-]+", s)
    if "".join(chunks) != s:
        raise InvalidInputError(f"bad polynomial syntax {text!r}")
    coeffs: dict[int, int] = {}
    for chunk in chunks:
        m = _TERM_RE.fullmatch(chunk)
        if not m or (not m.group(2) and not m.group(3)):
            raise InvalidInputError(f"bad polynomial term {chunk!r} in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(3):
            coeff = int(m.group(2)) if m.group(2) else 1
            exp = int(m.group(4)) if m.group(4) else 1
        else:
            coeff = int(m.group(2))
            exp = 0
        if exp > _PARSE_DEGREE_CAP:
            raise InvalidInputError(
                f"exponent {exp} exceeds the parser cap {_PARSE_DEGREE_CAP}"
            )
        coeffs[exp] = coeffs.get(exp, 0) + sign * coeff
    deg = max(coeffs)
    return tuple(coeffs.get(e, 0) for e in range(deg + 1))


_BOX_RE = _re.compile(
    r"\[([^,\[\]]+),([^,\[\]]+)\](?:x\[([^,\[\]]+),([^,\[\]]+)\])?$"
)


def _parse_box(text: str) -> Box:
    m = _BOX_RE.fullmatch(text.replace(" ", ""))
    if not m:
        raise InvalidInputError(f"bad box syntax {text!r}")
    try:
        re_lo, re_hi = Fraction(m.group(1)), Fraction(m.group(2))
        if m.group(3) is None:
            im_lo = im_hi = Fraction(0)
        else:
            im_lo, im_hi = Fraction(m.group(3)), Fraction(m.group(4))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"bad box corner in {text!r}: {exc}") from exc
    return Box(re_lo, re_hi, im_lo, im_hi)


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_box(box: Box) -> str:
    re_part = f"[{_format_fraction(box.re_lo)},{_format_fraction(box.re_hi)}]"
    if box.im_lo == 0 and box.im_hi == 0:
        return re_part
    return re_part + f"x[{_format_fraction(box.im_lo)},{_format_fraction(box.im_hi)}]"


def parse_gamma(text: str) -> Gamma:
    """Parse the textual gamma grammar bit-exactly."""
    if ":" not in text:
        raise InvalidInputError(f"bad gamma syntax {text!r} (missing variant prefix)")
    tag, _, body = text.partition(":")
    if tag == "rat":
        m = _re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", body)
        if not m:
            raise InvalidInputError(f"bad rational {body!r}")
        q = int(m.group(2)) if m.group(2) else 1
        if q == 0:
            raise InvalidInputError("zero denominator")
        return RationalGamma(Fraction(int(m.group(1)), q))
    if tag == "alg":
        poly_text, _, box_text = body.partition("@")
        coeffs = parse_poly(poly_text)
        box = _parse_box(box_text) if box_text else None
        return algebraic_gamma(coeffs, box)
    if tag == "logratio":
        m = _re.fullmatch(r"(\d+)/(\d+)", body)
        if not m:
            raise InvalidInputError(f"bad logratio {body!r} (want a/b)")
        return LogRatioGamma(int(m.group(1)), int(m.group(2)))
    if tag == "const":
        return NamedGamma(body)
    if tag == "num":
        m = _re.fullmatch(r"([^~]+)~(\d+)", body)
        if not m:
            raise InvalidInputError(f"bad numeric literal {body!r} (want <decimal>~<digits>)")
        return NumericGamma(m.group(1), int(m.group(2)))
    raise InvalidInputError(f"unknown gamma variant {tag!r}")


def format_gamma(g: Gamma) -> str:
    if isinstance(g, RationalGamma):
        return "rat:" + _format_fraction(g.value)
    if isinstance(g, AlgebraicGamma):
        return f"alg:{format_poly(g.min_poly)}@{_format_box(g.box)}"
    if isinstance(g, LogRatioGamma):
        return f"logratio:{g.a}/{g.b}"
    if isinstance(g, NamedGamma):
        return f"const:{g.name}"
    if isinstance(g, NumericGamma):
        return f"num:{g.text}~{g.digits}"
    raise InvalidInputError(f"unknown gamma variant {g!r}")
