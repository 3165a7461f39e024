"""Exact Dirichlet-convolution arithmetic on truncated arithmetic functions.

Functions live on 1..N with exact rational values.  The ring operations are
pointwise addition and (f*g)(n) = sum_{d|n} f(d) g(n/d).  carlitz_kernel
searches for polynomial relations among the integer power functions n^0..n^r
that vanish identically on 1..N; an empty kernel falsifies every candidate
relation at that truncation (it proves nothing beyond it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .errors import InvalidInputError, RelationArityError, TruncationMismatchError
from .lattice import rational_kernel

Rat = int | Fraction


@dataclass(frozen=True)
class ArithFunction:
    """An arithmetic function truncated to 1..N, exact rational values."""

    truncation: int
    values: tuple[Fraction, ...]
    label: str | None = None

    def __post_init__(self):
        if self.truncation < 1:
            raise InvalidInputError(f"truncation must be >= 1, got {self.truncation}")
        if len(self.values) != self.truncation:
            raise InvalidInputError(
                f"expected {self.truncation} values, got {len(self.values)}"
            )
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __call__(self, n: int) -> Fraction:
        if not 1 <= n <= self.truncation:
            raise InvalidInputError(f"index {n} outside 1..{self.truncation}")
        return self.values[n - 1]

    def truncate(self, new_n: int) -> "ArithFunction":
        if new_n > self.truncation:
            raise InvalidInputError(f"cannot extend truncation {self.truncation} to {new_n}")
        return ArithFunction(new_n, self.values[:new_n], self.label)


def from_values(values: Iterable[Rat], label: str | None = None) -> ArithFunction:
    vals = tuple(Fraction(v) for v in values)
    return ArithFunction(len(vals), vals, label)


def epsilon(n: int) -> ArithFunction:
    """Convolution identity: 1 at n=1, 0 elsewhere."""
    if n < 1:
        raise InvalidInputError(f"truncation must be >= 1, got {n}")
    return ArithFunction(n, (Fraction(1),) + (Fraction(0),) * (n - 1), "epsilon")


def zeta_k(k: int, n: int) -> ArithFunction:
    """The integer power function m -> m^k on 1..n (k may be negative)."""
    if n < 1:
        raise InvalidInputError(f"truncation must be >= 1, got {n}")
    return ArithFunction(n, tuple(Fraction(m) ** k for m in range(1, n + 1)), f"zeta_{k}")


def add(f: ArithFunction, g: ArithFunction) -> ArithFunction:
    _check_same_truncation(f, g)
    return ArithFunction(f.truncation, tuple(a + b for a, b in zip(f.values, g.values)))

def scale(f: ArithFunction, c: Rat) -> ArithFunction:
    c = Fraction(c)
    return ArithFunction(f.truncation, tuple(c * v for v in f.values), f.label)


def _check_same_truncation(f: ArithFunction, g: ArithFunction) -> None:
    if f.truncation != g.truncation:
        raise TruncationMismatchError(
            f"truncations differ: {f.truncation} vs {g.truncation}"
        )


def convolve(f: ArithFunction, g: ArithFunction) -> ArithFunction:
    """Dirichlet convolution (f*g)(n) = sum over divisors d of n of f(d) g(n/d)."""
    _check_same_truncation(f, g)
    n = f.truncation
    out = [Fraction(0)] * n
    fv, gv = f.values, g.values
    for d in range(1, n + 1):
        fd = fv[d - 1]
        if fd == 0:
            continue
        for m in range(d, n + 1, d):
            out[m - 1] += fd * gv[m // d - 1]
    return ArithFunction(n, tuple(out))


def conv_pow(f: ArithFunction, i: int) -> ArithFunction:
    """i-fold convolution power; i = 0 gives the identity epsilon."""
    if i < 0:
        raise InvalidInputError(f"convolution power must be >= 0, got {i}")
    result = epsilon(f.truncation)
    base = f
    while i:
        if i & 1:
            result = convolve(result, base)
        i >>= 1
        if i:
            base = convolve(base, base)
    return result


class PolynomialRelation:
    """A polynomial in the convolution ring: map monomial exponents -> coefficient.

    Keys are tuples (i_1,...,i_m) of naturals, one entry per generator; the
    all-zero tuple is the constant monomial (the identity epsilon).  Zero
    coefficients are dropped; duplicate keys are summed.
    """

    def __init__(self, terms: Mapping[tuple[int, ...], Rat] | Iterable[tuple[tuple[int, ...], Rat]]):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        arity = None
        for index, coeff in items:
            index = tuple(int(i) for i in index)
            if any(i < 0 for i in index):
                raise InvalidInputError(f"monomial exponents must be >= 0: {index}")
            if arity is None:
                arity = len(index)
            elif len(index) != arity:
                raise RelationArityError(
                    f"mixed monomial arities {arity} and {len(index)}"
                )
            acc[index] = acc.get(index, Fraction(0)) + Fraction(coeff)
        ordered = sorted(acc.items(), key=lambda kv: _grlex_key(kv[0]))
        self._terms = {k: v for k, v in ordered if v != 0}
        self._arity = arity if arity is not None else 0

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def involves_identity(self) -> bool:
        """True when the constant monomial epsilon carries a nonzero coefficient."""
        return (0,) * self._arity in self._terms

    def __eq__(self, other):
        return isinstance(other, PolynomialRelation) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        return f"PolynomialRelation({self._terms!r})"


def _grlex_key(index: tuple[int, ...]) -> tuple:
    return (sum(index), index)


def monomials_up_to(num_gens: int, max_deg: int) -> list[tuple[int, ...]]:
    """All exponent tuples with total degree <= max_deg, graded-lex order."""
    if num_gens < 1:
        raise InvalidInputError("need at least one generator")
    out = [
        idx
        for idx in product(range(max_deg + 1), repeat=num_gens)
        if sum(idx) <= max_deg
    ]
    out.sort(key=_grlex_key)
    return out


def monomial_count(r: int, max_deg: int) -> int:
    """Number of monomials in zeta_0..zeta_r of total degree <= max_deg:
    binomial(r + 1 + max_deg, max_deg)."""
    return math.comb(r + 1 + max_deg, max_deg)


def eval_polynomial(p: PolynomialRelation, gens: list[ArithFunction]) -> ArithFunction:
    """Evaluate a convolution-ring polynomial at the given generators."""
    if not gens:
        raise RelationArityError("need at least one generator")
    n = gens[0].truncation
    for g in gens[1:]:
        _check_same_truncation(gens[0], g)
    if not p.is_zero() and p.arity != len(gens):
        raise RelationArityError(f"relation arity {p.arity} != {len(gens)} generators")
    total = ArithFunction(n, (Fraction(0),) * n)
    for index, coeff in p.terms.items():
        mono = epsilon(n)
        for g, e in zip(gens, index):
            if e:
                mono = convolve(mono, conv_pow(g, e))
        total = add(total, scale(mono, coeff))
    return total


def carlitz_kernel(r: int, max_deg: int, n: int) -> list[PolynomialRelation]:
    """All relations among zeta_0..zeta_r of degree <= max_deg vanishing on 1..n.

    Enumerates the (r+1+max_deg choose max_deg) monomials of total degree at
    most max_deg (constant monomial included), evaluates each on 1..n, and
    returns a primitive integer basis of the evaluation matrix's left kernel.
    An empty list means no candidate relation survives truncation n.
    """
    if r < 0:
        raise InvalidInputError(f"need r >= 0, got {r}")
    if max_deg < 1:
        raise InvalidInputError(f"need max_deg >= 1, got {max_deg}")
    if n < 1:
        raise InvalidInputError(f"truncation must be >= 1, got {n}")
    gens = [zeta_k(k, n) for k in range(r + 1)]
    monomials = monomials_up_to(r + 1, max_deg)
    # Cache generator powers; each monomial is a convolution of cached powers.
    pows = [[epsilon(n)] for _ in gens]
    for j, g in enumerate(gens):
        for _ in range(max_deg):
            pows[j].append(convolve(pows[j][-1], g))
    rows = []
    for index in monomials:
        mono = epsilon(n)
        for j, e in enumerate(index):
            if e:
                mono = convolve(mono, pows[j][e])
        rows.append(list(mono.values))
    basis = rational_kernel(rows)
    return [
        PolynomialRelation({m: c for m, c in zip(monomials, vec) if c != 0})
        for vec in basis
    ]
