"""Three-valued classification of n^gamma driven by an explicit rule table.

Base rules (strongest applicable wins; unconditional beats conditional):
    R2  gamma rational p/q: n^{p/q} is algebraic, witnessed exactly.
    R1  n = 1: algebraic with witness 1.
    R3  gamma algebraic irrational, n >= 2: transcendental (Gelfond-Schneider).
    R4  gamma = log a / log b, n multiplicatively dependent with b: algebraic
        with witness pair (p, q), n^q = b^p, value a^{p/q} up to the scale.
    R6  assuming the power-orbit conjecture, gamma non-rational with known
        representant B: n outside {B^k} is conditionally transcendental.
    R7  assuming Schanuel, gamma in {pi, e} up to rational scale, n >= 2:
        conditionally transcendental.
Closure rules iterated to a fixpoint over 1..N by exceptional_set:
    R-up, R-down, R-product (power/product closure) and R5 (six-exponentials:
    two multiplicatively independent algebraic points force every third
    independent point to be transcendental).
A conflicting algebraic/transcendental derivation is an engine bug and raises
InternalInconsistencyError; it is never swallowed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (
    InternalInconsistencyError,
    InvalidInputError,
    PrecisionExceededError,
    RejectedQueryError,
)
from .gamma import (
    AlgebraicGamma,
    CanonicalGamma,
    Gamma,
    LogRatioGamma,
    NamedGamma,
    NumericGamma,
    RationalGamma,
    canonicalize,
    format_gamma,
    parse_gamma,
)
from .lattice import factor, mult_independent, perfect_power_root

SCHEMA_ID = "zetagamma/1"


class Status(str, Enum):
    ALGEBRAIC = "algebraic"
    TRANSCENDENTAL = "transcendental"
    UNKNOWN = "unknown"


class Condition(str, Enum):
    UNCONDITIONAL = "unconditional"
    SCHANUEL = "schanuel"
    CONJECTURE1 = "conjecture1"


class Provenance(str, Enum):
    DETERMINED = "determined"
    CONDITIONAL = "conditional"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class AssumptionSet:
    assume_schanuel: bool = False
    assume_conjecture1: bool = False


@dataclass(frozen=True)
class Witness:
    """Exact datum backing an algebraic verdict.

    kind "rational": value is the exact rational n^gamma.
    kind "power-pair": pair = (p, q) with n^q = base^p against the canonical
        log base; value or min_poly gives the exact point value.
    kind "min-poly": min_poly annihilates the (irrational) point value.
    """

    kind: str
    value: Fraction | None = None
    pair: tuple[int, int] | None = None
    min_poly: tuple[int, ...] | None = None


_THEOREM_TRANS_RULES = {"R3", "R5", "R-up", "R-product"}


@dataclass(frozen=True)
class Verdict:
    status: Status
    rule: str
    witness: Witness | None = None
    condition: Condition = Condition.UNCONDITIONAL

    def __post_init__(self):
        if self.status is Status.ALGEBRAIC and self.witness is None:
            raise InternalInconsistencyError(f"algebraic verdict {self.rule} lacks a witness")
        if self.status is not Status.ALGEBRAIC and self.witness is not None:
            raise InternalInconsistencyError(f"{self.status.value} verdict carries a witness")
        if (
            self.status is Status.TRANSCENDENTAL
            and self.condition is Condition.UNCONDITIONAL
            and self.rule not in _THEOREM_TRANS_RULES
        ):
            raise InternalInconsistencyError(
                f"unconditional transcendence must cite a theorem rule, got {self.rule}"
            )


UNKNOWN_VERDICT = Verdict(Status.UNKNOWN, "none")


@dataclass(frozen=True)
class Representant:
    value: int
    provenance: Provenance


@dataclass(frozen=True)
class ExceptionalSetReport:
    gamma: CanonicalGamma
    bound: int
    assumptions: AssumptionSet
    verdicts: dict[int, Verdict]
    representant: Representant | None

    def __post_init__(self):
        if sorted(self.verdicts) != list(range(1, self.bound + 1)):
            raise InvalidInputError(f"verdicts must cover exactly 1..{self.bound}")
        if (
            self.representant is not None
            and self.representant.provenance is Provenance.DETERMINED
        ):
            b = self.representant.value
            if any(not _is_power_of(n, b) for n in self.algebraic_set()):
                raise InternalInconsistencyError(
                    f"determined representant {b} does not generate the algebraic set"
                )

    def algebraic_set(self) -> list[int]:
        return [n for n, v in sorted(self.verdicts.items()) if v.status is Status.ALGEBRAIC]


# ---------------------------------------------------------------------------
# Exact witnesses.


def exact_power_value(base: int, exponent: Fraction) -> Witness:
    """Witness for base^exponent (base a natural >= 1, exponent rational).

    Returns a rational witness when the value is rational, otherwise the
    minimal polynomial x^q - m^p (or its reciprocal for negative exponents)
    of the positive real value, which is irreducible because m is not a
    perfect power and gcd(p, q) = 1.
    """
    if base < 1:
        raise InvalidInputError(f"witness base must be >= 1, got {base}")
    exponent = Fraction(exponent)
    if base == 1 or exponent == 0:
        return Witness("rational", value=Fraction(1))
    m, g = perfect_power_root(base)
    e = exponent * g
    p, q = e.numerator, e.denominator
    if q == 1:
        return Witness("rational", value=Fraction(m) ** p)
    if p > 0:
        coeffs = (-(m**p),) + (0,) * (q - 1) + (1,)
    else:
        coeffs = (-1,) + (0,) * (q - 1) + (m**-p,)
    return Witness("min-poly", min_poly=coeffs)


def _r2_witness(g: CanonicalGamma, n: int) -> Witness:
    return exact_power_value(n, g.rational_value)


def _log_base_pair(n: int, b: int) -> tuple[int, int] | None:
    """(p, q) with n^q = b^p and gcd(p, q) = 1, or None if independent."""
    res = mult_independent([n, b])
    if res.independent:
        return None
    alpha, beta = res.certificate.exponents
    # Primitive with positive leading entry, so alpha >= 1; n^alpha = b^{-beta}.
    return (-beta, alpha)


def _r4_witness(g: CanonicalGamma, n: int) -> Witness | None:
    lr = g.canonical
    pq = _log_base_pair(n, lr.b)
    if pq is None:
        return None
    p, q = pq
    value = exact_power_value(lr.a, Fraction(p, q) * g.scale)
    return Witness("power-pair", value=value.value, pair=(p, q), min_poly=value.min_poly)


def _is_power_of(n: int, b: int) -> bool:
    if n == 1:
        return True
    if b == 1:
        return False
    while n % b == 0:
        n //= b
    return n == 1


# ---------------------------------------------------------------------------
# Per-point classification.

_RULE_PRIORITY = {r: i for i, r in enumerate(["R2", "R1", "R3", "R4", "R5", "R6", "R7"])}


def _base_candidates(g: CanonicalGamma, n: int, a: AssumptionSet) -> list[Verdict]:
    c = g.canonical
    out: list[Verdict] = []
    if g.is_rational:
        out.append(Verdict(Status.ALGEBRAIC, "R2", _r2_witness(g, n)))
    if n == 1 and not g.is_rational:
        out.append(Verdict(Status.ALGEBRAIC, "R1", Witness("rational", value=Fraction(1))))
    if isinstance(c, AlgebraicGamma) and n >= 2:
        out.append(Verdict(Status.TRANSCENDENTAL, "R3"))
    if isinstance(c, LogRatioGamma) and n >= 2:
        w = _r4_witness(g, n)
        if w is not None:
            out.append(Verdict(Status.ALGEBRAIC, "R4", w))
    if a.assume_conjecture1 and not g.is_rational:
        representant = None
        if isinstance(c, LogRatioGamma):
            representant = c.b
        elif isinstance(c, AlgebraicGamma):
            representant = 1
        if representant is not None and not _is_power_of(n, representant):
            out.append(
                Verdict(Status.TRANSCENDENTAL, "R6", condition=Condition.CONJECTURE1)
            )
    if a.assume_schanuel and isinstance(c, NamedGamma) and n >= 2:
        out.append(Verdict(Status.TRANSCENDENTAL, "R7", condition=Condition.SCHANUEL))
    return out


def _strongest(candidates: list[Verdict], where: str) -> Verdict:
    statuses = {v.status for v in candidates}
    if Status.ALGEBRAIC in statuses and Status.TRANSCENDENTAL in statuses:
        raise InternalInconsistencyError(
            f"conflicting rules at {where}: "
            + ", ".join(f"{v.rule}={v.status.value}" for v in candidates)
        )
    if not candidates:
        return UNKNOWN_VERDICT
    return min(
        candidates,
        key=lambda v: (
            v.condition is not Condition.UNCONDITIONAL,
            _RULE_PRIORITY.get(v.rule, 99),
        ),
    )


def classify_point(g: CanonicalGamma, n: int, a: AssumptionSet | None = None) -> Verdict:
    """Classify the arithmetic nature of n^gamma via the base rule table.

    All applicable rules are evaluated so that a contradictory pair of
    derivations is detected (InternalInconsistencyError) rather than masked
    by rule order.  The six-exponentials rule R5 needs a set of classified
    points and therefore lives in exceptional_set's closure pass.
    """
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got {n}")
    a = a or AssumptionSet()
    return _strongest(_base_candidates(g, n, a), f"n={n}, gamma={format_gamma(g.canonical)}")


# ---------------------------------------------------------------------------
# Closure propagation to a fixpoint.


def _direct_witness(g: CanonicalGamma, target: int) -> Witness | None:
    if g.is_rational:
        return _r2_witness(g, target)
    if target == 1:
        return Witness("rational", value=Fraction(1))
    if isinstance(g.canonical, LogRatioGamma):
        return _r4_witness(g, target)
    return None


def _integer_nth_root(n: int, k: int) -> int | None:
    lo, hi = 0, 1
    while hi**k < n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


def _up_witness(g: CanonicalGamma, source: Verdict, target: int, k: int) -> Witness:
    """Witness for target = n^k given an algebraic witness at n."""
    direct = _direct_witness(g, target)
    if direct is not None:
        return direct
    w = source.witness
    if w is not None and w.value is not None:
        return Witness("rational", value=w.value**k)
    raise InternalInconsistencyError(
        f"no exact witness derivable for propagated algebraic point {target}"
    )


def _down_witness(g: CanonicalGamma, source: Verdict, target: int, k: int) -> Witness:
    """Witness for target given an algebraic witness at target^k."""
    direct = _direct_witness(g, target)
    if direct is not None:
        return direct
    w = source.witness
    if w is not None and w.value is not None and w.value > 0:
        v = w.value
        rn = _integer_nth_root(v.numerator, k)
        rd = _integer_nth_root(v.denominator, k)
        if rn is not None and rd is not None:
            return Witness("rational", value=Fraction(rn, rd))
        # annihilating polynomial for the positive real k-th root of v
        coeffs = (-v.numerator,) + (0,) * (k - 1) + (v.denominator,)
        return Witness("min-poly", min_poly=coeffs)
    raise InternalInconsistencyError(
        f"no exact witness derivable for propagated algebraic point {target}"
    )


def _update(verdicts: dict[int, Verdict], n: int, cand: Verdict, where: str) -> bool:
    cur = verdicts[n]
    if cur.status is Status.UNKNOWN:
        verdicts[n] = cand
        return True
    if cur.status is not cand.status:
        raise InternalInconsistencyError(
            f"{where}: rule {cand.rule} derives {cand.status.value} at n={n} "
            f"but {cur.rule} already derived {cur.status.value}"
        )
    if (
        cur.condition is not Condition.UNCONDITIONAL
        and cand.condition is Condition.UNCONDITIONAL
    ):
        verdicts[n] = cand
        return True
    return False


def _propagate(verdicts: dict[int, Verdict], g: CanonicalGamma, n_max: int) -> None:
    """Iterate R-up, R-down, R-product and R5 to the unique fixpoint."""
    gamma_known_transcendental = isinstance(g.canonical, (LogRatioGamma, NamedGamma))
    changed = True
    while changed:
        changed = False
        for n in range(2, n_max + 1):
            nk, k = n * n, 2
            while nk <= n_max:
                up, down = verdicts[n], verdicts[nk]
                if up.status is Status.ALGEBRAIC:
                    cand = Verdict(
                        Status.ALGEBRAIC, "R-up", _up_witness(g, up, nk, k), up.condition
                    )
                    changed |= _update(verdicts, nk, cand, "R-up")
                elif up.status is Status.TRANSCENDENTAL:
                    cand = Verdict(Status.TRANSCENDENTAL, "R-up", condition=up.condition)
                    changed |= _update(verdicts, nk, cand, "R-up")
                if down.status is Status.ALGEBRAIC:
                    cand = Verdict(
                        Status.ALGEBRAIC, "R-down", _down_witness(g, down, n, k), down.condition
                    )
                    changed |= _update(verdicts, n, cand, "R-down")
                nk *= n
                k += 1
        algebraic = [n for n in range(2, n_max + 1) if verdicts[n].status is Status.ALGEBRAIC]
        transcendental = [
            n for n in range(2, n_max + 1) if verdicts[n].status is Status.TRANSCENDENTAL
        ]
        for n in algebraic:
            for m in transcendental:
                if n * m > n_max:
                    break
                cond = (
                    Condition.UNCONDITIONAL
                    if (
                        verdicts[n].condition is Condition.UNCONDITIONAL
                        and verdicts[m].condition is Condition.UNCONDITIONAL
                    )
                    else (
                        verdicts[m].condition
                        if verdicts[n].condition is Condition.UNCONDITIONAL
                        else verdicts[n].condition
                    )
                )
                cand = Verdict(Status.TRANSCENDENTAL, "R-product", condition=cond)
                changed |= _update(verdicts, n * m, cand, "R-product")
        if gamma_known_transcendental:
            for x, y in itertools.combinations(algebraic, 2):
                if mult_independent([x, y]).independent:
                    for n in range(2, n_max + 1):
                        if n in (x, y):
                            continue
                        if verdicts[n].status is Status.TRANSCENDENTAL:
                            continue
                        if mult_independent([x, y, n]).independent:
                            cand = Verdict(Status.TRANSCENDENTAL, "R5")
                            changed |= _update(verdicts, n, cand, "R5")


# ---------------------------------------------------------------------------
# Reports.


def _extract_representant(
    alg_set: list[int], g: CanonicalGamma, n_max: int
) -> Representant | None:
    if g.is_rational:
        return None
    bigger = [x for x in alg_set if x > 1]
    if not bigger:
        prov = (
            Provenance.DETERMINED
            if isinstance(g.canonical, AlgebraicGamma)
            else Provenance.UNDETERMINED
        )
        return Representant(1, prov)
    b, _ = perfect_power_root(min(bigger))
    for x in alg_set:
        if not _is_power_of(x, b):
            raise InternalInconsistencyError(
                f"algebraic point {x} is not a power of the representant {b}"
            )
    if b <= n_max and b not in alg_set:
        raise InternalInconsistencyError(
            f"representant {b} is in range but not algebraic: downward closure violated"
        )
    return Representant(b, Provenance.CONDITIONAL)


def exceptional_set(
    g: CanonicalGamma, n_max: int, a: AssumptionSet | None = None
) -> ExceptionalSetReport:
    """Classify 1..n_max, close under the propagation rules, extract the representant."""
    if n_max < 1:
        raise InvalidInputError(f"need N >= 1, got {n_max}")
    a = a or AssumptionSet()
    verdicts = {n: classify_point(g, n, a) for n in range(1, n_max + 1)}
    _propagate(verdicts, g, n_max)
    rep = _extract_representant(
        [n for n, v in verdicts.items() if v.status is Status.ALGEBRAIC], g, n_max
    )
    return ExceptionalSetReport(g, n_max, a, verdicts, rep)


def exceptional_representant(report: ExceptionalSetReport) -> Representant:
    """Re-derive the representant from a report, re-checking its coherence."""
    if report.gamma.is_rational:
        raise RejectedQueryError(
            "the exceptional representant is defined only for non-rational gamma"
        )
    rep = _extract_representant(report.algebraic_set(), report.gamma, report.bound)
    assert rep is not None
    return rep


def check_prop3(report: ExceptionalSetReport) -> tuple[int, int, int] | None:
    """Search the algebraic set for a multiplicatively independent triple.

    Returns the first offending triple, or None when every triple is
    dependent.  Vacuously None for rational gamma, where all of 1..N is
    algebraic and no constraint applies.
    """
    if report.gamma.is_rational:
        return None
    elems = [x for x in report.algebraic_set() if x > 1]  # 1 never breaks a triple
    for triple in itertools.combinations(elems, 3):
        if mult_independent(list(triple)).independent:
            return triple
    return None


@dataclass(frozen=True)
class ClosureViolation:
    rule: str
    points: tuple[int, ...]


def closure_check(report: ExceptionalSetReport) -> list[ClosureViolation]:
    """Verify the power/product closure laws on a report; empty list means Ok."""
    v = report.verdicts
    n_max = report.bound
    out: list[ClosureViolation] = []
    if v[1].status is not Status.ALGEBRAIC:
        out.append(ClosureViolation("one-algebraic", (1,)))
    for n in range(2, n_max + 1):
        nk = n * n
        while nk <= n_max:
            if v[n].status is Status.ALGEBRAIC and v[nk].status is not Status.ALGEBRAIC:
                out.append(ClosureViolation("power-up", (n, nk)))
            if (
                v[n].status is Status.TRANSCENDENTAL
                and v[nk].status is not Status.TRANSCENDENTAL
            ):
                out.append(ClosureViolation("power-up", (n, nk)))
            if v[nk].status is Status.ALGEBRAIC and v[n].status is not Status.ALGEBRAIC:
                out.append(ClosureViolation("power-down", (nk, n)))
            nk *= n
    for n in range(2, n_max + 1):
        if v[n].status is not Status.ALGEBRAIC:
            continue
        for m in range(2, n_max // n + 1):
            if (
                v[m].status is Status.TRANSCENDENTAL
                and v[n * m].status is not Status.TRANSCENDENTAL
            ):
                out.append(ClosureViolation("product", (n, m, n * m)))
    return out


# ---------------------------------------------------------------------------
# Schanuel-conditional transcendence-degree bounds.


@dataclass(frozen=True)
class Prop5Query:
    n: int
    gammas: tuple[AlgebraicGamma, ...]


@dataclass(frozen=True)
class Prop6Query:
    gamma: CanonicalGamma
    ns: tuple[int, ...]


@dataclass(frozen=True)
class Prop7Query:
    n: int
    gammas: tuple[Gamma, ...]


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    method: str  # "exact" | "numeric-heuristic"
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class BoundCertificate:
    rule: str  # "prop5" | "prop6" | "prop7"
    inputs: dict
    bound: int
    hypothesis_checks: tuple[HypothesisCheck, ...]
    condition: Condition = Condition.SCHANUEL


def _squarefree_signed(d: int) -> int:
    sf = 1 if d > 0 else -1
    for p, e in factor(abs(d)).factors.items():
        if e % 2:
            sf *= p
    return sf


def _quadratic_field_tag(g: AlgebraicGamma) -> int | None:
    if g.degree != 2:
        return None
    c0, c1, c2 = g.min_poly
    try:
        return _squarefree_signed(c1 * c1 - 4 * c0 * c2)
    except InvalidInputError:
        return None  # discriminant beyond the factoring scale: use the heuristic


_RELATION_HEIGHT = 10**6
_RELATION_DIGITS = 60


def _check_one_and_gammas_qli(gammas: tuple[Gamma, ...]) -> HypothesisCheck:
    """Is (1, gamma_1, ..., gamma_k) linearly independent over the rationals?

    Exact when decidable from structure (a rational gamma, a single irrational
    gamma, or several roots of quadratics in one common field); otherwise a
    height-bounded integer-relation search at 60 digits, flagged as heuristic.
    """
    name = "one-and-gammas-q-linearly-independent"
    k = len(gammas)
    canon = [canonicalize(g) for g in gammas]
    for i, cg in enumerate(canon):
        if cg.is_rational:
            return HypothesisCheck(
                name, "exact", False, f"gamma #{i + 1} equals the rational {cg.rational_value}"
            )
    if k == 1 and not isinstance(canon[0].canonical, NumericGamma):
        return HypothesisCheck(
            name, "exact", True, "a single irrational gamma is independent of 1"
        )
    tags = [
        _quadratic_field_tag(cg.canonical)
        if isinstance(cg.canonical, AlgebraicGamma)
        else None
        for cg in canon
    ]
    if k >= 2 and all(t is not None for t in tags) and len(set(tags)) == 1:
        return HypothesisCheck(
            name,
            "exact",
            False,
            f"{k} numbers in one quadratic field span at most 2 dimensions with 1",
        )
    from .numeric import ball_exact_int
    from .probe import find_linear_relation  # local import keeps modules acyclic

    from .gamma import evaluate

    try:
        # extra digits so every value's absolute radius clears 10^-precision
        values = [ball_exact_int(1)] + [evaluate(g, _RELATION_DIGITS + 12) for g in gammas]
    except PrecisionExceededError as exc:
        return HypothesisCheck(name, "numeric-heuristic", False, str(exc))
    relation = find_linear_relation(
        values, height_cap=_RELATION_HEIGHT, precision=_RELATION_DIGITS
    )
    if relation is not None:
        return HypothesisCheck(
            name,
            "numeric-heuristic",
            False,
            f"integer-relation search found coefficients {relation}",
        )
    return HypothesisCheck(
        name,
        "numeric-heuristic",
        True,
        f"no relation up to height {_RELATION_HEIGHT} at {_RELATION_DIGITS} digits",
    )


def _check_bases_independent(ns: tuple[int, ...]) -> HypothesisCheck:
    name = "bases-multiplicatively-independent"
    if any(n < 1 for n in ns) or not ns:
        raise InvalidInputError(f"bases must be naturals >= 1, got {ns}")
    res = mult_independent(list(ns))
    if res.independent:
        return HypothesisCheck(name, "exact", True, "exponent-vector kernel is trivial")
    return HypothesisCheck(
        name, "exact", False, f"certificate {res.certificate.exponents}"
    )


def _check_gamma_transcendental(g: CanonicalGamma) -> HypothesisCheck:
    name = "gamma-transcendental"
    c = g.canonical
    if isinstance(c, LogRatioGamma):
        return HypothesisCheck(
            name, "exact", True,
            "an irrational log ratio of naturals is transcendental (Gelfond-Schneider)",
        )
    if isinstance(c, NamedGamma):
        return HypothesisCheck(name, "exact", True, f"{c.name} is transcendental")
    if isinstance(c, RationalGamma):
        return HypothesisCheck(name, "exact", False, "gamma is rational")
    if isinstance(c, AlgebraicGamma):
        return HypothesisCheck(name, "exact", False, "gamma is algebraic")
    return HypothesisCheck(
        name, "exact", False, "a numeric literal cannot be certified transcendental"
    )


def _require(checks: list[HypothesisCheck], rule: str) -> None:
    failed = [c for c in checks if not c.passed]
    if failed:
        raise RejectedQueryError(
            f"{rule} hypothesis failed: {failed[0].name} ({failed[0].detail})",
            checks=checks,
        )


def schanuel_bound(query: Prop5Query | Prop6Query | Prop7Query) -> BoundCertificate:
    """Schanuel-conditional lower bound on a transcendence degree.

    prop5 (n >= 2, algebraic irrational gamma_1..gamma_k with 1,gamma_* Q-linearly
    independent): the k+1 numbers log n, n^{gamma_1}, ..., n^{gamma_k} are
    algebraically independent, bound k+1.
    prop6 (transcendental gamma, multiplicatively independent n_1..n_k):
    bound k-1 on n_1^gamma, ..., n_k^gamma.
    prop7 (n >= 2, gamma_1..gamma_k with 1,gamma_* Q-linearly independent,
    independence read over the rationals including 1): bound k-1 on the 2k
    numbers e^{gamma_i}, n^{gamma_i}.
    """
    if isinstance(query, Prop5Query):
        if query.n < 2:
            raise InvalidInputError(f"need n >= 2, got {query.n}")
        if not query.gammas:
            raise InvalidInputError("need at least one gamma")
        if not all(isinstance(g, AlgebraicGamma) for g in query.gammas):
            raise InvalidInputError("prop5 gammas must all be algebraic irrationals")
        checks = [_check_one_and_gammas_qli(query.gammas)]
        _require(checks, "prop5")
        k = len(query.gammas)
        return BoundCertificate(
            "prop5",
            {"n": query.n, "gammas": [format_gamma(g) for g in query.gammas]},
            k + 1,
            tuple(checks),
        )
    if isinstance(query, Prop6Query):
        checks = [_check_gamma_transcendental(query.gamma)]
        checks.append(_check_bases_independent(query.ns))
        _require(checks, "prop6")
        k = len(query.ns)
        return BoundCertificate(
            "prop6",
            {
                "gamma": format_gamma(query.gamma.canonical),
                "scale": str(query.gamma.scale),
                "ns": list(query.ns),
            },
            k - 1,
            tuple(checks),
        )
    if isinstance(query, Prop7Query):
        if query.n < 2:
            raise InvalidInputError(f"need n >= 2, got {query.n}")
        if not query.gammas:
            raise InvalidInputError("need at least one gamma")
        checks = [_check_one_and_gammas_qli(query.gammas)]
        _require(checks, "prop7")
        k = len(query.gammas)
        return BoundCertificate(
            "prop7",
            {"n": query.n, "gammas": [format_gamma(g) for g in query.gammas]},
            k - 1,
            tuple(checks),
        )
    raise InvalidInputError(f"unknown bound query {query!r}")


# ---------------------------------------------------------------------------
# Stable JSON serialization.


def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def witness_to_dict(w: Witness | None) -> dict | None:
    if w is None:
        return None
    d: dict = {"kind": w.kind}
    if w.value is not None:
        d["value"] = _fraction_str(w.value)
    if w.pair is not None:
        d["p"], d["q"] = w.pair
    if w.min_poly is not None:
        d["min_poly"] = list(w.min_poly)
    return d


def witness_from_dict(d: dict | None) -> Witness | None:
    if d is None:
        return None
    return Witness(
        d["kind"],
        value=Fraction(d["value"]) if "value" in d else None,
        pair=(d["p"], d["q"]) if "p" in d else None,
        min_poly=tuple(d["min_poly"]) if "min_poly" in d else None,
    )


def verdict_to_dict(n: int, v: Verdict) -> dict:
    return {
        "n": n,
        "status": v.status.value,
        "rule": v.rule,
        "witness": witness_to_dict(v.witness),
        "condition": v.condition.value,
    }


def report_to_dict(report: ExceptionalSetReport) -> dict:
    return {
        "schema": SCHEMA_ID,
        "gamma": {
            "canonical": format_gamma(report.gamma.canonical),
            "scale": _fraction_str(report.gamma.scale),
        },
        "N": report.bound,
        "assumptions": {
            "schanuel": report.assumptions.assume_schanuel,
            "conjecture1": report.assumptions.assume_conjecture1,
        },
        "verdicts": [verdict_to_dict(n, v) for n, v in sorted(report.verdicts.items())],
        "representant": (
            None
            if report.representant is None
            else {
                "B": report.representant.value,
                "provenance": report.representant.provenance.value,
            }
        ),
    }


def report_from_dict(d: dict) -> ExceptionalSetReport:
    if d.get("schema") != SCHEMA_ID:
        raise InvalidInputError(f"unsupported schema {d.get('schema')!r}")
    gamma = CanonicalGamma(parse_gamma(d["gamma"]["canonical"]), Fraction(d["gamma"]["scale"]))
    assumptions = AssumptionSet(
        bool(d["assumptions"]["schanuel"]), bool(d["assumptions"]["conjecture1"])
    )
    verdicts = {}
    for item in d["verdicts"]:
        verdicts[item["n"]] = Verdict(
            Status(item["status"]),
            item["rule"],
            witness_from_dict(item.get("witness")),
            Condition(item["condition"]),
        )
    if len(verdicts) != d["N"] or sorted(verdicts) != list(range(1, d["N"] + 1)):
        raise InvalidInputError("verdicts must cover exactly 1..N")
    rep = d.get("representant")
    representant = None if rep is None else Representant(rep["B"], Provenance(rep["provenance"]))
    return ExceptionalSetReport(gamma, d["N"], assumptions, verdicts, representant)


def bound_certificate_to_dict(cert: BoundCertificate) -> dict:
    return {
        "schema": SCHEMA_ID,
        "rule": cert.rule,
        "inputs": cert.inputs,
        "bound": cert.bound,
        "condition": cert.condition.value,
        "hypothesis_checks": [
            {"name": c.name, "method": c.method, "passed": c.passed, "detail": c.detail}
            for c in cert.hypothesis_checks
        ],
    }
