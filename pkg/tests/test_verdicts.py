"""Verdict engine: rule table, closure fixpoint, reports, bound calculator."""

import random
from fractions import Fraction

import mpmath
import pytest

from zetagamma.errors import (
    InternalInconsistencyError,
    InvalidInputError,
    RejectedQueryError,
)
from zetagamma.gamma import canonicalize, parse_gamma
from zetagamma.verdicts import (
    AssumptionSet,
    Condition,
    ExceptionalSetReport,
    Prop5Query,
    Prop6Query,
    Prop7Query,
    Provenance,
    Status,
    UNKNOWN_VERDICT,
    Verdict,
    Witness,
    _propagate,
    check_prop3,
    classify_point,
    closure_check,
    exact_power_value,
    exceptional_representant,
    exceptional_set,
    report_from_dict,
    report_to_dict,
    schanuel_bound,
)

NONE = AssumptionSet()
SCH = AssumptionSet(assume_schanuel=True)
CONJ = AssumptionSet(assume_conjecture1=True)


def _c(text):
    return canonicalize(parse_gamma(text))


def _alg(value: Fraction) -> Verdict:
    return Verdict(Status.ALGEBRAIC, "R4", Witness("rational", value=Fraction(value)))


def _trans() -> Verdict:
    return Verdict(Status.TRANSCENDENTAL, "R3")


def _synthetic_report(gamma_text, n_max, marks) -> ExceptionalSetReport:
    verdicts = {n: UNKNOWN_VERDICT for n in range(1, n_max + 1)}
    for n, v in marks.items():
        verdicts[n] = v
    return ExceptionalSetReport(_c(gamma_text), n_max, NONE, verdicts, None)


# ---------------------------------------------------------------------------
# classify_point.


def test_classify_logratio_point():
    v = classify_point(_c("logratio:3/2"), 8)
    assert v.status is Status.ALGEBRAIC and v.rule == "R4"
    assert v.witness.pair == (3, 1) and v.witness.value == 27
    assert v.condition is Condition.UNCONDITIONAL


def test_classify_gelfond_schneider():
    v = classify_point(_c("alg:x^2-2@[1,2]"), 3)
    assert v.status is Status.TRANSCENDENTAL and v.rule == "R3"
    assert v.condition is Condition.UNCONDITIONAL


def test_classify_pi_conditional():
    assert classify_point(_c("const:pi"), 5).status is Status.UNKNOWN
    v = classify_point(_c("const:pi"), 5, SCH)
    assert v.status is Status.TRANSCENDENTAL and v.condition is Condition.SCHANUEL
    assert v.rule == "R7"


def test_classify_rational_uses_r2_everywhere():
    c = _c("rat:3/5")
    for n in (1, 2, 8):
        v = classify_point(c, n)
        assert v.status is Status.ALGEBRAIC and v.rule == "R2"
    assert classify_point(c, 1).witness.value == 1
    assert classify_point(c, 32).witness.value == 8  # 32^(3/5) = 2^3


def test_classify_n_one_nonrational():
    v = classify_point(_c("const:e"), 1)
    assert v.rule == "R1" and v.witness.value == 1


def test_classify_conjecture1_flip():
    v = classify_point(_c("logratio:3/2"), 5, CONJ)
    assert v.status is Status.TRANSCENDENTAL and v.rule == "R6"
    assert v.condition is Condition.CONJECTURE1
    # powers of the base stay unconditionally algebraic
    v = classify_point(_c("logratio:3/2"), 8, CONJ)
    assert v.status is Status.ALGEBRAIC and v.condition is Condition.UNCONDITIONAL


def test_classify_numeric_literal_opaque():
    c = _c("num:1.5849625007~11")
    assert classify_point(c, 2).status is Status.UNKNOWN
    assert classify_point(c, 1).status is Status.ALGEBRAIC
    assert classify_point(c, 2, AssumptionSet(True, True)).status is Status.UNKNOWN


def test_classify_rejects_zero():
    with pytest.raises(InvalidInputError):
        classify_point(_c("rat:1"), 0)


def test_exact_power_value():
    w = exact_power_value(8, Fraction(1, 3))
    assert w.value == 2
    w = exact_power_value(2, Fraction(1, 2))
    assert w.min_poly == (-2, 0, 1)
    w = exact_power_value(8, Fraction(-2, 3))
    assert w.value == Fraction(1, 4)
    w = exact_power_value(2, Fraction(-1, 2))  # 1/sqrt2: 2x^2 - 1
    assert w.min_poly == (-1, 0, 2)


# ---------------------------------------------------------------------------
# exceptional_set.


def test_exceptional_set_logratio_100():
    report = exceptional_set(_c("logratio:3/2"), 100)
    assert report.algebraic_set() == [1, 2, 4, 8, 16, 32, 64]
    others = [v for n, v in report.verdicts.items() if n not in (1, 2, 4, 8, 16, 32, 64)]
    assert all(v.status is Status.UNKNOWN for v in others)
    assert report.representant.value == 2
    assert report.representant.provenance is Provenance.CONDITIONAL


def test_exceptional_set_rational():
    report = exceptional_set(_c("rat:1"), 50)
    assert all(v.status is Status.ALGEBRAIC for v in report.verdicts.values())
    assert report.representant is None


def test_exceptional_set_conjecture1():
    report = exceptional_set(_c("logratio:3/2"), 100, CONJ)
    for n, v in report.verdicts.items():
        if n in (1, 2, 4, 8, 16, 32, 64):
            assert v.status is Status.ALGEBRAIC
        else:
            assert v.status is Status.TRANSCENDENTAL
            assert v.condition is Condition.CONJECTURE1


def test_exceptional_set_invalid_bound():
    with pytest.raises(InvalidInputError):
        exceptional_set(_c("rat:1"), 0)


def test_representant_cases():
    report = exceptional_set(_c("alg:x^2-2@[1,2]"), 40)
    assert report.representant.value == 1
    assert report.representant.provenance is Provenance.DETERMINED
    report = exceptional_set(_c("const:pi"), 40)
    assert report.representant.value == 1
    assert report.representant.provenance is Provenance.UNDETERMINED
    report = exceptional_set(_c("logratio:5/9"), 40)  # base reduces to 3
    assert report.representant.value == 3


def test_representant_rejects_rational_gamma():
    report = exceptional_set(_c("rat:2"), 10)
    with pytest.raises(RejectedQueryError):
        exceptional_representant(report)


def test_representant_inconsistent_report():
    marks = {n: _alg(Fraction(n)) for n in (1, 4, 16)}
    report = _synthetic_report("logratio:3/2", 20, marks)
    with pytest.raises(InternalInconsistencyError):
        exceptional_representant(report)


def test_representant_prop8_shape():
    # under the power-orbit assumption the representant is never a perfect power
    from zetagamma.lattice import perfect_power_root

    for text in ("logratio:3/2", "logratio:5/4", "logratio:7/36"):
        report = exceptional_set(_c(text), 120, CONJ)
        b = report.representant.value
        if b > 1:
            assert perfect_power_root(b) == (b, 1)


# ---------------------------------------------------------------------------
# check_prop3 / closure_check.


def test_prop3_violation_detected():
    marks = {1: _alg(Fraction(1)), 2: _alg(Fraction(2)), 3: _alg(Fraction(3)), 5: _alg(Fraction(5))}
    report = _synthetic_report("const:pi", 6, marks)
    assert check_prop3(report) == (2, 3, 5)


def test_prop3_power_orbit_ok():
    report = exceptional_set(_c("logratio:3/2"), 64)
    assert check_prop3(report) is None


def test_prop3_two_elements_ok():
    marks = {1: _alg(Fraction(1)), 2: _alg(Fraction(2)), 3: _alg(Fraction(3))}
    report = _synthetic_report("const:pi", 3, marks)
    assert check_prop3(report) is None


def test_prop3_vacuous_for_rational():
    report = exceptional_set(_c("rat:2/7"), 30)
    assert check_prop3(report) is None


def test_closure_ok_on_engine_reports():
    for text, a in [("logratio:3/2", NONE), ("rat:5/3", NONE), ("const:pi", SCH)]:
        report = exceptional_set(_c(text), 100, a)
        assert closure_check(report) == []


def test_closure_power_violation():
    marks = {1: _alg(Fraction(1)), 2: _alg(Fraction(2)), 4: _trans()}
    report = _synthetic_report("const:pi", 5, marks)
    rules = {v.rule for v in closure_check(report)}
    assert "power-up" in rules


def test_closure_product_violation():
    marks = {1: _alg(Fraction(1)), 2: _alg(Fraction(2)), 3: _trans(), 6: _alg(Fraction(6))}
    report = _synthetic_report("const:pi", 6, marks)
    rules = {v.rule for v in closure_check(report)}
    assert "product" in rules


def test_closure_requires_one_algebraic():
    report = _synthetic_report("const:pi", 3, {})
    rules = {v.rule for v in closure_check(report)}
    assert "one-algebraic" in rules


# ---------------------------------------------------------------------------
# Propagation internals.


def test_propagate_fills_power_orbit():
    g = _c("const:pi")
    verdicts = {n: UNKNOWN_VERDICT for n in range(1, 17)}
    verdicts[1] = Verdict(Status.ALGEBRAIC, "R1", Witness("rational", value=Fraction(1)))
    verdicts[2] = _trans()
    _propagate(verdicts, g, 16)
    for n in (4, 8, 16):
        assert verdicts[n].status is Status.TRANSCENDENTAL
        assert verdicts[n].rule == "R-up"


def test_propagate_product_rule():
    g = _c("logratio:3/2")
    verdicts = {n: UNKNOWN_VERDICT for n in range(1, 13)}
    verdicts[1] = Verdict(Status.ALGEBRAIC, "R1", Witness("rational", value=Fraction(1)))
    verdicts[2] = classify_point(g, 2)
    verdicts[3] = Verdict(Status.TRANSCENDENTAL, "R5")
    _propagate(verdicts, g, 12)
    assert verdicts[6].status is Status.TRANSCENDENTAL
    assert verdicts[12].status is Status.TRANSCENDENTAL
    assert verdicts[9].status is Status.TRANSCENDENTAL  # 3^2 via R-up


def test_propagate_six_exponentials_rule():
    # two independent algebraic points force independent thirds transcendental
    g = _c("const:pi")
    verdicts = {n: UNKNOWN_VERDICT for n in range(1, 11)}
    verdicts[1] = Verdict(Status.ALGEBRAIC, "R1", Witness("rational", value=Fraction(1)))
    verdicts[2] = _alg(Fraction(2))
    verdicts[3] = _alg(Fraction(3))
    _propagate(verdicts, g, 10)
    for n in (5, 7, 10):
        assert verdicts[n].status is Status.TRANSCENDENTAL, n
        assert verdicts[n].rule == "R5"
    assert verdicts[6].status is Status.UNKNOWN  # 6 = 2*3 is dependent on {2,3}


def test_propagate_conflict_raises():
    g = _c("const:pi")
    verdicts = {n: UNKNOWN_VERDICT for n in range(1, 9)}
    verdicts[1] = Verdict(Status.ALGEBRAIC, "R1", Witness("rational", value=Fraction(1)))
    verdicts[2] = _alg(Fraction(2))
    verdicts[4] = _trans()  # contradicts R-up from 2
    with pytest.raises(InternalInconsistencyError):
        _propagate(verdicts, g, 8)


def test_verdict_invariants_enforced():
    with pytest.raises(InternalInconsistencyError):
        Verdict(Status.ALGEBRAIC, "R1")  # algebraic needs a witness
    with pytest.raises(InternalInconsistencyError):
        Verdict(Status.UNKNOWN, "none", Witness("rational", value=Fraction(1)))
    with pytest.raises(InternalInconsistencyError):
        Verdict(Status.TRANSCENDENTAL, "R6")  # unconditional must cite a theorem


# ---------------------------------------------------------------------------
# Randomized soundness suites.


def _random_gamma_pool():
    pool = [
        "rat:1",
        "rat:-6/4",
        "rat:0",
        "rat:22/7",
        "logratio:3/2",
        "logratio:9/4",
        "logratio:8/2",
        "logratio:10/6",
        "logratio:5/9",
        "alg:x^2-2@[1,2]",
        "alg:x^2+1",
        "alg:x^3-2",
        "const:pi",
        "const:e",
        "num:0.5772156649~10",
    ]
    return [_c(t) for t in pool]


def test_thousand_case_rule_soundness():
    """No (gamma, n, assumptions) combination may produce conflicting
    algebraic/transcendental derivations; 1000 seeded random cases."""
    rng = random.Random(1000)
    pool = _random_gamma_pool()
    for _ in range(1000):
        g = rng.choice(pool)
        n = rng.randint(1, 300)
        a = AssumptionSet(rng.random() < 0.5, rng.random() < 0.5)
        classify_point(g, n, a)  # raises InternalInconsistencyError on conflict


def test_scaling_invariance_of_verdicts():
    """S_gamma = S_{Q gamma} at verdict level: status, rule and condition maps
    agree for random nonzero rational rescalings (witness values differ)."""
    from zetagamma.gamma import CanonicalGamma

    rng = random.Random(77)
    pool = _random_gamma_pool()
    for _ in range(60):
        g = rng.choice(pool)
        q = Fraction(rng.choice([-3, -2, -1, 1, 2, 3, 5]), rng.choice([1, 2, 3, 4]))
        scaled = CanonicalGamma(g.canonical, g.scale * q)
        a = AssumptionSet(rng.random() < 0.5, rng.random() < 0.5)
        for n in range(1, 40):
            v1, v2 = classify_point(g, n, a), classify_point(scaled, n, a)
            assert (v1.status, v1.rule, v1.condition) == (v2.status, v2.rule, v2.condition)


def test_algebraic_points_sparse_for_transcendental_gamma():
    import math

    for text in ("logratio:3/2", "logratio:5/4", "const:pi", "const:e"):
        for n_max in (10, 100, 500):
            report = exceptional_set(_c(text), n_max)
            not_algebraic = sum(
                1 for v in report.verdicts.values() if v.status is not Status.ALGEBRAIC
            )
            assert not_algebraic >= n_max - 2 * int(math.log2(n_max))


def test_witnesses_verify_exactly_and_numerically():
    report = exceptional_set(_c("logratio:3/2"), 200)
    b = report.gamma.canonical.b
    from zetagamma.probe import eval_power

    for n in report.algebraic_set():
        w = report.verdicts[n].witness
        if w.pair is None:
            continue
        p, q = w.pair
        assert n**q == b**p  # exact witness identity
        ball = eval_power(n, parse_gamma("logratio:3/2"), 40)
        with mpmath.workdps(60):
            assert abs(ball.real - int(w.value)) < mpmath.mpf(10) ** -35


def test_fixpoint_reports_pass_checks_random():
    rng = random.Random(31)
    pool = _random_gamma_pool()
    for _ in range(40):
        g = rng.choice(pool)
        n_max = rng.randint(1, 80)
        a = AssumptionSet(rng.random() < 0.5, rng.random() < 0.5)
        report = exceptional_set(g, n_max, a)
        assert closure_check(report) == []
        assert check_prop3(report) is None


# ---------------------------------------------------------------------------
# JSON round trip.


def test_report_json_round_trip_random():
    rng = random.Random(123)
    pool = _random_gamma_pool()
    for _ in range(100):
        g = rng.choice(pool)
        a = AssumptionSet(rng.random() < 0.5, rng.random() < 0.5)
        report = exceptional_set(g, rng.randint(1, 40), a)
        doc = report_to_dict(report)
        assert report_from_dict(doc) == report
        ns = [item["n"] for item in doc["verdicts"]]
        assert ns == sorted(ns)
        assert doc["schema"] == "zetagamma/1"


def test_report_from_dict_validates():
    report = exceptional_set(_c("rat:1"), 3)
    doc = report_to_dict(report)
    bad = dict(doc)
    bad["schema"] = "zetagamma/0"
    with pytest.raises(InvalidInputError):
        report_from_dict(bad)
    bad = dict(doc)
    bad["verdicts"] = doc["verdicts"][:-1]
    with pytest.raises(InvalidInputError):
        report_from_dict(bad)


# ---------------------------------------------------------------------------
# schanuel_bound.


def test_prop6_example():
    cert = schanuel_bound(Prop6Query(_c("const:pi"), (2, 3, 5)))
    assert cert.bound == 2
    assert cert.condition is Condition.SCHANUEL
    assert all(c.passed and c.method == "exact" for c in cert.hypothesis_checks)


def test_prop6_rejects_dependent_bases():
    with pytest.raises(RejectedQueryError) as exc:
        schanuel_bound(Prop6Query(_c("const:pi"), (2, 4)))
    failed = [c for c in exc.value.checks if not c.passed]
    assert failed[0].name == "bases-multiplicatively-independent"
    assert "(2, -1)" in failed[0].detail


def test_prop6_rejects_non_transcendental_gamma():
    for text in ("rat:2", "alg:x^2-2@[1,2]", "num:1.41421~6"):
        with pytest.raises(RejectedQueryError) as exc:
            schanuel_bound(Prop6Query(_c(text), (2, 3)))
        assert exc.value.checks[0].name == "gamma-transcendental"


def test_prop5_single_sqrt2():
    cert = schanuel_bound(Prop5Query(2, (parse_gamma("alg:x^2-2@[1,2]"),)))
    assert cert.bound == 2
    assert cert.hypothesis_checks[0].method == "exact"


def test_prop5_same_quadratic_field_rejected_exactly():
    g1 = parse_gamma("alg:x^2-2@[1,2]")
    g2 = parse_gamma("alg:x^2-2x-1@[2,3]")  # 1 + sqrt2
    with pytest.raises(RejectedQueryError) as exc:
        schanuel_bound(Prop5Query(2, (g1, g2)))
    assert exc.value.checks[0].method == "exact"


def test_prop5_mixed_fields_heuristic():
    g1 = parse_gamma("alg:x^2-2@[1,2]")
    g2 = parse_gamma("alg:x^2-3@[1,2]")
    cert = schanuel_bound(Prop5Query(2, (g1, g2)))
    assert cert.bound == 3
    assert cert.hypothesis_checks[0].method == "numeric-heuristic"
    assert cert.hypothesis_checks[0].passed


def test_prop5_big_discriminant_falls_back_to_heuristic():
    g1 = parse_gamma("alg:x^2-18446744073709551629")  # discriminant beyond 64 bits
    g2 = parse_gamma("alg:x^2-3@[1,2]")
    cert = schanuel_bound(Prop5Query(2, (g1, g2)))
    assert cert.bound == 3
    assert cert.hypothesis_checks[0].method == "numeric-heuristic"


def test_prop5_requires_algebraic():
    with pytest.raises(InvalidInputError):
        schanuel_bound(Prop5Query(2, (parse_gamma("const:pi"),)))


def test_prop7_pi_e():
    cert = schanuel_bound(Prop7Query(2, (parse_gamma("const:pi"), parse_gamma("const:e"))))
    assert cert.bound == 1
    assert cert.hypothesis_checks[0].passed


def test_prop7_numeric_literal_paths():
    # enough stated digits: the 60-digit relation heuristic can run
    euler = "0.57721566490153286060651209008240243104215933593992359880576723"
    rich = parse_gamma(f"num:{euler}~80")
    cert = schanuel_bound(Prop7Query(2, (rich,)))
    assert cert.bound == 0
    assert cert.hypothesis_checks[0].method == "numeric-heuristic"
    # too few stated digits: the heuristic cannot be funded, so reject
    poor = parse_gamma("num:0.5772156649~11")
    with pytest.raises(RejectedQueryError) as exc:
        schanuel_bound(Prop7Query(2, (poor,)))
    assert exc.value.checks[0].method == "numeric-heuristic"
    assert not exc.value.checks[0].passed


def test_prop7_rejects_rational_combination():
    with pytest.raises(RejectedQueryError):
        schanuel_bound(Prop7Query(2, (parse_gamma("logratio:8/2"),)))


def test_bound_matches_formula():
    cert = schanuel_bound(Prop6Query(_c("logratio:3/2"), (5, 6, 7, 11)))
    assert cert.bound == len((5, 6, 7, 11)) - 1
    gs = (parse_gamma("alg:x^2-2@[1,2]"),)
    assert schanuel_bound(Prop5Query(3, gs)).bound == len(gs) + 1
