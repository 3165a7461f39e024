"""FastAPI service wrapping the core operations.

Every CLI subcommand has a matching endpoint under /v1 with pydantic
request/response models; responses reuse the stable zetagamma/1 JSON
documents.  Domain errors map to HTTP statuses: invalid input 400, rejected
queries (failed hypothesis checks) 409, internal inconsistencies 500.

Run with: uvicorn zetagamma.service:app  (or `python -m zetagamma.service`).
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import dirichlet
from .errors import (
    InternalInconsistencyError,
    InvalidInputError,
    RejectedQueryError,
)
from .gamma import canonicalize, format_gamma, parse_gamma
from .lattice import mult_independent
from .probe import RelationQuery, probe_point
from .verdicts import (
    SCHEMA_ID,
    AssumptionSet,
    Prop5Query,
    Prop6Query,
    Prop7Query,
    bound_certificate_to_dict,
    check_prop3,
    classify_point,
    closure_check,
    exceptional_representant,
    exceptional_set,
    report_from_dict,
    report_to_dict,
    schanuel_bound,
    verdict_to_dict,
)

app = FastAPI(
    title="zetagamma",
    description="Exceptional sets of power maps: Dirichlet ring, multiplicative "
    "independence, transcendence verdicts, integer-relation probe.",
    version="0.1.0",
)


@app.exception_handler(InvalidInputError)
async def _invalid_input(request: Request, exc: InvalidInputError):
    return JSONResponse(status_code=400, content={"error": "invalid-input", "message": str(exc)})


@app.exception_handler(RejectedQueryError)
async def _rejected(request: Request, exc: RejectedQueryError):
    return JSONResponse(
        status_code=409,
        content={
            "error": "rejected-query",
            "message": str(exc),
            "hypothesis_checks": [
                {"name": c.name, "method": c.method, "passed": c.passed, "detail": c.detail}
                for c in exc.checks
            ],
        },
    )


@app.exception_handler(InternalInconsistencyError)
async def _inconsistent(request: Request, exc: InternalInconsistencyError):
    return JSONResponse(
        status_code=500, content={"error": "internal-inconsistency", "message": str(exc)}
    )


def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# Per-request work limits: the CLI is unbounded (the caller owns the machine),
# but a shared service must refuse requests that would stall the worker.
_MAX_N = 100_000
_MAX_MONOMIALS = 5_000
_MAX_DIGITS = 10_000
_MAX_DEGREE = 64
_MAX_TUPLE = 64


def _limit(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise InvalidInputError(f"{what} {value} exceeds the service limit {cap}")


class Assumptions(BaseModel):
    schanuel: bool = False
    conjecture1: bool = False

    def to_set(self) -> AssumptionSet:
        return AssumptionSet(self.schanuel, self.conjecture1)


class GammaEcho(BaseModel):
    input: str
    canonical: str
    scale: str


class HealthResponse(BaseModel):
    status: str
    schema_id: str = Field(serialization_alias="schema")
    version: str


@app.get("/v1/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", schema_id=SCHEMA_ID, version="0.1.0")


class ConvolveRequest(BaseModel):
    f: str = Field(description="function spec: zeta:<k> or eps")
    g: str = Field(description="function spec: zeta:<k> or eps")
    N: int


class ConvolveResponse(BaseModel):
    schema_id: str = Field(SCHEMA_ID, serialization_alias="schema")
    N: int
    values: list[str]


def _parse_function(spec: str, n: int) -> dirichlet.ArithFunction:
    if spec == "eps":
        return dirichlet.epsilon(n)
    if spec.startswith("zeta:"):
        return dirichlet.zeta_k(int(spec.split(":", 1)[1]), n)
    raise InvalidInputError(f"unknown function spec {spec!r} (want zeta:<k> or eps)")


@app.post("/v1/convolve", response_model=ConvolveResponse)
def convolve(req: ConvolveRequest) -> ConvolveResponse:
    _limit(req.N, _MAX_N, "N")
    h = dirichlet.convolve(_parse_function(req.f, req.N), _parse_function(req.g, req.N))
    return ConvolveResponse(N=req.N, values=[_fraction_str(v) for v in h.values])


class CarlitzRequest(BaseModel):
    r: int
    max_deg: int
    N: int


class RelationTerm(BaseModel):
    exponents: list[int]
    coeff: str


class CarlitzResponse(BaseModel):
    schema_id: str = Field(SCHEMA_ID, serialization_alias="schema")
    monomials: int
    relations: list[list[RelationTerm]]


@app.post("/v1/carlitz", response_model=CarlitzResponse)
def carlitz(req: CarlitzRequest) -> CarlitzResponse:
    _limit(req.N, _MAX_N, "N")
    if req.r >= 0 and req.max_deg >= 1:
        _limit(dirichlet.monomial_count(req.r, req.max_deg), _MAX_MONOMIALS, "monomial count")
    relations = dirichlet.carlitz_kernel(req.r, req.max_deg, req.N)
    return CarlitzResponse(
        monomials=dirichlet.monomial_count(req.r, req.max_deg),
        relations=[
            [RelationTerm(exponents=list(e), coeff=_fraction_str(c)) for e, c in rel.terms.items()]
            for rel in relations
        ],
    )


class MultdepRequest(BaseModel):
    ns: list[int]


class MultdepResponse(BaseModel):
    schema_id: str = Field(SCHEMA_ID, serialization_alias="schema")
    ns: list[int]
    independent: bool
    certificate: list[int] | None
    primes: list[int]


@app.post("/v1/multdep", response_model=MultdepResponse)
def multdep(req: MultdepRequest) -> MultdepResponse:
    _limit(len(req.ns), _MAX_TUPLE, "tuple length")
    res = mult_independent(req.ns)
    return MultdepResponse(
        ns=req.ns,
        independent=res.independent,
        certificate=list(res.certificate.exponents) if res.certificate else None,
        primes=list(res.matrix.primes),
    )


class CanonicalizeRequest(BaseModel):
    gamma: str


@app.post("/v1/canonicalize", response_model=GammaEcho)
def canonicalize_endpoint(req: CanonicalizeRequest) -> GammaEcho:
    c = canonicalize(parse_gamma(req.gamma))
    return GammaEcho(
        input=req.gamma, canonical=format_gamma(c.canonical), scale=_fraction_str(c.scale)
    )


class ClassifyRequest(BaseModel):
    gamma: str
    n: int
    assumptions: Assumptions = Assumptions()


class WitnessModel(BaseModel):
    kind: str
    value: str | None = None
    p: int | None = None
    q: int | None = None
    min_poly: list[int] | None = None


class VerdictModel(BaseModel):
    n: int
    status: str
    rule: str
    witness: WitnessModel | None
    condition: str


class ClassifyResponse(BaseModel):
    schema_id: str = Field(SCHEMA_ID, serialization_alias="schema")
    gamma: GammaEcho
    verdict: VerdictModel


@app.post("/v1/classify", response_model=ClassifyResponse)
def classify(req: ClassifyRequest) -> ClassifyResponse:
    c = canonicalize(parse_gamma(req.gamma))
    v = classify_point(c, req.n, req.assumptions.to_set())
    return ClassifyResponse(
        gamma=GammaEcho(
            input=req.gamma, canonical=format_gamma(c.canonical), scale=_fraction_str(c.scale)
        ),
        verdict=VerdictModel(**verdict_to_dict(req.n, v)),
    )


class ExceptionalSetRequest(BaseModel):
    gamma: str
    N: int
    assumptions: Assumptions = Assumptions()


@app.post("/v1/exceptional-set")
def exceptional_set_endpoint(req: ExceptionalSetRequest) -> dict:
    _limit(req.N, _MAX_N, "N")
    c = canonicalize(parse_gamma(req.gamma))
    report = exceptional_set(c, req.N, req.assumptions.to_set())
    return report_to_dict(report)


class RepresentantResponse(BaseModel):
    schema_id: str = Field(SCHEMA_ID, serialization_alias="schema")
    B: int
    provenance: str


@app.post("/v1/representant", response_model=RepresentantResponse)
def representant(req: ExceptionalSetRequest) -> RepresentantResponse:
    _limit(req.N, _MAX_N, "N")
    c = canonicalize(parse_gamma(req.gamma))
    report = exceptional_set(c, req.N, req.assumptions.to_set())
    rep = exceptional_representant(report)
    return RepresentantResponse(B=rep.value, provenance=rep.provenance.value)


class CheckRequest(BaseModel):
    gamma: str | None = None
    N: int | None = None
    assumptions: Assumptions = Assumptions()
    report: dict | None = None


class ClosureViolationModel(BaseModel):
    rule: str
    points: list[int]


class CheckResponse(BaseModel):
    schema_id: str = Field(SCHEMA_ID, serialization_alias="schema")
    ok: bool
    closure_violations: list[ClosureViolationModel]
    prop3_violation: list[int] | None


@app.post("/v1/check", response_model=CheckResponse)
def check(req: CheckRequest) -> CheckResponse:
    if req.report is not None:
        report = report_from_dict(req.report)
    elif req.gamma is not None and req.N is not None:
        _limit(req.N, _MAX_N, "N")
        c = canonicalize(parse_gamma(req.gamma))
        report = exceptional_set(c, req.N, req.assumptions.to_set())
    else:
        raise InvalidInputError("check needs either a report document or gamma and N")
    closure = closure_check(report)
    prop3 = check_prop3(report)
    return CheckResponse(
        ok=not closure and prop3 is None,
        closure_violations=[
            ClosureViolationModel(rule=v.rule, points=list(v.points)) for v in closure
        ],
        prop3_violation=list(prop3) if prop3 else None,
    )


class BoundRequest(BaseModel):
    rule: str = Field(pattern="^prop[567]$")
    gamma: str | None = None
    gammas: list[str] = []
    n: int | None = None
    ns: list[int] = []


@app.post("/v1/bound")
def bound(req: BoundRequest) -> dict:
    _limit(len(req.gammas), _MAX_TUPLE, "gamma count")
    _limit(len(req.ns), _MAX_TUPLE, "tuple length")
    if req.rule == "prop5":
        if req.n is None or not req.gammas:
            raise InvalidInputError("prop5 needs n and gammas")
        query = Prop5Query(req.n, tuple(parse_gamma(t) for t in req.gammas))
    elif req.rule == "prop6":
        if req.gamma is None or not req.ns:
            raise InvalidInputError("prop6 needs gamma and ns")
        query = Prop6Query(canonicalize(parse_gamma(req.gamma)), tuple(req.ns))
    else:
        if req.n is None or not req.gammas:
            raise InvalidInputError("prop7 needs n and gammas")
        query = Prop7Query(req.n, tuple(parse_gamma(t) for t in req.gammas))
    return bound_certificate_to_dict(schanuel_bound(query))


class ProbeRequest(BaseModel):
    gamma: str
    n: int
    degree: int
    height: int
    digits: int


class ProbeResponse(BaseModel):
    schema_id: str = Field(SCHEMA_ID, serialization_alias="schema")
    outcome: str
    verdict_status: str
    polynomial: list[int] | None
    detail: str


@app.post("/v1/probe", response_model=ProbeResponse)
def probe(req: ProbeRequest) -> ProbeResponse:
    _limit(req.degree, _MAX_DEGREE, "degree")
    _limit(req.digits, _MAX_DIGITS, "digits")
    outcome = probe_point(req.n, parse_gamma(req.gamma), RelationQuery(req.degree, req.height, req.digits))
    return ProbeResponse(
        outcome=outcome.kind,
        verdict_status=outcome.verdict_status,
        polynomial=list(outcome.polynomial) if outcome.polynomial else None,
        detail=outcome.detail,
    )


def _main() -> None:
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)


if __name__ == "__main__":
    _main()
