from __future__ import annotations
from typing import List, Literal, Optional, Dict, Union
from pydantic import BaseModel, Field, model_validator

Status = Literal["pass", "fail", "not_applicable"]


def _square(table: list[list[int]], n: int, name: str) -> None:
    if len(table) != n or any(len(row) != n for row in table):
        raise ValueError(f"{name} must be a {n}x{n} table")


def _in_range(values: list[int], n: int, name: str) -> None:
    for i, v in enumerate(values):
        if not 0 <= v < n:
            raise ValueError(f"{name}[{i}]={v} out of range [0, {n})")


# ---------------------------------------------------------------- envelopes

class HomGroupSpec(BaseModel):
    n: int = Field(ge=1)
    e: int = Field(ge=0)
    mul: List[List[int]]
    alpha: List[int]
    inv: Optional[List[int]] = None
    subset: Optional[List[int]] = Field(default=None, description="Optional sorted member list")
    name: Optional[str] = None

    @model_validator(mode="after")
    def _shapes(self) -> "HomGroupSpec":
        _square(self.mul, self.n, "mul")
        for row in self.mul:
            _in_range(row, self.n, "mul")
        if len(self.alpha) != self.n:
            raise ValueError("alpha must have length n")
        _in_range(self.alpha, self.n, "alpha")
        _in_range([self.e], self.n, "e")
        if self.inv is not None:
            if len(self.inv) != self.n:
                raise ValueError("inv must have length n")
            _in_range(self.inv, self.n, "inv")
        if self.subset is not None:
            _in_range(self.subset, self.n, "subset")
        return self


class HomRingSpec(BaseModel):
    n: int = Field(ge=1)
    zero: int = Field(ge=0)
    one: Optional[int] = None
    add: List[List[int]]
    mul: List[List[int]]
    alpha: List[int]
    beta: List[int]
    ring_type: Literal[1, 2] = Field(default=1, alias="type")
    add_inv: Optional[List[int]] = None
    name: Optional[str] = None

    model_config = {"populate_by_name": True}

    @model_validator(mode="after")
    def _shapes(self) -> "HomRingSpec":
        for name in ("add", "mul"):
            table = getattr(self, name)
            _square(table, self.n, name)
            for row in table:
                _in_range(row, self.n, name)
        for name in ("alpha", "beta"):
            values = getattr(self, name)
            if len(values) != self.n:
                raise ValueError(f"{name} must have length n")
            _in_range(values, self.n, name)
        _in_range([self.zero] + ([self.one] if self.one is not None else []), self.n, "zero/one")
        if self.add_inv is not None:
            _in_range(self.add_inv, self.n, "add_inv")
        return self


class HomModuleSpec(BaseModel):
    ring: Union[HomRingSpec, str]
    m: int = Field(ge=1)
    mzero: int = Field(ge=0)
    madd: List[List[int]]
    beta: List[int]
    act_left: Optional[List[List[int]]] = None
    act_right: Optional[List[List[int]]] = None
    madd_inv: Optional[List[int]] = None
    name: Optional[str] = None

    @model_validator(mode="after")
    def _shapes(self) -> "HomModuleSpec":
        _square(self.madd, self.m, "madd")
        for row in self.madd:
            _in_range(row, self.m, "madd")
        if len(self.beta) != self.m:
            raise ValueError("beta must have length m")
        _in_range(self.beta, self.m, "beta")
        if self.act_left is None and self.act_right is None:
            raise ValueError("at least one of act_left / act_right is required")
        for name in ("act_left", "act_right"):
            table = getattr(self, name)
            if table is not None:
                for row in table:
                    _in_range(row, self.m, name)
        return self


class BilinearSpec(BaseModel):
    A: HomGroupSpec
    B: HomGroupSpec
    C: HomGroupSpec
    f: List[List[int]]

    @model_validator(mode="after")
    def _shape(self) -> "BilinearSpec":
        if len(self.f) != self.A.n or any(len(row) != self.B.n for row in self.f):
            raise ValueError("f must be an |A| x |B| table")
        for row in self.f:
            _in_range(row, self.C.n, "f")
        return self


class PolynomialSpec(BaseModel):
    p: int = Field(ge=2)
    subst: Dict[str, int]
    terms: List[List[Union[int, List[int]]]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _terms(self) -> "PolynomialSpec":
        for term in self.terms:
            if len(term) != 2:
                raise ValueError("each term is [exponent, coeff]")
        for power in self.subst.values():
            if power < 0:
                raise ValueError("substitution exponents must be non-negative")
        return self


# ---------------------------------------------------------------- reports

class AxiomVerdict(BaseModel):
    name: str
    status: Status = "pass"
    witness: Optional[List[int]] = None
    note: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.status == "fail"


class AxiomReport(BaseModel):
    structure: str = "hom-group"
    order: int
    axioms: List[AxiomVerdict]
    derived: List[AxiomVerdict] = Field(default_factory=list)
    regular: Optional[bool] = None
    abelian: Optional[bool] = None
    inv_index: List[int] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(v.failed for v in self.axioms)

    @property
    def failures(self) -> List[AxiomVerdict]:
        return [v for v in self.axioms + self.derived if v.failed]

    def verdict(self, name: str) -> AxiomVerdict:
        for v in self.axioms + self.derived:
            if v.name == name:
                return v
        raise KeyError(name)


class QAdditiveReport(BaseModel):
    q: int
    bound: int
    checked: int
    skipped: int
    failures: int
    witness: Optional[List[int]] = None
    unit_law: bool
    inverse_law: bool
    regular: bool


class HomSearchReport(BaseModel):
    status: Literal["complete", "truncated"]
    count: int
    nodes: int
    maps: List[List[int]]


class SubgroupVerdict(BaseModel):
    holds: bool
    witness: Optional[List[int]] = None
    reason: Optional[str] = None
    coset_criterion: Optional[bool] = None

    def __bool__(self) -> bool:
        return self.holds


class CanonicalSubgroups(BaseModel):
    center: List[int]
    alpha_center: List[int]
    centralizer: Optional[List[int]] = None
    normalizer: Optional[List[int]] = None
    checks: List[AxiomVerdict]


class LatticeReport(BaseModel):
    order: int
    status: Literal["complete", "truncated"]
    authoritative: bool
    subgroups: int
    normal: List[List[int]]
    maximal: List[List[int]]
    is_simple: bool
    regular: bool
    cross_check_mismatches: List[List[int]] = Field(default_factory=list)
    note: Optional[str] = None
    finding: Optional[str] = None


class AbelianizationReport(BaseModel):
    order: int
    commutator_subgroup: List[int]
    bare_set_closed: bool
    quotient_order: int
    abelian: bool
    projection: List[int]
    minimal: bool


class UniversalVerdict(BaseModel):
    status: Literal["satisfied", "violated", "truncated"]
    factorizations: int = 0
    witness: Optional[List[int]] = None
    note: Optional[str] = None


class BilinearReport(BaseModel):
    identities: List[AxiomVerdict]
    lemmas: List[AxiomVerdict] = Field(default_factory=list)

    @property
    def bilinear(self) -> bool:
        return not any(v.failed for v in self.identities)


class TensorVerdict(BaseModel):
    candidate: Literal["paper-construction", "oracle"]
    target: str
    status: Literal["satisfied", "violated", "truncated"]
    witness: Optional[Dict[str, object]] = None


class RingReport(BaseModel):
    ring_type: int
    order: int
    unitary: bool
    regular: bool
    additive: AxiomReport
    axioms: List[AxiomVerdict]
    derived: List[AxiomVerdict] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.additive.passed and not any(v.failed for v in self.axioms)

    @property
    def failures(self) -> List[AxiomVerdict]:
        return [v for v in self.additive.axioms + self.axioms + self.derived if v.failed]

    def verdict(self, name: str) -> AxiomVerdict:
        for v in self.axioms + self.derived:
            if v.name == name:
                return v
        raise KeyError(name)


class PolyRingReport(BaseModel):
    p: int
    subst: Dict[str, int]
    samples: int
    identities: List[AxiomVerdict]

    @property
    def passed(self) -> bool:
        return not any(v.failed for v in self.identities)


class CenterReport(BaseModel):
    members: List[int]
    proper: bool
    certificate: List[AxiomVerdict]


class ModuleReport(BaseModel):
    side: Literal["left", "right", "bi"]
    order: int
    regular: bool
    additive: AxiomReport
    axioms: List[AxiomVerdict]
    derived: List[AxiomVerdict] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.additive.passed and not any(v.failed for v in self.axioms)

    @property
    def failures(self) -> List[AxiomVerdict]:
        return [v for v in self.additive.axioms + self.axioms + self.derived if v.failed]

    def verdict(self, name: str) -> AxiomVerdict:
        for v in self.axioms + self.derived:
            if v.name == name:
                return v
        raise KeyError(name)


class SubmoduleReport(BaseModel):
    order: int
    status: Literal["complete", "truncated"]
    submodules: List[List[int]]
    ker_beta: List[int]
    ker_beta_is_submodule: bool
    is_simple: bool
    regular: bool
    finding: Optional[str] = None


class DecompositionReport(BaseModel):
    generator: int
    module_simple: bool = True
    orbit_length: int
    summands: List[List[int]]
    direct: bool
    covers: bool
    summands_simple: List[bool]
    rejected: List[Dict[str, object]] = Field(default_factory=list)
    overlap_witness: Optional[List[int]] = None


class SimplicityReport(BaseModel):
    status: Literal["complete", "truncated", "inconclusive"]
    is_simple: bool
    is_semisimple: bool
    regular: bool
    simple_summands: List[List[int]] = Field(default_factory=list)
    submodules: int = 0
    note: Optional[str] = None


class ReductionStepModel(BaseModel):
    rule: str
    position: int
    before: str
    after: str


class ReduceRequest(BaseModel):
    tree: str
    strict: bool = False
    strategy: str = "leftmost"


class ReduceResponse(BaseModel):
    normal_form: str
    canonical: str
    steps: List[ReductionStepModel]


class PropertyVerdict(BaseModel):
    name: str
    checked: int
    failures: int
    witness: Optional[List[str]] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


class FreeAxiomReport(BaseModel):
    samples: int
    seed: int
    properties: List[PropertyVerdict]
    strict_divergences: int = 0
    divergence_witness: Optional[List[str]] = None

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)


class ConfluenceReport(BaseModel):
    trees: int
    critical_pairs: int
    failures: int
    witness: Optional[List[str]] = None
