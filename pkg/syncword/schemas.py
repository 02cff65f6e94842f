"""
Pydantic schemas for the structured documents syncword reads and writes:
enumeration specs and reports, CLI reports, the fixture manifest and errors.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from syncword.dfa import MAX_LETTERS, SUBSET_CAP


class SearchSpec(BaseModel):
    """Which automata an enumeration covers and which filters it applies."""

    model_config = ConfigDict(frozen=True)

    n: int
    q: int
    require_strongly_connected: bool = True
    prune_redundant_letters: bool = True
    dedup_isomorphic: bool = True
    permute_letters: bool = True
    threshold: Optional[int] = None
    exact_cutoff: float = 0.6

    @field_validator("n")
    @classmethod
    def validate_n(cls, v):
        if not 2 <= v <= SUBSET_CAP:
            raise ValueError(f"n must be between 2 and {SUBSET_CAP}")
        return v

    @field_validator("q")
    @classmethod
    def validate_q(cls, v):
        if not 1 <= v <= MAX_LETTERS:
            raise ValueError(f"q must be between 1 and {MAX_LETTERS}")
        return v

    @field_validator("exact_cutoff")
    @classmethod
    def validate_exact_cutoff(cls, v):
        if not 0.0 <= v <= 1.0:
            raise ValueError("exact_cutoff must lie in [0, 1]")
        return v

    @model_validator(mode="before")
    @classmethod
    def default_threshold(cls, data):
        if isinstance(data, dict) and data.get("threshold") is None and isinstance(data.get("n"), int):
            data = {**data, "threshold": (data["n"] - 1) ** 2}
        return data

    @model_validator(mode="after")
    def validate_threshold(self):
        bound = self.cerny_bound
        if self.threshold is None or not 0 <= self.threshold <= bound:
            raise ValueError(f"threshold must lie in [0, {bound}] for n = {self.n}")
        return self

    @property
    def cerny_bound(self) -> int:
        return (self.n - 1) ** 2

    @property
    def exact_gate(self) -> float:
        """Greedy upper bounds below this value skip the exact search."""
        return min(self.threshold, self.exact_cutoff * self.cerny_bound)


class FilterCounts(BaseModel):
    """Automata surviving each filter, in pipeline order."""

    generated: int = 0
    strongly_connected: int = 0
    canonical: int = 0
    synchronizing: int = 0
    minimal_alphabet: int = 0
    exact_runs: int = 0

    def merge(self, other: "FilterCounts") -> "FilterCounts":
        return FilterCounts(**{k: getattr(self, k) + getattr(other, k) for k in FilterCounts.model_fields})


class ExtremalAutomaton(BaseModel):
    table: List[List[int]]
    word: str
    length: int
    semigroup_size: Optional[int] = None
    letter_variants: int = 1
    # some letter can be dropped and the rest still synchronizes
    redundant_letters: bool = False


class EnumerationReport(BaseModel):
    """
    histogram counts automata by exact minimal reset length; bounded counts
    the ones whose greedy upper bound fell below the exact gate, keyed by
    that bound. Together they cover every surviving automaton.
    """

    spec: SearchSpec
    counts: FilterCounts = Field(default_factory=FilterCounts)
    histogram: Dict[int, int] = Field(default_factory=dict)
    bounded: Dict[int, int] = Field(default_factory=dict)
    extremal: List[ExtremalAutomaton] = Field(default_factory=list)
    shards: int = 1
    generated_at: Optional[str] = None

    @computed_field
    @property
    def max_length(self) -> Optional[int]:
        return max(self.histogram, default=None)

    @computed_field
    @property
    def max_below_bound(self) -> Optional[int]:
        return max((k for k in self.histogram if k < self.spec.cerny_bound), default=None)

    @property
    def survivors(self) -> int:
        return sum(self.histogram.values()) + sum(self.bounded.values())

    def merge(self, other: "EnumerationReport") -> "EnumerationReport":
        if other.spec != self.spec:
            raise ValueError("cannot merge reports of different searches")
        histogram = dict(self.histogram)
        for k, v in other.histogram.items():
            histogram[k] = histogram.get(k, 0) + v
        bounded = dict(self.bounded)
        for k, v in other.bounded.items():
            bounded[k] = bounded.get(k, 0) + v
        extremal = sorted(self.extremal + other.extremal, key=lambda e: e.table)
        return EnumerationReport(
            spec=self.spec,
            counts=self.counts.merge(other.counts),
            histogram=dict(sorted(histogram.items())),
            bounded=dict(sorted(bounded.items())),
            extremal=extremal,
            shards=max(self.shards, other.shards),
            generated_at=max(self.generated_at or "", other.generated_at or "") or None,
        )


class TraceEntry(BaseModel):
    size_before: int
    size_after: int
    segment: str
    source: str


class SyncReport(BaseModel):
    algorithm: str
    n: int
    q: int
    length: int
    word: str
    cubic_bound: int
    exceeds_quadratic: bool
    expected_length: Optional[int] = None
    deviation: Optional[int] = None
    trace: List[TraceEntry] = Field(default_factory=list)


class ExactReport(BaseModel):
    n: int
    q: int
    synchronizing: bool
    length: Optional[int] = None
    word: Optional[str] = None
    visited_count: int


class SemigroupReport(BaseModel):
    n: int
    q: int
    size: int
    cap: int
    complete: bool
    contains_constant: bool


class CheckReport(BaseModel):
    n: int
    q: int
    synchronizing: bool
    strongly_connected: bool
    sink_components: int


class FixtureEntry(BaseModel):
    """Published values a fixture must reproduce when it is loaded."""

    name: str
    file: str
    n: int
    q: int
    minimal_length: int
    semigroup_size: int
    published_word: Optional[str] = None
    extended: bool = False


class FixtureManifest(BaseModel):
    fixtures: List[FixtureEntry]

    def get(self, name: str) -> Optional[FixtureEntry]:
        return next((f for f in self.fixtures if f.name == name), None)


class CatalogEntry(BaseModel):
    name: str
    n: int
    q: int
    minimal_length: int
    semigroup_size: Optional[int] = None
    present: bool
    extended: bool = False


class CatalogListing(BaseModel):
    entries: List[CatalogEntry]


class DfaDocument(BaseModel):
    name: str
    n: int
    q: int
    table: List[List[int]]


class ErrorReport(BaseModel):
    """What a failed command prints with --json."""

    detail: str
    error_code: Optional[str] = None
