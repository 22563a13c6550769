"""Shared domain types and the numeric matching kernel.

Everything here is an immutable value or a pure function, so any number of
assessment workers can read the same objects concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DimensionMismatchError, DomainError

Vector = tuple[float, ...]


def _checked_vector(values, label: str) -> Vector:
    vec = tuple(float(c) for c in values)
    for c in vec:
        if not math.isfinite(c) or c < 0.0:
            raise DomainError(f"{label} component {c!r} must be finite and >= 0")
    return vec


def cosine_similarity(v1, v2) -> float:
    """Cosine of the angle between two nonnegative vectors, in [0, 1].

    1 means the vectors point the same way, 0 means they are orthogonal.
    Degenerate cases: two all-zero vectors are treated as identical (1.0);
    exactly one all-zero vector counts as total divergence (0.0).
    """
    if len(v1) != len(v2):
        raise DimensionMismatchError(f"vector lengths differ: {len(v1)} vs {len(v2)}")
    if len(v1) == 0:
        raise DimensionMismatchError("vectors must have at least one component")
    a = _checked_vector(v1, "v1")
    b = _checked_vector(v2, "v2")
    if a == b:
        return 1.0  # exact, sidestepping sqrt(s)**2 != s rounding
    norm_a = math.sqrt(math.fsum(x * x for x in a))
    norm_b = math.sqrt(math.fsum(x * x for x in b))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    dot = math.fsum(x * y for x, y in zip(a, b))
    # rounding can push the quotient a hair past 1
    return min(1.0, dot / (norm_a * norm_b))


def relevance(similarities) -> float:
    """Arithmetic mean of a created cluster's element similarities."""
    values = list(similarities)
    if not values:
        raise DomainError("relevance is undefined for an empty similarity list")
    for s in values:
        if not math.isfinite(s) or s < 0.0 or s > 1.0:
            raise DomainError(f"similarity {s!r} must lie in [0, 1]")
    return math.fsum(values) / len(values)


@dataclass(frozen=True)
class FactualSemanticFeature:
    """One observed fact: what it is, where it is and when it was seen."""

    kind: str
    id: str
    attributes: tuple[tuple[str, str], ...]
    location: tuple[int, int]
    time: int

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple((str(n), str(v)) for n, v in self.attributes))
        object.__setattr__(self, "location", (int(self.location[0]), int(self.location[1])))
        if not self.kind:
            raise DomainError("fact kind must be non-empty")
        if not self.id:
            raise DomainError("fact id must be non-empty")
        names = [n for n, _ in self.attributes]
        if len(names) != len(set(names)):
            raise DomainError(f"duplicate attribute names in fact {self.kind}#{self.id}")
        if self.time < 0:
            raise DomainError("fact time must be >= 0")

    @property
    def label(self) -> str:
        return f"{self.kind}#{self.id}"


@dataclass(frozen=True)
class ClusterElement:
    """Stored scenario building block: a fact, its behavioral indicators and
    the size of its acquaintance network at capture time."""

    fsf: FactualSemanticFeature
    indicators: Vector
    an_size: int

    def __post_init__(self):
        object.__setattr__(self, "indicators", _checked_vector(self.indicators, "indicators"))
        if self.an_size < 0:
            raise DomainError("an_size must be >= 0")


@dataclass(frozen=True)
class Cluster:
    name: str
    elements: tuple[ClusterElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.name:
            raise DomainError("cluster name must be non-empty")
        if not self.elements:
            raise DomainError(f"cluster {self.name!r} has no elements")


@dataclass(frozen=True)
class Scenario:
    name: str
    clusters: tuple[Cluster, ...]
    captured_at: int

    def __post_init__(self):
        object.__setattr__(self, "clusters", tuple(self.clusters))
        if not self.name:
            raise DomainError("scenario name must be non-empty")
        if not self.clusters:
            raise DomainError(f"scenario {self.name!r} has no clusters")
        names = [c.name for c in self.clusters]
        if len(names) != len(set(names)):
            raise DomainError(f"duplicate cluster names in scenario {self.name!r}")
        if self.captured_at < 0:
            raise DomainError("captured_at must be >= 0")


def element_vector(item) -> Vector:
    """Comparison vector of a cluster element or frozen agent record:
    the behavioral indicators followed by the acquaintance-network size."""
    return tuple(item.indicators) + (float(item.an_size),)
