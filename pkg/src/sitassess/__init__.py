"""Situation assessment engine: factual-agent perception, cosine-similarity
scenario matching and a deterministic toy fire-disaster simulator."""

from .model import (
    Cluster,
    ClusterElement,
    FactualSemanticFeature,
    Scenario,
    cosine_similarity,
    element_vector,
    relevance,
)
from .perception import DomainConfig, DomainEvent, Organization, OrganizationSnapshot
from .store import ScenarioBase

__all__ = [
    "Cluster",
    "ClusterElement",
    "DomainConfig",
    "DomainEvent",
    "FactualSemanticFeature",
    "Organization",
    "OrganizationSnapshot",
    "Scenario",
    "ScenarioBase",
    "cosine_similarity",
    "element_vector",
    "relevance",
]
