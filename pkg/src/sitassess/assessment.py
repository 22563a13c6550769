"""Scenario matching: one assessment agent per stored scenario.

Each assessment agent rebuilds, from the current snapshot, the cluster of
live factual agents most similar to its stored clusters. Matching is purely
geometric: only the (indicators, an_size) vectors are compared, never the
facts' semantic content. Agents are ranked by relevance and a rank prefix
covering the situation is selected.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

from .errors import ConfigurationError
from .model import ClusterElement, Cluster, cosine_similarity, element_vector, relevance
from .perception import OrganizationSnapshot

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ElementMatch:
    stored_element: ClusterElement
    matched_agent_id: int | None
    similarity: float


@dataclass(frozen=True)
class ClusterResult:
    name: str
    matches: tuple[ElementMatch, ...]
    relevance: float


@dataclass(frozen=True)
class AssessmentReport:
    assessment_agent_id: str
    scenario_name: str
    per_cluster: tuple[ClusterResult, ...]
    agent_relevance: float
    rank: int = 0
    selected: bool = False

    def matched_ids(self) -> set[int]:
        return {
            m.matched_agent_id
            for c in self.per_cluster
            for m in c.matches
            if m.matched_agent_id is not None
        }


def build_cluster(stored: Cluster, snapshot: OrganizationSnapshot, taken: set[int]) -> list[ElementMatch]:
    """Greedily match each stored element, in stored order, to the free live
    agent with the highest cosine similarity (ties: smallest agent id).

    Matched ids are added to `taken`, making the assignment injective within
    one assessment agent's report. Elements left without a candidate are
    unmatched with similarity 0.
    """
    matches = []
    for element in stored.elements:
        target = element_vector(element)
        best_id = None
        best_sim = -1.0
        for record in snapshot.agents:  # ascending id, so strict > keeps the smallest
            if record.id in taken:
                continue
            sim = cosine_similarity(target, element_vector(record))
            if sim > best_sim:
                best_id, best_sim = record.id, sim
        if best_id is None:
            matches.append(ElementMatch(element, None, 0.0))
        else:
            taken.add(best_id)
            matches.append(ElementMatch(element, best_id, best_sim))
    return matches


def assess(snapshot: OrganizationSnapshot, base) -> list[AssessmentReport]:
    """Run every assessment agent against the snapshot and rank the reports.

    Reports are sorted by descending agent relevance, ties broken by
    assessment agent id; ranks are 1..k.
    """
    if not base.scenarios:
        raise ConfigurationError("scenario base is empty; nothing to assess")
    reports = []
    for index, scenario in enumerate(base.scenarios, start=1):
        taken: set[int] = set()
        cluster_results = []
        for stored in scenario.clusters:
            matches = build_cluster(stored, snapshot, taken)
            r = relevance([m.similarity for m in matches])
            cluster_results.append(ClusterResult(stored.name, tuple(matches), r))
        agent_relevance = relevance([c.relevance for c in cluster_results])
        reports.append(
            AssessmentReport(
                assessment_agent_id=f"Agent-{index}",
                scenario_name=scenario.name,
                per_cluster=tuple(cluster_results),
                agent_relevance=agent_relevance,
            )
        )
    reports.sort(key=lambda rep: (-rep.agent_relevance, rep.assessment_agent_id))
    return [replace(rep, rank=i) for i, rep in enumerate(reports, start=1)]


def select_covering(reports, snapshot: OrganizationSnapshot, theta: float = 0.9) -> list[AssessmentReport]:
    """Mark the shortest rank prefix whose matched agents cover at least a
    `theta` fraction of the live agents (or all reports if never reached).

    At least one report is selected when any exist. An empty snapshot counts
    as fully covered.
    """
    if not 0.0 < theta <= 1.0:
        raise ConfigurationError(f"theta must lie in (0, 1], got {theta}")
    ordered = sorted(reports, key=lambda rep: rep.rank)
    total = len(snapshot.agents)
    covered: set[int] = set()
    out = []
    done = False
    for rep in ordered:
        if done:
            out.append(replace(rep, selected=False))
            continue
        covered |= rep.matched_ids()
        out.append(replace(rep, selected=True))
        if coverage_fraction(covered, total) >= theta:
            done = True
    selected = [rep.assessment_agent_id for rep in out if rep.selected]
    logger.debug("tick %d: selected %s (coverage %.3f)",
                 snapshot.tick, selected, coverage_fraction(covered, total))
    return out


def coverage_fraction(covered_ids, total_live: int) -> float:
    if total_live == 0:
        return 1.0
    return len(covered_ids) / total_live


def coverage_of(reports, snapshot: OrganizationSnapshot) -> float:
    """Coverage achieved by the selected reports of a ranked list."""
    covered: set[int] = set()
    for rep in reports:
        if rep.selected:
            covered |= rep.matched_ids()
    return coverage_fraction(covered, len(snapshot.agents))
