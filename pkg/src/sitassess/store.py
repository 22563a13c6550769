"""Scenario base persistence and scenario capture.

The on-disk format is strict JSON: unknown fields are rejected and every
validation error names the path of the offending node, e.g.
``scenarios[1].clusters[0].elements[2].fsf``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import CaptureError, DomainError, ScenarioFormatError
from .model import Cluster, ClusterElement, FactualSemanticFeature, Scenario
from .perception import OrganizationSnapshot

FORMAT_VERSION = 1


@dataclass(frozen=True)
class ScenarioBase:
    scenarios: tuple[Scenario, ...] = ()
    version: int = FORMAT_VERSION

    def __post_init__(self):
        object.__setattr__(self, "scenarios", tuple(self.scenarios))
        if self.version != FORMAT_VERSION:
            raise ScenarioFormatError(f"unsupported scenario base version {self.version}")
        names = [s.name for s in self.scenarios]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise ScenarioFormatError(f"duplicate scenario names: {sorted(dupes)}")

    def with_scenario(self, scenario: Scenario) -> "ScenarioBase":
        return ScenarioBase(scenarios=self.scenarios + (scenario,), version=self.version)


def _require_fields(node, fields, where):
    if not isinstance(node, dict):
        raise ScenarioFormatError(f"{where}: expected an object, got {type(node).__name__}")
    missing = [f for f in fields if f not in node]
    if missing:
        raise ScenarioFormatError(f"{where}: missing fields {missing}")
    unknown = sorted(set(node) - set(fields))
    if unknown:
        raise ScenarioFormatError(f"{where}: unknown fields {unknown}")


def _parse_fsf(node, where) -> FactualSemanticFeature:
    _require_fields(node, ("kind", "id", "attributes", "x", "y", "time"), where)
    try:
        return FactualSemanticFeature(
            kind=node["kind"],
            id=node["id"],
            attributes=tuple((a[0], a[1]) for a in node["attributes"]),
            location=(node["x"], node["y"]),
            time=node["time"],
        )
    except (DomainError, ValueError, TypeError, IndexError) as exc:
        raise ScenarioFormatError(f"{where}: {exc}") from exc


def _parse_element(node, where) -> ClusterElement:
    _require_fields(node, ("fsf", "indicators", "an_size"), where)
    fsf = _parse_fsf(node["fsf"], f"{where}.fsf")
    try:
        return ClusterElement(fsf=fsf, indicators=tuple(node["indicators"]), an_size=int(node["an_size"]))
    except (DomainError, ValueError, TypeError) as exc:
        raise ScenarioFormatError(f"{where}: {exc}") from exc


def _parse_cluster(node, where) -> Cluster:
    _require_fields(node, ("name", "elements"), where)
    elements = tuple(
        _parse_element(e, f"{where}.elements[{i}]") for i, e in enumerate(node["elements"])
    )
    try:
        return Cluster(name=node["name"], elements=elements)
    except DomainError as exc:
        raise ScenarioFormatError(f"{where}: {exc}") from exc


def _parse_scenario(node, where) -> Scenario:
    _require_fields(node, ("name", "captured_at", "clusters"), where)
    clusters = tuple(
        _parse_cluster(c, f"{where}.clusters[{i}]") for i, c in enumerate(node["clusters"])
    )
    try:
        return Scenario(name=node["name"], clusters=clusters, captured_at=int(node["captured_at"]))
    except (DomainError, ValueError, TypeError) as exc:
        raise ScenarioFormatError(f"{where}: {exc}") from exc


def load(path) -> ScenarioBase:
    try:
        root = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(f"{path}: not valid JSON: {exc}") from exc
    _require_fields(root, ("version", "scenarios"), str(path))
    scenarios = tuple(
        _parse_scenario(s, f"scenarios[{i}]") for i, s in enumerate(root["scenarios"])
    )
    return ScenarioBase(scenarios=scenarios, version=int(root["version"]))


def _fsf_dict(fsf: FactualSemanticFeature) -> dict:
    return {
        "kind": fsf.kind,
        "id": fsf.id,
        "attributes": [[n, v] for n, v in fsf.attributes],
        "x": fsf.location[0],
        "y": fsf.location[1],
        "time": fsf.time,
    }


def save(base: ScenarioBase, path) -> None:
    doc = {
        "version": base.version,
        "scenarios": [
            {
                "name": s.name,
                "captured_at": s.captured_at,
                "clusters": [
                    {
                        "name": c.name,
                        "elements": [
                            {
                                "fsf": _fsf_dict(e.fsf),
                                "indicators": list(e.indicators),
                                "an_size": e.an_size,
                            }
                            for e in c.elements
                        ],
                    }
                    for c in s.clusters
                ],
            }
            for s in base.scenarios
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def capture_scenario(snapshot: OrganizationSnapshot, groups, name: str) -> Scenario:
    """Freeze expert-chosen agent groups of a snapshot into a new scenario.

    `groups` is an ordered list of (cluster name, agent id list) pairs; every
    id must be live in the snapshot.
    """
    if not groups:
        raise CaptureError("at least one group is required")
    by_id = snapshot.by_id()
    clusters = []
    for group_name, ids in groups:
        if not ids:
            raise CaptureError(f"group {group_name!r} is empty")
        elements = []
        for agent_id in ids:
            record = by_id.get(agent_id)
            if record is None:
                raise CaptureError(f"group {group_name!r} names unknown or dead agent id {agent_id}")
            elements.append(
                ClusterElement(fsf=record.fsf, indicators=record.indicators, an_size=record.an_size)
            )
        clusters.append(Cluster(name=group_name, elements=tuple(elements)))
    try:
        return Scenario(name=name, clusters=tuple(clusters), captured_at=snapshot.tick)
    except DomainError as exc:
        raise CaptureError(str(exc)) from exc
