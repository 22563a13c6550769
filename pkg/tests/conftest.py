from __future__ import annotations

import pytest

from sitassess.model import ClusterElement, Cluster, FactualSemanticFeature, Scenario
from sitassess.perception import AgentRecord, DomainConfig, OrganizationSnapshot


@pytest.fixture
def config():
    return DomainConfig(
        magnitude_map={
            "fire": {"intensity": {"weak": 1, "moderate": 2, "strong": 3}},
            "fireBrigade": {"state": {"idle": 0, "moving": 1, "fighting": 3, "blocked": 0.5}},
        },
        terminal_payloads=frozenset({("state", "extinguished")}),
        window=5,
        proximity_d=2,
    )


def make_fsf(kind="fire", ident="1", attrs=(("intensity", "weak"),), loc=(0, 0), time=0):
    return FactualSemanticFeature(kind=kind, id=ident, attributes=attrs, location=loc, time=time)


def make_element(indicators, an_size, **fsf_kw):
    return ClusterElement(fsf=make_fsf(**fsf_kw), indicators=indicators, an_size=an_size)


def make_record(agent_id, indicators, an_size, **fsf_kw):
    return AgentRecord(id=agent_id, fsf=make_fsf(**fsf_kw), indicators=tuple(float(i) for i in indicators),
                       an_size=an_size)


def make_snapshot(vectors, tick=0):
    """Snapshot from a list of (indicators, an_size) in id order."""
    agents = tuple(
        make_record(i, ind, an, ident=str(i)) for i, (ind, an) in enumerate(vectors)
    )
    return OrganizationSnapshot(tick=tick, agents=agents)


def make_scenario(name, cluster_specs, captured_at=0):
    """cluster_specs: list of (cluster name, list of (indicators, an_size))."""
    clusters = []
    for cname, specs in cluster_specs:
        elements = tuple(
            make_element(ind, an, ident=f"{cname}-{i}") for i, (ind, an) in enumerate(specs)
        )
        clusters.append(Cluster(name=cname, elements=elements))
    return Scenario(name=name, clusters=tuple(clusters), captured_at=captured_at)
