"""Rendering of assessment results: text tables, JSON documents and figures.

The text table mimics a ranked scenario-recognition table; the JSON document
keeps full float precision so downstream tooling (and the test suite) can
assert exact values. Figures are written with the Agg backend so the report
path works headless.
"""

from __future__ import annotations

import json
from pathlib import Path

from .assessment import coverage_of
from .perception import OrganizationSnapshot


def format_tick_report(snapshot: OrganizationSnapshot, reports, theta: float) -> str:
    by_id = snapshot.by_id()
    lines = [f"tick {snapshot.tick}  live_agents={len(snapshot.agents)}  "
             f"coverage={coverage_of(reports, snapshot):.2f}  theta={theta:.2f}"]
    for rep in sorted(reports, key=lambda r: r.rank):
        flag = "  [SELECTED]" if rep.selected else ""
        for cluster in rep.per_cluster:
            lines.append(f"{rep.assessment_agent_id}  {cluster.name}  "
                         f"r={cluster.relevance:.2f}{flag}")
            for match in cluster.matches:
                if match.matched_agent_id is None:
                    lines.append(f"    {match.stored_element.fsf.label} -> (unmatched)")
                else:
                    agent = by_id[match.matched_agent_id]
                    lines.append(f"    {match.stored_element.fsf.label} -> "
                                 f"{agent.fsf.label}  sim={match.similarity:.2f}")
        lines.append(f"{rep.assessment_agent_id}  ({rep.scenario_name})  "
                     f"r={rep.agent_relevance:.2f}  rank={rep.rank}{flag}")
    return "\n".join(lines)


def tick_report_dict(snapshot: OrganizationSnapshot, reports, theta: float) -> dict:
    by_id = snapshot.by_id()

    def match_dict(match):
        agent = by_id.get(match.matched_agent_id)
        return {
            "element": match.stored_element.fsf.label,
            "matched_agent_id": match.matched_agent_id,
            "matched_subject": agent.fsf.label if agent else None,
            "similarity": match.similarity,
        }

    return {
        "tick": snapshot.tick,
        "theta": theta,
        "live_agents": len(snapshot.agents),
        "coverage": coverage_of(reports, snapshot),
        "reports": [
            {
                "agent_id": rep.assessment_agent_id,
                "scenario": rep.scenario_name,
                "agent_relevance": rep.agent_relevance,
                "rank": rep.rank,
                "selected": rep.selected,
                "clusters": [
                    {
                        "name": c.name,
                        "relevance": c.relevance,
                        "matches": [match_dict(m) for m in c.matches],
                    }
                    for c in rep.per_cluster
                ],
            }
            for rep in sorted(reports, key=lambda r: r.rank)
        ],
    }


def write_json_report(tick_dicts, path) -> None:
    Path(path).write_text(json.dumps({"ticks": tick_dicts}, indent=2) + "\n")


def render_figure(tick_dicts, path) -> None:
    """Relevance chart next to the JSON report: a bar chart for a single
    tick, relevance trajectories when several ticks were assessed."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    if len(tick_dicts) == 1:
        doc = tick_dicts[0]
        labels = [f"{r['agent_id']}\n{r['scenario']}" for r in doc["reports"]]
        values = [r["agent_relevance"] for r in doc["reports"]]
        colors = ["tab:red" if r["selected"] else "tab:gray" for r in doc["reports"]]
        ax.bar(labels, values, color=colors)
        ax.set_ylim(0, 1.05)
        ax.set_ylabel("relevance")
        ax.set_title(f"Assessment at tick {doc['tick']} (selected in red)")
    else:
        series: dict[str, tuple[list, list]] = {}
        for doc in tick_dicts:
            for r in doc["reports"]:
                key = f"{r['agent_id']} ({r['scenario']})"
                xs, ys = series.setdefault(key, ([], []))
                xs.append(doc["tick"])
                ys.append(r["agent_relevance"])
        for key, (xs, ys) in series.items():
            ax.plot(xs, ys, marker=".", label=key)
        ax.set_ylim(0, 1.05)
        ax.set_xlabel("tick")
        ax.set_ylabel("relevance")
        ax.set_title("Relevance trajectories")
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
