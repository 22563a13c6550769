"""Event ingestion and the factual-agent organization.

One factual agent exists per observed world object. Agents carry the latest
fact about their subject plus a behavioral vector recomputed each tick:

    activity  - number of events for the subject within the last W ticks
    magnitude - numeric weight of the subject's current qualitative attributes
    recency   - max(0, W - ticks since the subject's last event)

The acquaintance network links agents whose facts are spatially close
(Chebyshev distance <= D). Snapshots are immutable and safe to share.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigurationError, OutOfOrderEventError
from .model import FactualSemanticFeature, Vector, _checked_vector


@dataclass(frozen=True)
class DomainEvent:
    tick: int
    kind: str
    id: str
    payload: tuple[tuple[str, str], ...]
    x: int
    y: int

    def __post_init__(self):
        object.__setattr__(self, "payload", tuple((str(n), str(v)) for n, v in self.payload))
        if self.tick < 0:
            raise ValueError("event tick must be >= 0")
        if not self.kind or not self.id:
            raise ValueError("event kind and id must be non-empty")
        names = [n for n, _ in self.payload]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate payload names in event for {self.kind}#{self.id}")

    def to_json(self) -> str:
        return json.dumps(
            {
                "tick": self.tick,
                "kind": self.kind,
                "id": self.id,
                "payload": dict(self.payload),
                "x": self.x,
                "y": self.y,
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_dict(cls, d: dict) -> "DomainEvent":
        return cls(
            tick=int(d["tick"]),
            kind=str(d["kind"]),
            id=str(d["id"]),
            payload=tuple(d["payload"].items()),
            x=int(d["x"]),
            y=int(d["y"]),
        )


def write_event_log(events, path) -> None:
    Path(path).write_text("".join(ev.to_json() + "\n" for ev in events))


def read_event_log(path) -> list[DomainEvent]:
    """Parse a JSON-lines event log; lines must already be sorted by tick."""
    events = []
    last_tick = 0
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            ev = DomainEvent.from_dict(json.loads(line))
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"{path}:{lineno}: bad event line: {exc}") from exc
        if ev.tick < last_tick:
            raise OutOfOrderEventError(f"{path}:{lineno}: tick {ev.tick} after tick {last_tick}")
        last_tick = ev.tick
        events.append(ev)
    return events


@dataclass(frozen=True)
class DomainConfig:
    """Expert-supplied domain knowledge: qualitative-to-numeric attribute
    weights, terminal payloads, the activity/recency window and the
    acquaintance proximity radius."""

    magnitude_map: dict
    terminal_payloads: frozenset
    window: int = 5
    proximity_d: int = 2

    def __post_init__(self):
        if self.window < 1:
            raise ConfigurationError("window must be >= 1")
        if self.proximity_d < 0:
            raise ConfigurationError("proximity_d must be >= 0")

    @classmethod
    def from_dict(cls, d: dict) -> "DomainConfig":
        unknown = set(d) - {"magnitude_map", "terminal_payloads", "window", "proximity_d"}
        if unknown:
            raise ConfigurationError(f"unknown domain-config fields: {sorted(unknown)}")
        return cls(
            magnitude_map=d.get("magnitude_map", {}),
            terminal_payloads=frozenset((str(n), str(v)) for n, v in d.get("terminal_payloads", [])),
            window=int(d.get("window", 5)),
            proximity_d=int(d.get("proximity_d", 2)),
        )

    @classmethod
    def from_file(cls, path) -> "DomainConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def magnitude(self, kind: str, attributes) -> float:
        """Sum of the mapped weights of a fact's qualitative attributes.

        Attribute names absent from the kind's table are ignored; a known
        name with an unknown value is a configuration error.
        """
        table = self.magnitude_map.get(kind, {})
        total = 0.0
        for name, value in attributes:
            if name in table:
                if value not in table[name]:
                    raise ConfigurationError(
                        f"no magnitude mapping for {kind}.{name}={value!r}"
                    )
                total += float(table[name][value])
        return total


def default_config() -> DomainConfig:
    from .resources import bundled_path

    return DomainConfig.from_file(bundled_path("domain_config.json"))


@dataclass(frozen=True)
class AgentRecord:
    """Frozen view of one live factual agent inside a snapshot."""

    id: int
    fsf: FactualSemanticFeature
    indicators: Vector
    an_size: int


@dataclass(frozen=True)
class OrganizationSnapshot:
    tick: int
    agents: tuple[AgentRecord, ...]

    def by_id(self) -> dict[int, AgentRecord]:
        return {a.id: a for a in self.agents}

    def live_ids(self) -> set[int]:
        return {a.id for a in self.agents}


@dataclass
class _Agent:
    id: int
    fsf: FactualSemanticFeature
    indicators: Vector = (0.0, 0.0, 0.0)
    acquaintances: set = field(default_factory=set)
    alive: bool = True
    event_ticks: list = field(default_factory=list)


class Organization:
    """Mutable factual-agent organization driven by an ordered event stream.

    Single-writer: call ingest_event for each event of a tick, then
    advance_tick, then rebuild_acquaintances, then snapshot.
    """

    def __init__(self, config: DomainConfig):
        self.config = config
        self._agents: dict[int, _Agent] = {}
        self._by_subject: dict[tuple[str, str], int] = {}
        self._next_id = 0
        self._tick = -1  # last advanced tick
        self._last_event_tick = -1

    def ingest_event(self, event: DomainEvent) -> int:
        """Create or update the factual agent for the event's subject;
        returns the agent id."""
        if event.tick < self._tick or event.tick < self._last_event_tick:
            raise OutOfOrderEventError(
                f"event at tick {event.tick} arrived after tick "
                f"{max(self._tick, self._last_event_tick)}"
            )
        self._last_event_tick = event.tick
        fsf = FactualSemanticFeature(
            kind=event.kind,
            id=event.id,
            attributes=event.payload,
            location=(event.x, event.y),
            time=event.tick,
        )
        key = (event.kind, event.id)
        agent_id = self._by_subject.get(key)
        if agent_id is None or not self._agents[agent_id].alive:
            agent_id = self._next_id
            self._next_id += 1
            n = 3  # activity, magnitude, recency
            self._agents[agent_id] = _Agent(id=agent_id, fsf=fsf, indicators=(0.0,) * n)
            self._by_subject[key] = agent_id
        else:
            self._agents[agent_id].fsf = fsf
        self._agents[agent_id].event_ticks.append(event.tick)
        return agent_id

    def advance_tick(self, tick: int) -> None:
        """Close the given tick: apply terminal payloads, then recompute
        every live agent's behavioral vector."""
        if tick <= self._tick:
            raise OutOfOrderEventError(f"tick {tick} already advanced past ({self._tick})")
        w = self.config.window
        for agent in self._agents.values():
            if not agent.alive:
                continue
            if any(pair in self.config.terminal_payloads for pair in agent.fsf.attributes):
                agent.alive = False
                continue
            ticks = agent.event_ticks
            activity = float(sum(1 for t in ticks if tick - w < t <= tick))
            magnitude = self.config.magnitude(agent.fsf.kind, agent.fsf.attributes)
            recency = float(max(0, w - (tick - ticks[-1]))) if ticks else 0.0
            agent.indicators = _checked_vector((activity, magnitude, recency), "indicators")
        self._tick = tick

    def rebuild_acquaintances(self) -> None:
        """Recompute the full proximity relation from scratch (no hysteresis)."""
        live = [a for a in self._agents.values() if a.alive]
        for a in self._agents.values():
            a.acquaintances = set()
        d = self.config.proximity_d
        for i, a in enumerate(live):
            ax, ay = a.fsf.location
            for b in live[i + 1:]:
                bx, by = b.fsf.location
                if max(abs(ax - bx), abs(ay - by)) <= d:
                    a.acquaintances.add(b.id)
                    b.acquaintances.add(a.id)

    def snapshot(self) -> OrganizationSnapshot:
        records = tuple(
            AgentRecord(id=a.id, fsf=a.fsf, indicators=a.indicators, an_size=len(a.acquaintances))
            for a in sorted(self._agents.values(), key=lambda a: a.id)
            if a.alive
        )
        return OrganizationSnapshot(tick=self._tick, agents=records)


def replay(events, config: DomainConfig, through_tick: int | None = None):
    """Replay an ordered event log tick by tick, yielding (tick, snapshot)
    for every tick from 0 through `through_tick` (default: last event tick)."""
    if through_tick is None:
        through_tick = max((ev.tick for ev in events), default=0)
    by_tick: dict[int, list[DomainEvent]] = {}
    for ev in events:
        by_tick.setdefault(ev.tick, []).append(ev)
    org = Organization(config)
    for tick in range(through_tick + 1):
        for ev in by_tick.get(tick, []):
            org.ingest_event(ev)
        org.advance_tick(tick)
        org.rebuild_acquaintances()
        yield tick, org.snapshot()


def snapshot_at(events, config: DomainConfig, tick: int) -> OrganizationSnapshot:
    for t, snap in replay(events, config, through_tick=tick):
        if t == tick:
            return snap
    raise ValueError(f"tick {tick} not reached")
