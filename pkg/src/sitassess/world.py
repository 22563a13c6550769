"""Deterministic toy fire-disaster world.

Fires ignite and grow one intensity level every 3 unfought ticks (capped at
3 = "strong"); fire brigades walk one cell per tick toward a target fire and
fight any adjacent lit fire, lowering its intensity by their power per tick.
A fire reaching intensity 0 emits a terminal "extinguished" payload. The run
emits the JSON-lines event log consumed by the perception layer.
"""

from __future__ import annotations

import copy
import json
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import ScriptError
from .perception import DomainEvent

STRATEGIES = ("nearest-fire", "assigned-sector")
INTENSITY_WORDS = {1: "weak", 2: "moderate", 3: "strong"}
GROWTH_PERIOD = 3
MAX_INTENSITY = 3


@dataclass(frozen=True)
class FireSpec:
    ignite_tick: int
    x: int
    y: int


@dataclass(frozen=True)
class BrigadeSpec:
    id: str
    x: int
    y: int
    power: int = 1
    blocked: bool = False


@dataclass(frozen=True)
class WorldScript:
    width: int
    height: int
    seed: int
    ticks: int
    strategy: str
    fires: tuple[FireSpec, ...]
    brigades: tuple[BrigadeSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "fires", tuple(self.fires))
        object.__setattr__(self, "brigades", tuple(self.brigades))
        if self.width < 1 or self.height < 1:
            raise ScriptError("grid must be at least 1x1")
        if self.ticks < 1:
            raise ScriptError("ticks must be >= 1")
        if self.strategy not in STRATEGIES:
            raise ScriptError(f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")
        for f in self.fires:
            if not (0 <= f.x < self.width and 0 <= f.y < self.height):
                raise ScriptError(f"fire at ({f.x},{f.y}) outside the grid")
            if f.ignite_tick < 0:
                raise ScriptError("ignite_tick must be >= 0")
        ids = [b.id for b in self.brigades]
        if len(ids) != len(set(ids)):
            raise ScriptError("brigade ids must be unique")
        for b in self.brigades:
            if not (0 <= b.x < self.width and 0 <= b.y < self.height):
                raise ScriptError(f"brigade {b.id} at ({b.x},{b.y}) outside the grid")
            if b.power < 1:
                raise ScriptError(f"brigade {b.id} power must be >= 1")


def script_from_dict(d: dict) -> WorldScript:
    allowed = {"width", "height", "seed", "ticks", "strategy", "fires", "brigades"}
    if not isinstance(d, dict):
        raise ScriptError("script must be a JSON object")
    unknown = sorted(set(d) - allowed)
    if unknown:
        raise ScriptError(f"unknown script fields {unknown}")
    missing = sorted(allowed - set(d))
    if missing:
        raise ScriptError(f"missing script fields {missing}")
    try:
        fires = tuple(FireSpec(int(f["ignite_tick"]), int(f["x"]), int(f["y"])) for f in d["fires"])
        brigades = tuple(
            BrigadeSpec(
                id=str(b["id"]),
                x=int(b["x"]),
                y=int(b["y"]),
                power=int(b.get("power", 1)),
                blocked=bool(b.get("blocked", False)),
            )
            for b in d["brigades"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ScriptError(f"bad fire or brigade entry: {exc}") from exc
    return WorldScript(
        width=int(d["width"]),
        height=int(d["height"]),
        seed=int(d["seed"]),
        ticks=int(d["ticks"]),
        strategy=str(d["strategy"]),
        fires=fires,
        brigades=brigades,
    )


def load_script(path) -> WorldScript:
    try:
        return script_from_dict(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as exc:
        raise ScriptError(f"{path}: not valid JSON: {exc}") from exc


@dataclass
class _Fire:
    intensity: int = 0
    grow_timer: int = 0
    extinguished: bool = False

    @property
    def lit(self) -> bool:
        return self.intensity >= 1 and not self.extinguished


@dataclass
class _Brigade:
    x: int
    y: int
    state: str | None = None  # None before the first tick


@dataclass
class WorldState:
    fires: list
    brigades: list

    @classmethod
    def initial(cls, script: WorldScript) -> "WorldState":
        return cls(
            fires=[_Fire() for _ in script.fires],
            brigades=[_Brigade(x=b.x, y=b.y) for b in script.brigades],
        )


def _sector_assignment(script: WorldScript) -> dict[int, tuple[int, int]]:
    """assigned-sector dispatch: the grid is split into equal vertical bands,
    one per non-blocked brigade; the band order is shuffled by the seed."""
    active = [i for i, b in enumerate(script.brigades) if not b.blocked]
    if not active:
        return {}
    order = list(range(len(active)))
    random.Random(script.seed).shuffle(order)
    band = script.width / len(active)
    sectors = {}
    for slot, brigade_index in enumerate(active):
        k = order[slot]
        lo = int(k * band)
        hi = script.width if k == len(active) - 1 else int((k + 1) * band)
        sectors[brigade_index] = (lo, hi)
    return sectors


def _choose_target(script, state, brigade_index, sectors) -> int | None:
    bx = state.brigades[brigade_index].x
    by = state.brigades[brigade_index].y
    if script.strategy == "assigned-sector":
        lo, hi = sectors.get(brigade_index, (0, script.width))
        candidates = [
            i for i, f in enumerate(state.fires)
            if f.lit and lo <= script.fires[i].x < hi
        ]
    else:
        candidates = [i for i, f in enumerate(state.fires) if f.lit]
    if not candidates:
        return None
    return min(
        candidates,
        key=lambda i: (abs(script.fires[i].x - bx) + abs(script.fires[i].y - by), i),
    )


def step(state: WorldState, script: WorldScript, tick: int,
         sectors: dict | None = None) -> tuple[WorldState, list[DomainEvent]]:
    """Advance the world by one tick; returns the new state and the events
    emitted this tick (fires first, then brigades, each in index order)."""
    if sectors is None:
        sectors = _sector_assignment(script)
    ns = copy.deepcopy(state)
    prev_brigades = [(b.x, b.y, b.state) for b in state.brigades]
    nf = len(script.fires)
    changed = [False] * nf
    died = [False] * nf
    fought = [False] * nf

    for i, spec in enumerate(script.fires):
        fire = ns.fires[i]
        if spec.ignite_tick == tick and not fire.extinguished and fire.intensity == 0:
            fire.intensity = 1
            changed[i] = True

    for bi, bspec in enumerate(script.brigades):
        brigade = ns.brigades[bi]
        if bspec.blocked:
            brigade.state = "blocked"
        else:
            adjacent = [
                i for i, f in enumerate(ns.fires)
                if f.lit and max(abs(script.fires[i].x - brigade.x),
                                 abs(script.fires[i].y - brigade.y)) <= 1
            ]
            if adjacent:
                i = min(adjacent)
                fire = ns.fires[i]
                fire.intensity = max(0, fire.intensity - bspec.power)
                fought[i] = True
                if fire.intensity == 0:
                    fire.extinguished = True
                    died[i] = True
                else:
                    changed[i] = True
                brigade.state = "fighting"
            else:
                target = _choose_target(script, ns, bi, sectors)
                if target is None:
                    brigade.state = "idle"
                else:
                    tx, ty = script.fires[target].x, script.fires[target].y
                    brigade.x += (tx > brigade.x) - (tx < brigade.x)
                    brigade.y += (ty > brigade.y) - (ty < brigade.y)
                    brigade.state = "moving"

    for i, spec in enumerate(script.fires):
        fire = ns.fires[i]
        if fire.lit and not fought[i] and spec.ignite_tick < tick:
            fire.grow_timer += 1
            if fire.grow_timer >= GROWTH_PERIOD:
                fire.grow_timer = 0
                if fire.intensity < MAX_INTENSITY:
                    fire.intensity += 1
                    changed[i] = True

    events = []
    for i, spec in enumerate(script.fires):
        fire = ns.fires[i]
        if died[i]:
            payload = (("state", "extinguished"),)
        elif changed[i]:
            payload = (("intensity", INTENSITY_WORDS[fire.intensity]),)
        else:
            continue
        events.append(DomainEvent(tick=tick, kind="fire", id=str(i + 1),
                                  payload=payload, x=spec.x, y=spec.y))
    for bi, bspec in enumerate(script.brigades):
        brigade = ns.brigades[bi]
        if (brigade.x, brigade.y, brigade.state) != prev_brigades[bi]:
            events.append(DomainEvent(tick=tick, kind="fireBrigade", id=bspec.id,
                                      payload=(("state", brigade.state),),
                                      x=brigade.x, y=brigade.y))
    return ns, events


def run(script: WorldScript) -> list[DomainEvent]:
    """Execute the whole script; identical scripts produce bit-identical logs."""
    sectors = _sector_assignment(script)
    state = WorldState.initial(script)
    events: list[DomainEvent] = []
    for tick in range(script.ticks):
        state, tick_events = step(state, script, tick, sectors)
        events.extend(tick_events)
    return events
