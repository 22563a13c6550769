"""Command-line front end: simulate, capture, assess.

Exit codes: 0 success, 2 script/IO or option errors, 3 capture errors,
4 assessing against an empty scenario base.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import assessment, perception, report, store, world
from .errors import (
    CaptureError,
    ConfigurationError,
    ScenarioFormatError,
    ScriptError,
    SitAssessError,
)
from .resources import bundled_path

EXIT_USAGE = 2
EXIT_CAPTURE = 3
EXIT_EMPTY_BASE = 4


def _resolve_script(name_or_path: str) -> Path:
    path = Path(name_or_path)
    if path.exists():
        return path
    try:
        return bundled_path(f"{name_or_path}.json")
    except FileNotFoundError:
        raise ScriptError(f"script not found: {name_or_path}")


def _load_domain_config(path: str | None) -> perception.DomainConfig:
    if path is None:
        return perception.default_config()
    return perception.DomainConfig.from_file(path)


def cmd_simulate(args) -> int:
    script = world.load_script(_resolve_script(args.script))
    events = world.run(script)
    perception.write_event_log(events, args.out)
    print(f"wrote {len(events)} events to {args.out}")
    return 0


def cmd_capture(args) -> int:
    config = _load_domain_config(args.domain_config)
    events = perception.read_event_log(args.events)
    snapshot = perception.snapshot_at(events, config, args.tick)
    groups_doc = json.loads(Path(args.groups).read_text())
    if not isinstance(groups_doc, dict):
        raise CaptureError("groups file must be a JSON object of name -> agent id list")
    groups = [(name, list(ids)) for name, ids in groups_doc.items()]
    scenario = store.capture_scenario(snapshot, groups, args.name)
    base = store.load(args.base) if Path(args.base).exists() else store.ScenarioBase()
    if any(s.name == args.name for s in base.scenarios):
        raise CaptureError(f"scenario name {args.name!r} already in base")
    store.save(base.with_scenario(scenario), args.base)
    print(f"captured scenario {args.name!r} at tick {snapshot.tick} "
          f"({len(scenario.clusters)} clusters) into {args.base}")
    return 0


def cmd_assess(args) -> int:
    config = _load_domain_config(args.domain_config)
    events = perception.read_event_log(args.events)
    base = store.load(args.base)
    if not base.scenarios:
        print(f"error: scenario base {args.base} is empty", file=sys.stderr)
        return EXIT_EMPTY_BASE
    max_tick = max((ev.tick for ev in events), default=0)
    if args.every is not None:
        ticks = list(range(0, max_tick + 1, args.every))
    elif args.tick:
        ticks = sorted(set(args.tick))
    else:
        ticks = [max_tick]
    snapshots = {t: s for t, s in perception.replay(events, config, max(ticks))}
    tick_dicts = []
    sections = []
    for tick in ticks:
        snapshot = snapshots[tick]
        reports = assessment.select_covering(
            assessment.assess(snapshot, base), snapshot, theta=args.theta
        )
        sections.append(report.format_tick_report(snapshot, reports, args.theta))
        tick_dicts.append(report.tick_report_dict(snapshot, reports, args.theta))
    print("\n\n".join(sections))
    if args.out:
        report.write_json_report(tick_dicts, args.out)
        figure_path = Path(args.out).with_suffix(".png")
        report.render_figure(tick_dicts, figure_path)
        print(f"\nwrote JSON report to {args.out} and figure to {figure_path}",
              file=sys.stderr)
    return 0


def _theta(text: str) -> float:
    value = float(text)
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"theta must lie in (0, 1], got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sitassess",
                                     description="Situation assessment engine and toy disaster simulator")
    parser.add_argument("-v", "--verbose", action="store_true", help="enable debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a world script and write its event log")
    p_sim.add_argument("--script", required=True,
                       help="script path or bundled name (paper_phase1, paper_phase2_variant)")
    p_sim.add_argument("--out", required=True, help="event log output path")
    p_sim.set_defaults(func=cmd_simulate)

    p_cap = sub.add_parser("capture", help="capture a scenario from a replayed snapshot")
    p_cap.add_argument("--events", required=True)
    p_cap.add_argument("--tick", type=int, required=True)
    p_cap.add_argument("--groups", required=True,
                       help="JSON object mapping cluster names to agent id lists")
    p_cap.add_argument("--base", required=True, help="scenario base file (created if missing)")
    p_cap.add_argument("--name", required=True, help="name of the new scenario")
    p_cap.add_argument("--domain-config", default=None)
    p_cap.set_defaults(func=cmd_capture)

    p_ass = sub.add_parser("assess", help="replay events and rank scenarios against snapshots")
    p_ass.add_argument("--events", required=True)
    p_ass.add_argument("--base", required=True)
    p_ass.add_argument("--tick", type=int, action="append",
                       help="tick to assess (repeatable; default: last tick)")
    p_ass.add_argument("--every", type=int, default=None,
                       help="assess every K ticks from 0 through the last tick")
    p_ass.add_argument("--theta", type=_theta, default=0.9,
                       help="coverage threshold in (0, 1] (default 0.9)")
    p_ass.add_argument("--domain-config", default=None)
    p_ass.add_argument("--out", default=None,
                       help="JSON report path; a relevance figure is written alongside")
    p_ass.set_defaults(func=cmd_assess)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if getattr(args, "every", None) is not None and args.every < 1:
        print("error: --every must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CaptureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPTURE
    except (ScriptError, ScenarioFormatError, ConfigurationError, SitAssessError,
            OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
