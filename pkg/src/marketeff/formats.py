"""JSON/CSV documents for patterns, strategies, trajectories and reports.

Rationals always travel as strings (``"-2"``, ``"1/8"``), never as JSON
numbers, so a round trip is exact.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .core import DeterministicPattern, PatternError, ScenarioPattern, format_rational, to_rational, validate
from .strategy import TabulatedStrategy


class FormatError(ValueError):
    pass


def _rat(text, where: str) -> Fraction:
    if not isinstance(text, (str, int)) or isinstance(text, bool):
        raise FormatError(f"{where}: expected a rational string, got {text!r}")
    try:
        value = to_rational(text)
    except (ValueError, TypeError) as exc:
        raise FormatError(f"{where}: malformed rational {text!r}") from exc
    return value


def pattern_to_dict(pattern) -> dict:
    if isinstance(pattern, DeterministicPattern):
        return {"kind": "deterministic", "values": [format_rational(v) for v in pattern.values]}
    return {
        "kind": "scenario",
        "scenarios": [
            {"prob": format_rational(p), "values": [format_rational(v) for v in o]}
            for p, o in pattern.scenarios
        ],
    }


def pattern_from_dict(doc: dict):
    if not isinstance(doc, dict):
        raise FormatError("pattern document must be a JSON object")
    kind = doc.get("kind")
    if kind == "deterministic":
        values = doc.get("values")
        if not isinstance(values, list) or not values:
            raise FormatError("values: expected a non-empty list")
        return DeterministicPattern(tuple(_rat(v, f"values[{i}]") for i, v in enumerate(values)))
    if kind == "scenario":
        rows = doc.get("scenarios")
        if not isinstance(rows, list) or not rows:
            raise FormatError("scenarios: expected a non-empty list")
        parsed = []
        for j, row in enumerate(rows):
            if not isinstance(row, dict) or "prob" not in row or "values" not in row:
                raise FormatError(f"scenarios[{j}]: expected {{'prob', 'values'}}")
            vals = row["values"]
            if not isinstance(vals, list):
                raise FormatError(f"scenarios[{j}].values: expected a list")
            parsed.append((
                _rat(row["prob"], f"scenarios[{j}].prob"),
                tuple(_rat(v, f"scenarios[{j}].values[{i}]") for i, v in enumerate(vals)),
            ))
        pattern = ScenarioPattern(tuple(parsed))
        problems = validate(pattern)
        if problems:
            raise PatternError(problems)
        return pattern
    raise FormatError(f"kind: expected 'deterministic' or 'scenario', got {kind!r}")


def serialize_pattern(pattern, **extra) -> str:
    doc = pattern_to_dict(pattern)
    doc.update(extra)
    return json.dumps(doc, sort_keys=False)


def parse_pattern(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return pattern_from_dict(doc)


def strategy_to_dict(strategy: TabulatedStrategy) -> dict:
    return {
        "memory": strategy.memory,
        "entries": [
            {"context": [format_rational(v) for v in ctx], "action": action}
            for ctx, action in strategy.entries()
        ],
    }


def strategy_from_dict(doc: dict) -> TabulatedStrategy:
    try:
        memory = doc["memory"]
        entries = doc["entries"]
    except (KeyError, TypeError) as exc:
        raise FormatError("strategy document needs 'memory' and 'entries'") from exc
    table = {}
    for j, entry in enumerate(entries):
        ctx = tuple(_rat(v, f"entries[{j}].context[{i}]") for i, v in enumerate(entry["context"]))
        table[ctx] = entry["action"]
    try:
        return TabulatedStrategy(memory, table)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def serialize_strategy(strategy: TabulatedStrategy) -> str:
    return json.dumps(strategy_to_dict(strategy))


def parse_strategy(text: str) -> TabulatedStrategy:
    return strategy_from_dict(json.loads(text))


def _rows_of(pattern):
    if isinstance(pattern, DeterministicPattern):
        return [(None, pattern.values)]
    return [(j, o) for j, (_, o) in enumerate(pattern.scenarios)]


def emit_trajectory_csv(trajectory) -> str:
    """Rows ``step,position,value`` (plus ``scenario`` for scenario patterns); step 0 is the start."""
    buf = io.StringIO()
    states = trajectory.patterns if trajectory is not None else []
    scenario = any(isinstance(s, ScenarioPattern) for s in states)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["step", "scenario", "position", "value"] if scenario else ["step", "position", "value"])
    if trajectory is None or not trajectory.steps:
        return buf.getvalue()
    for step, state in enumerate(states):
        for j, values in _rows_of(state):
            for pos, v in enumerate(values, start=1):
                row = [step, pos, format_rational(v)]
                if scenario:
                    row.insert(1, j)
                writer.writerow(row)
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, (DeterministicPattern, ScenarioPattern)):
        return pattern_to_dict(obj)
    if isinstance(obj, TabulatedStrategy):
        return strategy_to_dict(obj)
    if hasattr(obj, "__dataclass_fields__"):
        return {name: _jsonable(getattr(obj, name)) for name in obj.__dataclass_fields__}
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, Fraction) else format_rational(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2)


def trajectory_to_dict(trajectory, bubble) -> dict:
    return {
        "initial": trajectory.initial,
        "steps": [
            {
                "memory": s.strategy.memory,
                "strategy": s.strategy,
                "gain": s.gain,
                "after": s.after,
                "amplitude_before": s.amplitude_before,
                "amplitude_after": s.amplitude_after,
            }
            for s in trajectory.steps
        ],
        "final": trajectory.final,
        "terminal": str(trajectory.terminal),
        "bubble": {
            "amplitudes": list(bubble.amplitudes),
            "peak_ratio": bubble.peak_ratio,
            "flagged": bubble.flagged,
            "theta": bubble.theta,
        },
        "notes": list(trajectory.notes),
    }


def sweep_to_dict(report) -> dict:
    hist = report.ratio_histogram()
    return {
        "config": {
            "count": report.config.count,
            "pattern_length": report.config.pattern_length,
            "value_set": list(report.config.value_set),
            "memory": report.config.memory,
            "steps": report.config.steps,
            "theta": report.config.theta,
            "seed": report.config.seed,
        },
        "rows": [
            {"index": r.index, "seed": r.seed, "flagged": r.flagged,
             "peak_ratio": r.peak_ratio, "terminal": r.terminal}
            for r in report.rows
        ],
        "aggregate": {
            "flagged": report.flagged_count,
            "count": len(report.rows),
            "frequency": report.frequency,
            "ratio_histogram": [{"peak_ratio": k, "count": v} for k, v in hist.items()],
        },
    }


def emit_sweep_csv(report) -> str:
    """``seed,flagged,peak_ratio,terminal`` per row, then a ``#`` aggregate footer."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["seed", "flagged", "peak_ratio", "terminal"])
    for r in report.rows:
        ratio = "" if r.peak_ratio is None else format_rational(r.peak_ratio)
        writer.writerow([r.seed, int(r.flagged), ratio, r.terminal])
    buf.write(f"# flagged={report.flagged_count} count={len(report.rows)} "
              f"frequency={format_rational(report.frequency)}\n")
    return buf.getvalue()


def emit_report(report, fmt: str = "json") -> str:
    """Serialise any report object; sweeps also have a CSV form."""
    from .analytics import SweepReport

    if isinstance(report, SweepReport):
        return emit_sweep_csv(report) if fmt == "csv" else to_json(sweep_to_dict(report))
    if fmt == "csv":
        raise FormatError(f"no CSV form for {type(report).__name__}")
    return to_json(report)
