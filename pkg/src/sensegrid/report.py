"""Canonical report serialization.

Reports must be byte-identical across runs and platforms, so JSON is
emitted by a small writer of our own: keys sorted, floats fixed at six
decimal places, no locale or dict-order dependence anywhere.
"""

from __future__ import annotations

import io
import json

from .cloud import EstimationReport
from .grids import GridSet
from .simulate import COST_METRICS, CostComparison, CostReport, SimulationTrace
from .topology import ScenarioConfig

TOOL_VERSION = "0.1.0"


def _write_canonical(value, out: io.StringIO, indent: int) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.write("{}")
            return
        out.write("{\n")
        keys = sorted(value)
        for i, key in enumerate(keys):
            out.write(f'{pad}  {json.dumps(str(key))}: ')
            _write_canonical(value[key], out, indent + 1)
            out.write(",\n" if i < len(keys) - 1 else "\n")
        out.write(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.write("[]")
            return
        out.write("[\n")
        for i, item in enumerate(value):
            out.write(pad + "  ")
            _write_canonical(item, out, indent + 1)
            out.write(",\n" if i < len(value) - 1 else "\n")
        out.write(pad + "]")
    elif isinstance(value, bool):
        out.write("true" if value else "false")
    elif isinstance(value, int):
        out.write(str(value))
    elif isinstance(value, float):
        if value == 0:
            value = 0.0  # never emit -0.000000
        out.write(format(value, ".6f"))
    elif isinstance(value, str):
        out.write(json.dumps(value))
    elif value is None:
        out.write("null")
    else:
        raise TypeError(f"cannot canonicalize {type(value).__name__}")


def canonical_json(value) -> str:
    out = io.StringIO()
    _write_canonical(value, out, 0)
    out.write("\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# Dict views of the domain types
# ---------------------------------------------------------------------------

def config_dict(cfg: ScenarioConfig) -> dict:
    payload = {
        "sensors": [
            {
                "id": s.node_id,
                "type": s.sensor_type.value,
                "x": s.position.x,
                "y": s.position.y,
                "z": s.position.z,
            }
            for s in cfg.sensors
        ],
        "threshold": cfg.threshold,
        "cost_params": {
            "wireless_cost_per_unit_distance": cfg.cost_params.wireless_cost_per_unit_distance,
            "infra_message_cost": cfg.cost_params.infra_message_cost,
            "computation_op_cost": cfg.cost_params.computation_op_cost,
        },
        "segment_length": cfg.segment_length,
        "duration_ticks": cfg.duration_ticks,
        "seed": cfg.seed,
    }
    if cfg.coordinator_overrides:
        payload["coordinator_overrides"] = {
            t.value: node_id for t, node_id in cfg.coordinator_overrides.items()
        }
    return payload


def gridset_list(grids: GridSet) -> list[dict]:
    return [
        {
            "grid_id": g.grid_id,
            "type": g.sensor_type.value,
            "members": list(g.members),
            "coordinator": g.coordinator,
            "election": g.election,
        }
        for g in grids.grids
    ]


def cost_dict(report: CostReport) -> dict:
    return {metric: getattr(report, metric) for metric in COST_METRICS}


def estimation_report_dict(report: EstimationReport) -> dict:
    sections = {}
    for service, section in report.sections.items():
        entry = {"data_available": section.data_available}
        if section.data_available:
            for name, value in vars(section).items():
                if name != "data_available" and value is not None:
                    entry[name] = value
        sections[service.value] = entry
    return {"query_id": report.query_id, "sections": sections}


def trace_dict(trace: SimulationTrace) -> dict:
    return {
        "strategy": trace.strategy,
        "messages": [
            {
                "msg_id": m.msg_id,
                "tick": m.tick,
                "src": m.src,
                "dst": m.dst,
                "medium": m.medium,
                "purpose": m.purpose,
                "wireless_distance": m.wireless_distance,
            }
            for m in trace.messages
        ],
        "compute_events": [
            {"tick": e.tick, "site": e.site, "op_count": e.op_count}
            for e in trace.compute_events
        ],
        "grids": gridset_list(trace.grid_set) if trace.grid_set is not None else None,
        "reports": [
            dict(estimation_report_dict(r), tick=tick) for tick, r in trace.answered
        ],
    }


def serialize_trace(trace: SimulationTrace) -> str:
    return canonical_json(trace_dict(trace))


def build_run_report(
    cfg: ScenarioConfig,
    grids: GridSet,
    costs: dict[str, CostReport],
    answered: tuple[tuple[int, EstimationReport], ...],
) -> dict:
    return {
        "config": config_dict(cfg),
        "grids": gridset_list(grids),
        "costs": {strategy: cost_dict(r) for strategy, r in costs.items()},
        "reports": [
            dict(estimation_report_dict(r), tick=tick) for tick, r in answered
        ],
        "version": TOOL_VERSION,
        "seed": cfg.seed,
    }


# ---------------------------------------------------------------------------
# CSV and table renderings
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".6f")
    return str(value)


def cost_csv(costs: dict[str, CostReport]) -> str:
    lines = ["strategy," + ",".join(COST_METRICS)]
    for strategy in sorted(costs):
        report = costs[strategy]
        lines.append(
            strategy + "," + ",".join(_fmt(getattr(report, m)) for m in COST_METRICS)
        )
    return "\n".join(lines) + "\n"


def comparison_dict(comparison: CostComparison) -> dict:
    return {
        "qcps": cost_dict(comparison.qcps),
        "flat": cost_dict(comparison.flat),
        "delta": dict(comparison.delta),
    }


def comparison_csv(comparison: CostComparison) -> str:
    lines = ["metric,qcps,flat,delta,effect"]
    for metric in COST_METRICS:
        delta = comparison.delta[metric]
        effect = "Reduced" if delta < 0 else ("Increased" if delta > 0 else "Unchanged")
        lines.append(
            ",".join(
                [
                    metric,
                    _fmt(getattr(comparison.qcps, metric)),
                    _fmt(getattr(comparison.flat, metric)),
                    _fmt(delta),
                    effect,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def comparison_table(comparison: CostComparison) -> str:
    width = max(len(m) for m in COST_METRICS)
    lines = [
        f"{'metric':<{width}}  {'qcps':>18}  {'flat':>18}  {'delta':>18}  effect"
    ]
    for metric in COST_METRICS:
        delta = comparison.delta[metric]
        effect = "Reduced" if delta < 0 else ("Increased" if delta > 0 else "Unchanged")
        lines.append(
            f"{metric:<{width}}  "
            f"{_fmt(getattr(comparison.qcps, metric)):>18}  "
            f"{_fmt(getattr(comparison.flat, metric)):>18}  "
            f"{_fmt(delta):>18}  {effect}"
        )
    return "\n".join(lines) + "\n"
