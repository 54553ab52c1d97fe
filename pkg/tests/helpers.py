"""Independent oracles and instance generators shared by the test modules.

The oracles deliberately avoid the package's own clustering, election, and
accounting code paths: clustering is checked against fixpoint set merging,
election against a from-scratch argmin, and cost reports against a direct
re-summation of the raw trace. Distance terms are accumulated in the same
(sorted) order as the implementation so exact-tie cases stay exact.
"""

from __future__ import annotations

import math
import random

from sensegrid import Position, SensorNode, SensorType


def raw_distance(a: Position, b: Position) -> float:
    dx = a.x - b.x
    dy = a.y - b.y
    dz = a.z - b.z
    return math.sqrt(dx * dx + dy * dy + dz * dz)


def closure_oracle(
    sensors: list[SensorNode], threshold: float
) -> set[frozenset[str]]:
    """Transitive clustering by repeated all-pairs merging until fixpoint."""
    groups: list[list[SensorNode]] = [[s] for s in sensors]
    changed = True
    while changed:
        changed = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                if _should_merge(groups[i], groups[j], threshold):
                    groups[i] = groups[i] + groups[j]
                    del groups[j]
                    changed = True
                    break
            if changed:
                break
    return {frozenset(s.node_id for s in group) for group in groups}


def _should_merge(a: list[SensorNode], b: list[SensorNode], threshold: float) -> bool:
    for s in a:
        for t in b:
            if s.sensor_type is t.sensor_type and raw_distance(s.position, t.position) < threshold:
                return True
    return False


def medoid_oracle(members: tuple[str, ...], nodes: dict[str, SensorNode]) -> str:
    """Argmin of summed distances with smallest-id tie-break, from scratch."""
    ordered = sorted(members)
    sums = {}
    for candidate in ordered:
        total = 0.0
        for other in ordered:
            total += raw_distance(nodes[candidate].position, nodes[other].position)
        sums[candidate] = total
    return min(ordered, key=lambda m: (sums[m], m))


def resum_costs(trace) -> dict[str, float | int]:
    """Re-derive every cost component straight from the raw trace."""
    total_wireless = 0.0
    wireless_count = 0
    infra_count = 0
    for message in trace.messages:
        if message.medium == "wireless":
            wireless_count += 1
            total_wireless += message.wireless_distance
        else:
            infra_count += 1
    cloud_ops = sum(e.op_count for e in trace.compute_events if e.site == "cloud")
    node_ops = sum(e.op_count for e in trace.compute_events if e.site != "cloud")
    return {
        "total_wireless_distance": total_wireless,
        "wireless_message_count": wireless_count,
        "infra_message_count": infra_count,
        "cloud_op_count": cloud_ops,
        "node_op_count": node_ops,
    }


def random_instance(rng: random.Random, max_nodes: int = 50) -> list[SensorNode]:
    """A random topology with occasional duplicate positions for tie cases."""
    n = rng.randint(1, max_nodes)
    types = list(SensorType)
    sensors: list[SensorNode] = []
    for i in range(n):
        if sensors and rng.random() < 0.05:
            position = rng.choice(sensors).position
        else:
            position = Position(
                rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(0, 100)
            )
        sensors.append(SensorNode(f"N_{i:03d}", rng.choice(types), position))
    return sensors
