"""Logical-clock simulation of the two communication strategies.

qcps: sensors are clustered into grids at tick 0; every tick each sensor
pushes its reading wirelessly to its grid coordinator, which forwards it
over infrastructure (via its co-located base station) to the cloud. User
queries and inter-sensor requests are served from the cloud, so query
traffic never touches the radio medium and all computation happens in the
cloud.

flat: no grids and no cloud. A gateway at the centroid of all sensor
positions answers each query by polling every sensor of the requested
services, one wireless round trip per sensor per tick of the query window
(there is no store, so history is fetched tick by tick). Inter-sensor
requests travel as direct radio round trips, and all computation is
attributed to node sites.

Within a tick, events are processed as: reports, then queries, then
requests, each in input order. Traces are a pure function of
(config, workload, strategy).
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field

from .cloud import (
    CentricQuery,
    Cloud,
    CongestionThresholds,
    EstimationReport,
    SERVICE_SENSOR_TYPE,
    answer_centric_query,
)
from .errors import ConfigError, RoutingError
from .grids import GridSet, form_grids
from .topology import CostParams, Position, ScenarioConfig, SensorNode, distance
from .workload import DEFAULT_RANGES, ReadingRanges, Workload, generate_reading, validate_workload

QCPS = "qcps"
FLAT = "flat"
STRATEGIES = (QCPS, FLAT)

WIRELESS = "wireless"
INFRASTRUCTURE = "infrastructure"

CLOUD_SITE = "cloud"
USER_SITE = "user"
GATEWAY_SITE = "gateway"


@dataclass(frozen=True)
class Message:
    """One transmission; wireless messages carry the radio distance paid."""

    msg_id: int
    tick: int
    src: str
    dst: str
    medium: str
    purpose: str  # report | request | response | query | answer
    wireless_distance: float = 0.0


@dataclass(frozen=True)
class ComputeEvent:
    tick: int
    site: str
    op_count: int = 1


@dataclass(frozen=True)
class SimulationTrace:
    strategy: str
    messages: tuple[Message, ...]
    compute_events: tuple[ComputeEvent, ...]
    grid_set: GridSet | None
    answered: tuple[tuple[int, EstimationReport], ...]


@dataclass(frozen=True)
class CostReport:
    strategy: str
    total_wireless_distance: float
    wireless_message_count: int
    infra_message_count: int
    cloud_op_count: int
    node_op_count: int
    monetized_total: float


@dataclass(frozen=True)
class CostComparison:
    qcps: CostReport
    flat: CostReport
    delta: dict[str, float] = field(default_factory=dict)


class _MessageLog:
    """Appends messages with sequential ids on a shared counter."""

    def __init__(self) -> None:
        self.messages: list[Message] = []

    def send(
        self, tick: int, src: str, dst: str, medium: str, purpose: str, dist: float = 0.0
    ) -> None:
        self.messages.append(
            Message(
                msg_id=len(self.messages),
                tick=tick,
                src=src,
                dst=dst,
                medium=medium,
                purpose=purpose,
                wireless_distance=dist if medium == WIRELESS else 0.0,
            )
        )


def route_sensor_request(
    requester: str,
    target: str,
    grids: GridSet,
    sensors_by_id: dict[str, SensorNode],
    tick: int = 0,
    first_msg_id: int = 0,
) -> list[Message]:
    """The qcps message path for one sensor asking for another's data.

    The requester talks wirelessly to its own coordinator, which relays over
    infrastructure to the cloud and back; the target sensor is never
    contacted. A requester that is itself the coordinator pays zero radio
    distance (self-hops). The cloud lookup itself is accounted by the caller
    as one cloud operation.
    """
    for node_id in (requester, target):
        if node_id not in sensors_by_id:
            raise RoutingError(f"unknown sensor {node_id!r}")
        try:
            grids.grid_for(node_id)
        except ConfigError as exc:
            raise RoutingError(str(exc)) from None
    coordinator = grids.coordinator_of(requester)
    hop = distance(
        sensors_by_id[requester].position, sensors_by_id[coordinator].position
    )
    legs = (
        (requester, coordinator, WIRELESS, "request", hop),
        (coordinator, CLOUD_SITE, INFRASTRUCTURE, "request", 0.0),
        (CLOUD_SITE, coordinator, INFRASTRUCTURE, "response", 0.0),
        (coordinator, requester, WIRELESS, "response", hop),
    )
    return [
        Message(first_msg_id + i, tick, src, dst, medium, purpose, dist)
        for i, (src, dst, medium, purpose, dist) in enumerate(legs)
    ]


def route_user_query(
    query: CentricQuery,
    cloud: Cloud,
    segment_length: float,
    thresholds: CongestionThresholds = CongestionThresholds(),
    tick: int = 0,
    first_msg_id: int = 0,
) -> tuple[list[Message], list[ComputeEvent], EstimationReport]:
    """The qcps path for a user query: two infrastructure messages framing
    one cloud computation per requested service."""
    messages = [
        Message(first_msg_id, tick, USER_SITE, CLOUD_SITE, INFRASTRUCTURE, "query"),
        Message(first_msg_id + 1, tick, CLOUD_SITE, USER_SITE, INFRASTRUCTURE, "answer"),
    ]
    events = [ComputeEvent(tick, CLOUD_SITE) for _ in query.requested_services]
    report = answer_centric_query(query, cloud, segment_length, thresholds)
    return messages, events, report


def _ticks_to_process(cfg: ScenarioConfig, workload: Workload) -> range | list[int]:
    if cfg.duration_ticks > 0:
        return range(cfg.duration_ticks)
    if workload.queries or workload.requests:
        return [0]
    return []


def _events_by_tick(workload: Workload):
    queries: dict[int, list[CentricQuery]] = {}
    for tick, query in workload.queries:
        queries.setdefault(tick, []).append(query)
    requests: dict[int, list[tuple[str, str]]] = {}
    for tick, requester, target in workload.requests:
        requests.setdefault(tick, []).append((requester, target))
    return queries, requests


def run_scenario(
    cfg: ScenarioConfig,
    workload: Workload,
    strategy: str,
    thresholds: CongestionThresholds = CongestionThresholds(),
    ranges: ReadingRanges = DEFAULT_RANGES,
) -> SimulationTrace:
    """Execute one strategy over the workload and return the full trace."""
    if strategy not in STRATEGIES:
        raise ConfigError(f"strategy: expected one of {STRATEGIES}, got {strategy!r}")
    validate_workload(workload, cfg)
    if strategy == QCPS:
        return _run_qcps(cfg, workload, thresholds, ranges)
    return _run_flat(cfg, workload, thresholds, ranges)


def _run_qcps(
    cfg: ScenarioConfig,
    workload: Workload,
    thresholds: CongestionThresholds,
    ranges: ReadingRanges,
) -> SimulationTrace:
    grids = form_grids(cfg.sensors, cfg.threshold, cfg.coordinator_overrides)
    by_id = cfg.by_id()
    coordinator_of = {
        member: grid.coordinator for grid in grids.grids for member in grid.members
    }
    cloud = Cloud()
    log = _MessageLog()
    events: list[ComputeEvent] = []
    answered: list[tuple[int, EstimationReport]] = []
    queries_at, requests_at = _events_by_tick(workload)

    for tick in _ticks_to_process(cfg, workload):
        if tick < cfg.duration_ticks:
            for sensor in cfg.sensors:
                coordinator = coordinator_of[sensor.node_id]
                hop = distance(sensor.position, by_id[coordinator].position)
                log.send(tick, sensor.node_id, coordinator, WIRELESS, "report", hop)
                log.send(tick, coordinator, CLOUD_SITE, INFRASTRUCTURE, "report")
                cloud.ingest(generate_reading(sensor, tick, cfg.seed, ranges))
        for query in queries_at.get(tick, ()):
            messages, query_events, report = route_user_query(
                query,
                cloud,
                cfg.segment_length,
                thresholds,
                tick=tick,
                first_msg_id=len(log.messages),
            )
            log.messages.extend(messages)
            events.extend(query_events)
            answered.append((tick, report))
        for requester, target in requests_at.get(tick, ()):
            log.messages.extend(
                route_sensor_request(
                    requester, target, grids, by_id,
                    tick=tick, first_msg_id=len(log.messages),
                )
            )
            events.append(ComputeEvent(tick, CLOUD_SITE))

    return SimulationTrace(
        strategy=QCPS,
        messages=tuple(log.messages),
        compute_events=tuple(events),
        grid_set=grids,
        answered=tuple(answered),
    )


def _gateway_position(sensors: tuple[SensorNode, ...]) -> Position:
    return Position(
        statistics.fmean(s.position.x for s in sensors),
        statistics.fmean(s.position.y for s in sensors),
        statistics.fmean(s.position.z for s in sensors),
    )


def _run_flat(
    cfg: ScenarioConfig,
    workload: Workload,
    thresholds: CongestionThresholds,
    ranges: ReadingRanges,
) -> SimulationTrace:
    by_id = cfg.by_id()
    gateway_distance: dict[str, float] = {}
    if cfg.sensors:
        gateway = _gateway_position(cfg.sensors)
        gateway_distance = {
            s.node_id: distance(gateway, s.position) for s in cfg.sensors
        }
    log = _MessageLog()
    events: list[ComputeEvent] = []
    answered: list[tuple[int, EstimationReport]] = []
    queries_at, requests_at = _events_by_tick(workload)
    last_sensed = cfg.duration_ticks - 1

    for tick in _ticks_to_process(cfg, workload):
        for query in queries_at.get(tick, ()):
            relevant_types = {
                SERVICE_SENSOR_TYPE[service] for service in query.requested_services
            }
            polled = [s for s in cfg.sensors if s.sensor_type in relevant_types]
            start, end = query.window
            for window_tick in range(start, end + 1):
                for sensor in polled:
                    hop = gateway_distance[sensor.node_id]
                    log.send(
                        tick, GATEWAY_SITE, sensor.node_id, WIRELESS, "request", hop
                    )
                    log.send(
                        tick, sensor.node_id, GATEWAY_SITE, WIRELESS, "response", hop
                    )
            events.extend(ComputeEvent(tick, GATEWAY_SITE) for _ in query.requested_services)
            # aggregate whatever the polled sensors have actually sensed so far
            scratch = Cloud()
            for window_tick in range(start, min(end, tick, last_sensed) + 1):
                for sensor in polled:
                    scratch.ingest(
                        generate_reading(sensor, window_tick, cfg.seed, ranges)
                    )
            answered.append(
                (
                    tick,
                    answer_centric_query(query, scratch, cfg.segment_length, thresholds),
                )
            )
        for requester, target in requests_at.get(tick, ()):
            hop = distance(by_id[requester].position, by_id[target].position)
            log.send(tick, requester, target, WIRELESS, "request", hop)
            log.send(tick, target, requester, WIRELESS, "response", hop)
            events.append(ComputeEvent(tick, target))

    return SimulationTrace(
        strategy=FLAT,
        messages=tuple(log.messages),
        compute_events=tuple(events),
        grid_set=None,
        answered=tuple(answered),
    )


def cost_of(trace: SimulationTrace, params: CostParams) -> CostReport:
    """Sum a trace into its cost components plus the monetized total."""
    total_wireless = 0.0
    wireless_count = 0
    infra_count = 0
    for message in trace.messages:
        if message.medium == WIRELESS:
            wireless_count += 1
            total_wireless += message.wireless_distance
        else:
            infra_count += 1
    cloud_ops = 0
    node_ops = 0
    for event in trace.compute_events:
        if event.site == CLOUD_SITE:
            cloud_ops += event.op_count
        else:
            node_ops += event.op_count
    monetized = (
        params.wireless_cost_per_unit_distance * total_wireless
        + params.infra_message_cost * infra_count
        + params.computation_op_cost * (cloud_ops + node_ops)
    )
    return CostReport(
        strategy=trace.strategy,
        total_wireless_distance=total_wireless,
        wireless_message_count=wireless_count,
        infra_message_count=infra_count,
        cloud_op_count=cloud_ops,
        node_op_count=node_ops,
        monetized_total=monetized,
    )


COST_METRICS = (
    "total_wireless_distance",
    "wireless_message_count",
    "infra_message_count",
    "cloud_op_count",
    "node_op_count",
    "monetized_total",
)


def compare_strategies(
    cfg: ScenarioConfig,
    workload: Workload,
    thresholds: CongestionThresholds = CongestionThresholds(),
    ranges: ReadingRanges = DEFAULT_RANGES,
) -> CostComparison:
    """Run both strategies on the identical workload; delta is qcps minus flat,
    so a negative entry means the grid strategy reduced that metric."""
    qcps_trace = run_scenario(cfg, workload, QCPS, thresholds, ranges)
    flat_trace = run_scenario(cfg, workload, FLAT, thresholds, ranges)
    qcps_report = cost_of(qcps_trace, cfg.cost_params)
    flat_report = cost_of(flat_trace, cfg.cost_params)
    delta = {
        metric: getattr(qcps_report, metric) - getattr(flat_report, metric)
        for metric in COST_METRICS
    }
    return CostComparison(qcps=qcps_report, flat=flat_report, delta=delta)
