import dataclasses
import random

import pytest

from sensegrid import (
    CentricQuery,
    Cloud,
    CostParams,
    FLAT,
    Message,
    QCPS,
    RoutingError,
    Service,
    SimulationTrace,
    Workload,
    WorkloadError,
    builtin_testbed,
    compare_strategies,
    cost_of,
    distance,
    form_grids,
    generate_workload,
    route_sensor_request,
    route_user_query,
    run_scenario,
    serialize_trace,
)
from sensegrid.simulate import CLOUD_SITE, INFRASTRUCTURE, WIRELESS

from helpers import random_instance, resum_costs


@pytest.fixture(scope="module")
def testbed():
    return builtin_testbed()


@pytest.fixture(scope="module")
def testbed_grids(testbed):
    return form_grids(testbed.sensors, testbed.threshold)


def _wireless(trace):
    return [m for m in trace.messages if m.medium == WIRELESS]


def _infra(trace):
    return [m for m in trace.messages if m.medium == INFRASTRUCTURE]


FOUR_SERVICE_QUERY = CentricQuery("Q1", tuple(Service), (0, 0))


def test_qcps_single_tick_reporting(testbed):
    cfg = dataclasses.replace(testbed, duration_ticks=1)
    trace = run_scenario(cfg, Workload(), QCPS)
    wireless, infra = _wireless(trace), _infra(trace)
    assert len(wireless) == 16
    assert len(infra) == 16
    assert all(m.purpose == "report" for m in trace.messages)
    self_reports = [m for m in wireless if m.src == m.dst]
    assert {m.src for m in self_reports} == {"VS_3", "SS_4", "ES_3", "MS_1"}
    assert all(m.wireless_distance == 0.0 for m in self_reports)
    assert all(m.dst == CLOUD_SITE for m in infra)


def test_flat_single_query_polls_every_sensor(testbed):
    cfg = dataclasses.replace(testbed, duration_ticks=0)
    workload = Workload(queries=((0, FOUR_SERVICE_QUERY),))
    trace = run_scenario(cfg, workload, FLAT)
    assert len(_wireless(trace)) == 32  # 16 polls + 16 replies
    assert len(_infra(trace)) == 0
    polls = [m for m in trace.messages if m.purpose == "request"]
    replies = [m for m in trace.messages if m.purpose == "response"]
    assert len(polls) == len(replies) == 16
    # nothing was ever reported, so every section is a flagged absence
    (tick, report), = trace.answered
    assert not any(s.data_available for s in report.sections.values())


def test_empty_topology_empty_trace():
    cfg = dataclasses.replace(builtin_testbed(), sensors=(), duration_ticks=5)
    for strategy in (QCPS, FLAT):
        trace = run_scenario(cfg, Workload(), strategy)
        assert trace.messages == ()
        assert trace.compute_events == ()


def test_unknown_request_id_rejected(testbed):
    workload = Workload(requests=((0, "VS_1", "ghost"),))
    with pytest.raises(WorkloadError):
        run_scenario(testbed, workload, QCPS)


def test_route_sensor_request_path(testbed, testbed_grids):
    messages = route_sensor_request("VS_1", "ES_2", testbed_grids, testbed.by_id())
    assert [(m.src, m.dst, m.medium) for m in messages] == [
        ("VS_1", "VS_3", WIRELESS),
        ("VS_3", CLOUD_SITE, INFRASTRUCTURE),
        (CLOUD_SITE, "VS_3", INFRASTRUCTURE),
        ("VS_3", "VS_1", WIRELESS),
    ]
    total = sum(m.wireless_distance for m in messages)
    assert total == pytest.approx(99.70, abs=0.01)


def test_route_sensor_request_from_coordinator_is_free(testbed, testbed_grids):
    messages = route_sensor_request("VS_3", "MS_2", testbed_grids, testbed.by_id())
    assert sum(m.wireless_distance for m in messages) == 0.0


def test_route_sensor_request_unknown_id(testbed, testbed_grids):
    with pytest.raises(RoutingError):
        route_sensor_request("VS_1", "ghost", testbed_grids, testbed.by_id())


def test_flat_request_is_direct_round_trip(testbed):
    cfg = dataclasses.replace(testbed, duration_ticks=0)
    workload = Workload(requests=((0, "VS_1", "ES_2"),))
    trace = run_scenario(cfg, workload, FLAT)
    assert [(m.src, m.dst) for m in trace.messages] == [
        ("VS_1", "ES_2"),
        ("ES_2", "VS_1"),
    ]
    total = sum(m.wireless_distance for m in trace.messages)
    assert total == pytest.approx(204.72, abs=0.01)
    assert trace.compute_events == (trace.compute_events[0],)
    assert trace.compute_events[0].site == "ES_2"


def test_route_user_query_costs():
    cloud = Cloud()
    messages, events, report = route_user_query(FOUR_SERVICE_QUERY, cloud, 600.0)
    assert len(messages) == 2
    assert all(m.medium == INFRASTRUCTURE for m in messages)
    assert sum(m.wireless_distance for m in messages) == 0.0
    assert len(events) == 4
    assert all(e.site == CLOUD_SITE for e in events)

    single = CentricQuery("Q2", (Service.ENVIRONMENT,), (0, 0))
    messages, events, report = route_user_query(single, cloud, 600.0)
    assert len(messages) == 2
    assert len(events) == 1
    # store is empty: answered, but flagged unavailable
    assert not report.sections[Service.ENVIRONMENT].data_available


def test_qcps_queries_never_use_radio(testbed):
    workload = generate_workload(testbed, 5, 0)
    trace = run_scenario(testbed, workload, QCPS)
    query_msgs = [m for m in trace.messages if m.purpose in ("query", "answer")]
    assert len(query_msgs) == 10
    assert all(m.medium == INFRASTRUCTURE for m in query_msgs)


def test_cost_report_sites_by_strategy(testbed):
    workload = generate_workload(testbed, 3, 3)
    qcps_costs = cost_of(run_scenario(testbed, workload, QCPS), testbed.cost_params)
    flat_costs = cost_of(run_scenario(testbed, workload, FLAT), testbed.cost_params)
    assert qcps_costs.node_op_count == 0
    assert qcps_costs.cloud_op_count == 15  # 3 queries x 4 services + 3 requests
    assert flat_costs.cloud_op_count == 0
    assert flat_costs.node_op_count == 15


def test_cost_of_empty_trace(testbed):
    trace = SimulationTrace(QCPS, (), (), None, ())
    report = cost_of(trace, testbed.cost_params)
    assert report.total_wireless_distance == 0.0
    assert report.wireless_message_count == 0
    assert report.infra_message_count == 0
    assert report.monetized_total == 0.0


def test_cost_of_linear_combination():
    trace = SimulationTrace(
        QCPS,
        (Message(0, 0, "A", "B", WIRELESS, "report", 5.0),),
        (),
        None,
        (),
    )
    params = CostParams(
        wireless_cost_per_unit_distance=2.0, infra_message_cost=0.0, computation_op_cost=0.0
    )
    assert cost_of(trace, params).monetized_total == 10.0


def test_compare_default_scenario_direction(testbed):
    comparison = compare_strategies(testbed, generate_workload(testbed, 20, 10))
    assert comparison.qcps.total_wireless_distance < comparison.flat.total_wireless_distance
    assert comparison.qcps.node_op_count == 0
    assert comparison.flat.node_op_count > 0
    assert comparison.delta["total_wireless_distance"] < 0


def test_compare_empty_workload_all_zero(testbed):
    cfg = dataclasses.replace(testbed, duration_ticks=0)
    comparison = compare_strategies(cfg, Workload())
    for report in (comparison.qcps, comparison.flat):
        assert report.total_wireless_distance == 0.0
        assert report.monetized_total == 0.0
    assert all(v == 0 for v in comparison.delta.values())


def test_compare_single_request_anchor(testbed):
    cfg = dataclasses.replace(testbed, duration_ticks=0)
    comparison = compare_strategies(cfg, Workload(requests=((0, "VS_1", "ES_2"),)))
    assert comparison.qcps.total_wireless_distance == pytest.approx(99.70, abs=0.01)
    assert comparison.flat.total_wireless_distance == pytest.approx(204.72, abs=0.01)


def test_flat_costs_ignore_threshold(testbed):
    workload = generate_workload(testbed, 4, 4)
    baseline = cost_of(run_scenario(testbed, workload, FLAT), testbed.cost_params)
    for threshold in (0.001, 7.0, 350.0):
        cfg = dataclasses.replace(testbed, threshold=threshold)
        assert cost_of(run_scenario(cfg, workload, FLAT), cfg.cost_params) == baseline


def test_traces_are_deterministic(testbed):
    workload = generate_workload(testbed, 5, 5)
    for strategy in (QCPS, FLAT):
        first = serialize_trace(run_scenario(testbed, workload, strategy))
        second = serialize_trace(run_scenario(testbed, workload, strategy))
        assert first == second


def test_reports_identical_across_strategies(testbed):
    cfg = dataclasses.replace(testbed, duration_ticks=20)
    workload = generate_workload(cfg, 4, 0)
    qcps_answers = run_scenario(cfg, workload, QCPS).answered
    flat_answers = run_scenario(cfg, workload, FLAT).answered
    assert qcps_answers == flat_answers
    assert all(
        section.data_available
        for _, report in qcps_answers
        for section in report.sections.values()
    )


def test_cost_conservation_over_random_scenarios():
    rng = random.Random(60601)
    for _ in range(10):
        sensors = random_instance(rng, max_nodes=12)
        cfg = dataclasses.replace(
            builtin_testbed(),
            sensors=tuple(sensors),
            threshold=rng.uniform(10, 200),
            duration_ticks=rng.randint(0, 12),
            seed=rng.getrandbits(32),
        )
        n_queries = rng.randint(0, 4) if cfg.duration_ticks else 0
        n_requests = rng.randint(0, 4) if cfg.duration_ticks and len(sensors) > 1 else 0
        workload = generate_workload(cfg, n_queries, n_requests)
        for strategy in (QCPS, FLAT):
            trace = run_scenario(cfg, workload, strategy)
            report = cost_of(trace, cfg.cost_params)
            expected = resum_costs(trace)
            for metric, value in expected.items():
                assert getattr(report, metric) == value
            params = cfg.cost_params
            assert report.monetized_total == (
                params.wireless_cost_per_unit_distance * report.total_wireless_distance
                + params.infra_message_cost * report.infra_message_count
                + params.computation_op_cost
                * (report.cloud_op_count + report.node_op_count)
            )


def test_per_request_dominance():
    rng = random.Random(424242)
    checked = 0
    while checked < 25:
        sensors = random_instance(rng, max_nodes=16)
        if len(sensors) < 2:
            continue
        cfg = dataclasses.replace(
            builtin_testbed(),
            sensors=tuple(sensors),
            threshold=rng.uniform(5, 80),
            duration_ticks=0,
        )
        grids = form_grids(cfg.sensors, cfg.threshold)
        requester, target = rng.sample(sensors, 2)
        if grids.grid_for(requester.node_id) == grids.grid_for(target.node_id):
            continue
        coordinator = cfg.by_id()[grids.coordinator_of(requester.node_id)]
        if not (
            2 * distance(requester.position, coordinator.position)
            < 2 * distance(requester.position, target.position)
        ):
            continue
        workload = Workload(requests=((0, requester.node_id, target.node_id),))
        qcps_total = sum(
            m.wireless_distance for m in run_scenario(cfg, workload, QCPS).messages
        )
        flat_total = sum(
            m.wireless_distance for m in run_scenario(cfg, workload, FLAT).messages
        )
        assert qcps_total < flat_total
        checked += 1


def test_messages_ordered_and_unique(testbed):
    workload = generate_workload(testbed, 5, 5)
    for strategy in (QCPS, FLAT):
        trace = run_scenario(testbed, workload, strategy)
        ids = [m.msg_id for m in trace.messages]
        assert ids == sorted(ids)
        assert len(ids) == len(set(ids))
        keys = [(m.tick, m.msg_id) for m in trace.messages]
        assert keys == sorted(keys)
