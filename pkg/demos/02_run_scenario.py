"""
Running a scenario and reading the trace
========================================

A run is fully deterministic: readings come from streams keyed by
(seed, sensor, tick), so the same scenario always produces byte-identical
traces. Here we run the grid strategy for ten ticks with a couple of
queries and requests, then poke around in what came out.
"""

import dataclasses

from sensegrid import QCPS, builtin_testbed, cost_of, generate_workload, run_scenario

cfg = dataclasses.replace(builtin_testbed(), duration_ticks=10)
workload = generate_workload(cfg, n_queries=2, n_requests=2)
trace = run_scenario(cfg, workload, QCPS)

print(f"messages: {len(trace.messages)}, compute events: {len(trace.compute_events)}")

# The first few messages: every tick each sensor reports to its coordinator
# (wireless), which forwards to the cloud (infrastructure).
for message in trace.messages[:6]:
    print(
        f"  t={message.tick} {message.src:>7} -> {message.dst:<7} "
        f"{message.medium:<14} {message.purpose:<8} dist={message.wireless_distance:.3f}"
    )

# Queries are answered from the cloud store; one section per service.
tick, report = trace.answered[0]
print(f"\nquery {report.query_id} answered at tick {tick}:")
for service, section in report.sections.items():
    print(f"  {service.value}: {section}")

# And the whole trace rolls up into a cost report.
costs = cost_of(trace, cfg.cost_params)
print(
    f"\ncosts: wireless {costs.total_wireless_distance:.2f} distance-units over "
    f"{costs.wireless_message_count} messages, {costs.infra_message_count} infra "
    f"messages, {costs.cloud_op_count} cloud ops, total {costs.monetized_total:.2f}"
)
