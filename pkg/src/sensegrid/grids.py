"""Threshold clustering of same-type sensors and coordinator election.

Two same-type sensors belong to the same grid when they are chained by
pairwise distances strictly below the threshold (connected components of
the sub-threshold graph). Each grid elects its medoid as coordinator
unless an override pins a specific member.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, OverrideError
from .topology import SensorNode, SensorType, distance

MEDOID = "medoid"
OVERRIDDEN = "overridden"


@dataclass(frozen=True)
class Grid:
    """A type-homogeneous cluster; grid_id is its lowest member id."""

    grid_id: str
    sensor_type: SensorType
    members: tuple[str, ...]
    coordinator: str
    election: str = MEDOID

    def __post_init__(self) -> None:
        if not self.members:
            raise ConfigError("grid members must be non-empty")
        if self.coordinator not in self.members:
            raise ConfigError(
                f"grid {self.grid_id}: coordinator {self.coordinator!r} is not a member"
            )


@dataclass(frozen=True)
class GridSet:
    grids: tuple[Grid, ...]
    _grid_by_member: dict[str, Grid] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        for grid in self.grids:
            for member in grid.members:
                if member in self._grid_by_member:
                    raise ConfigError(f"node {member!r} appears in more than one grid")
                self._grid_by_member[member] = grid

    def grid_for(self, node_id: str) -> Grid:
        try:
            return self._grid_by_member[node_id]
        except KeyError:
            raise ConfigError(f"node {node_id!r} is not covered by this grid set") from None

    def coordinator_of(self, node_id: str) -> str:
        return self.grid_for(node_id).coordinator

    def member_ids(self) -> frozenset[str]:
        return frozenset(self._grid_by_member)


class _UnionFind:
    """Union by rank with path compression over integer indices."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, u: int) -> int:
        root = u
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[u] != root:
            self.parent[u], u = root, self.parent[u]
        return root

    def union(self, u: int, v: int) -> None:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return
        if self.rank[ru] < self.rank[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        if self.rank[ru] == self.rank[rv]:
            self.rank[ru] += 1


def _distance_matrix(sensors: list[SensorNode]) -> np.ndarray:
    pos = np.array([(s.position.x, s.position.y, s.position.z) for s in sensors])
    diff = pos[:, None, :] - pos[None, :, :]
    sq = diff * diff
    # summed component-wise to round exactly like the scalar distance()
    return np.sqrt(sq[..., 0] + sq[..., 1] + sq[..., 2])


def form_grids(
    sensors: list[SensorNode] | tuple[SensorNode, ...],
    threshold: float,
    overrides: dict[SensorType, str] | None = None,
) -> GridSet:
    """Partition sensors into grids and elect a coordinator for each.

    Edges join same-type pairs with distance strictly below the threshold;
    grids are the connected components, so chained neighbours merge even
    when their direct distance exceeds the threshold. A sensor with no
    qualifying neighbour forms a singleton grid. Output is canonical:
    grids ordered by lowest member id, members sorted.
    """
    if not threshold > 0:
        raise ConfigError("threshold: must be positive")
    sensors = list(sensors)
    if not sensors:
        return GridSet(())

    uf = _UnionFind(len(sensors))
    dist = _distance_matrix(sensors)
    for i in range(len(sensors)):
        for j in range(i + 1, len(sensors)):
            if sensors[i].sensor_type is sensors[j].sensor_type and dist[i, j] < threshold:
                uf.union(i, j)

    components: dict[int, list[SensorNode]] = {}
    for i, sensor in enumerate(sensors):
        components.setdefault(uf.find(i), []).append(sensor)

    by_id = {s.node_id: s for s in sensors}
    overrides = overrides or {}
    grids = []
    for group in components.values():
        members = tuple(sorted(s.node_id for s in group))
        sensor_type = group[0].sensor_type
        override = overrides.get(sensor_type)
        if override is not None and override not in members:
            override = None  # pins a different grid of this type
        coordinator = elect_coordinator_ids(members, by_id, override=override)
        grids.append(
            Grid(
                grid_id=members[0],
                sensor_type=sensor_type,
                members=members,
                coordinator=coordinator,
                election=OVERRIDDEN if override is not None else MEDOID,
            )
        )
    grids.sort(key=lambda g: g.grid_id)
    return GridSet(tuple(grids))


def elect_coordinator_ids(
    members: tuple[str, ...],
    sensors_by_id: dict[str, SensorNode],
    override: str | None = None,
) -> str:
    """Pick the medoid of a member set: the node minimizing the sum of
    distances to all other members, ties broken by smallest id.

    An override wins outright but must name a member.
    """
    if not members:
        raise ConfigError("cannot elect a coordinator from an empty member set")
    if override is not None:
        if override not in members:
            raise OverrideError(
                f"override {override!r} is not a member of grid {min(members)!r}"
            )
        return override
    for m in members:
        if m not in sensors_by_id:
            raise ConfigError(f"grid member {m!r} missing from the sensor index")
    ordered = sorted(members)
    best_id = ""
    best_sum = float("inf")
    for candidate in ordered:
        total = 0.0
        for other in ordered:
            total += distance(
                sensors_by_id[candidate].position, sensors_by_id[other].position
            )
        if total < best_sum:
            best_sum = total
            best_id = candidate
    return best_id


def elect_coordinator(
    grid: Grid,
    sensors_by_id: dict[str, SensorNode],
    override: str | None = None,
) -> str:
    return elect_coordinator_ids(grid.members, sensors_by_id, override=override)
