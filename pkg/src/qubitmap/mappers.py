"""Initial-mapping algorithms: noise-aware greedy, exhaustive brute force,
and trivial sequential assignment.

All three are deterministic: every tie is broken lexicographically, so
identical inputs (including the sampled noise) always produce identical
mappings.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .graphs import CouplingGraph, InteractionGraph, min_error_distances, ordered_pair
from .metric import Mapping, MetricReport, _components, evaluate_mapping
from .traffic import traffic_profile

DEFAULT_PLACEMENT_LIMIT = 10_000_000

MAPPER_IDS = ("heuristic", "brute", "trivial")


class TooManyQubitsError(ValueError):
    """Interaction graph has more vertices than the device."""


class SearchSpaceTooLargeError(RuntimeError):
    """Brute-force placement count exceeds the configured cap."""

    def __init__(self, count: int, limit: int):
        super().__init__(f"{count} placements exceed the cap of {limit}")
        self.count = count
        self.limit = limit


@dataclass(frozen=True)
class MapperResult:
    mapping: Mapping
    report: MetricReport
    elapsed: float
    mapper_id: str


def _check_size(g: InteractionGraph, q: CouplingGraph) -> None:
    if g.n_vertices > q.n_vertices:
        raise TooManyQubitsError(
            f"{g.n_vertices} circuit qubits cannot map onto {q.n_vertices} device qubits"
        )


def placement_count(n_device: int, n_circuit: int) -> int:
    """Number of injective placements: n_device! / (n_device - n_circuit)!."""
    count = 1
    for i in range(n_circuit):
        count *= n_device - i
    return count


def map_trivial(
    g: InteractionGraph, q: CouplingGraph, include_measurement: bool = False
) -> MapperResult:
    """Identity assignment q_i -> Q_i in index order."""
    t0 = time.perf_counter()
    _check_size(g, q)
    mapping = Mapping({v: v for v in range(g.n_vertices)})
    report = evaluate_mapping(g, q, mapping, include_measurement)
    return MapperResult(mapping, report, time.perf_counter() - t0, "trivial")


def map_brute_force(
    g: InteractionGraph,
    q: CouplingGraph,
    limit: int = DEFAULT_PLACEMENT_LIMIT,
    include_measurement: bool = False,
) -> MapperResult:
    """Exhaustive search over all injective placements.

    Returns the placement maximizing ``sigma_total``; on ties the
    lexicographically smallest assignment vector wins (enumeration order is
    lexicographic and only strict improvements replace the incumbent).
    Raises :class:`SearchSpaceTooLargeError` when the placement count
    exceeds ``limit``.
    """
    t0 = time.perf_counter()
    _check_size(g, q)
    count = placement_count(q.n_vertices, g.n_vertices)
    if count > limit:
        raise SearchSpaceTooLargeError(count, limit)
    best_assign: tuple[int, ...] | None = None
    best_sigma = -1.0
    for assign in itertools.permutations(range(q.n_vertices), g.n_vertices):
        s, d, sw, _ = _components(g, q, assign, include_measurement)
        sigma = s * d * sw
        if sigma > best_sigma:
            best_sigma = sigma
            best_assign = assign
    mapping = Mapping(dict(enumerate(best_assign)))
    report = evaluate_mapping(g, q, mapping, include_measurement)
    return MapperResult(mapping, report, time.perf_counter() - t0, "brute")


def _pick_anchor(
    g: InteractionGraph, t: dict[int, float], assigned: dict[int, int], v: int
) -> int:
    """Mapped neighbor sharing the heaviest edge with ``v`` (ties: higher
    traffic, then lower id); falls back to the highest-traffic mapped vertex
    when ``v``'s component has no mapped vertex yet."""
    mapped_neighbors = [
        u for u in assigned if ordered_pair(u, v) in g.edges
    ]
    if mapped_neighbors:
        return max(
            mapped_neighbors,
            key=lambda u: (g.edges[ordered_pair(u, v)], t[u], -u),
        )
    return max(assigned, key=lambda u: (t[u], -u))


def map_heuristic(
    g: InteractionGraph, q: CouplingGraph, include_measurement: bool = False
) -> MapperResult:
    """Noise-aware greedy placement.

    The most active qubit (maximal traffic coefficient) is seeded on the
    lower-single-qubit-error endpoint of the device edge with the lowest
    two-qubit error rate.  Remaining qubits are processed in descending
    traffic order: each picks an anchor among its already-mapped neighbors
    (heaviest shared edge) and lands on the free device vertex with the
    cheapest error-weighted path from the anchor, where paths may not cross
    occupied vertices.  If blocking walls off every free vertex, the scan is
    repeated with blocking disabled.
    """
    t0 = time.perf_counter()
    _check_size(g, q)
    if g.n_vertices == 0:
        mapping = Mapping({})
        report = evaluate_mapping(g, q, mapping, include_measurement)
        return MapperResult(mapping, report, time.perf_counter() - t0, "heuristic")
    profile = traffic_profile(g)
    order = profile.order
    if q.edges:
        e_star = min(q.edges, key=lambda e: (q.xi_d[e], e))
        p0 = min(e_star, key=lambda p: (q.xi_s[p], p))
    else:
        p0 = min(range(q.n_vertices), key=lambda p: (q.xi_s[p], p))
    assigned: dict[int, int] = {order[0]: p0}
    occupied = {p0}
    for v in order[1:]:
        anchor = _pick_anchor(g, profile.t, assigned, v)
        src = assigned[anchor]
        dist = min_error_distances(q, src, frozenset(occupied - {src}))
        candidates = [p for p in range(q.n_vertices) if p not in occupied and p in dist]
        if not candidates:
            dist = min_error_distances(q, src)
            candidates = [p for p in range(q.n_vertices) if p not in occupied]
        target = min(candidates, key=lambda p: (dist[p][0], dist[p][1], p))
        assigned[v] = target
        occupied.add(target)
    mapping = Mapping(dict(sorted(assigned.items())))
    report = evaluate_mapping(g, q, mapping, include_measurement)
    return MapperResult(mapping, report, time.perf_counter() - t0, "heuristic")


_MAPPER_FUNCS = {
    "heuristic": map_heuristic,
    "brute": map_brute_force,
    "trivial": map_trivial,
}


def run_mapper(
    mapper_id: str,
    g: InteractionGraph,
    q: CouplingGraph,
    limit: int = DEFAULT_PLACEMENT_LIMIT,
    include_measurement: bool = False,
) -> MapperResult:
    """Dispatch by mapper id ('heuristic', 'brute' or 'trivial')."""
    if mapper_id not in _MAPPER_FUNCS:
        raise ValueError(f"unknown mapper {mapper_id!r}; expected one of {MAPPER_IDS}")
    if mapper_id == "brute":
        return map_brute_force(g, q, limit, include_measurement)
    return _MAPPER_FUNCS[mapper_id](g, q, include_measurement)
