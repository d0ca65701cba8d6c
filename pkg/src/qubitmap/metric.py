"""Multiplicative success-rate metric for a finished mapping.

The score factors into three components:

* ``sigma_s``: product over mapped qubits of ``(1 - xi_s)^N_s`` (optionally
  times ``(1 - xi_m)^N_m`` when measurement errors are included);
* ``sigma_d``: product over interaction edges of ``(1 - xi_d)^N_d`` using the
  coupling edge the gate executes on;
* ``sigma_sw``: SWAP traffic for interaction edges whose endpoints are not
  coupling-adjacent.

For a non-adjacent edge with count ``N`` the lowest-error coupling path is
found (occupancy is ignored: the metric scores geometry, not congestion).
With ``l`` path edges, the first ``l - 1`` edges each contribute
``(1 - xi_d)^(2N)`` to ``sigma_sw`` (the qubit is SWAPped out and back) and
the final edge contributes ``(1 - xi_d)^N`` to ``sigma_d`` for the gate
executed at the rendezvous.  A SWAP traversal is costed as one two-qubit
gate per edge.  Paths run from the lower-numbered interaction endpoint's
image to the higher one's, which pins the rendezvous edge deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import CouplingGraph, InteractionGraph, Pair, min_error_path, ordered_pair


class InvalidMappingError(ValueError):
    """Mapping is not an injective, complete assignment into the device."""


@dataclass(frozen=True)
class Mapping:
    """Injective assignment from interaction vertices to coupling vertices."""

    assign: dict[int, int]

    def validate(self, g: InteractionGraph, q: CouplingGraph) -> None:
        if sorted(self.assign) != list(range(g.n_vertices)):
            raise InvalidMappingError("every interaction vertex must be assigned")
        images = list(self.assign.values())
        if len(set(images)) != len(images):
            raise InvalidMappingError("assignment is not injective")
        if any(not 0 <= p < q.n_vertices for p in images):
            raise InvalidMappingError("image vertex out of range")

    def as_tuple(self, n_vertices: int) -> tuple[int, ...]:
        return tuple(self.assign[v] for v in range(n_vertices))


@dataclass(frozen=True)
class SwapRoute:
    """Routing record for one non-adjacent interaction edge.

    ``length`` is the number of coupling edges separating the mapped pair
    (the path edge count); ``length - 1`` of them carry SWAP traffic.
    """

    edge: Pair
    path: tuple[int, ...]
    length: int


@dataclass(frozen=True)
class MetricReport:
    sigma_s: float
    sigma_d: float
    sigma_sw: float
    sigma_total: float
    swap_routes: tuple[SwapRoute, ...]


def _route(q: CouplingGraph, src: int, dst: int) -> tuple[tuple[int, ...], int]:
    """Cached unblocked min-error path on the coupling graph."""
    key = (src, dst)
    hit = q._route_cache.get(key)
    if hit is None:
        path, _ = min_error_path(q, src, dst)
        hit = (tuple(path), len(path) - 1)
        q._route_cache[key] = hit
    return hit


def _components(
    g: InteractionGraph,
    q: CouplingGraph,
    assign,
    include_measurement: bool = False,
) -> tuple[float, float, float, list[SwapRoute]]:
    """Shared evaluation core; ``assign`` maps interaction vertex -> device
    vertex (dict or indexable sequence)."""
    sigma_s = 1.0
    for v in range(g.n_vertices):
        n_s = g.single_counts.get(v, 0)
        if n_s:
            sigma_s *= (1.0 - q.xi_s[assign[v]]) ** n_s
        if include_measurement:
            n_m = g.measure_counts.get(v, 0)
            if n_m:
                sigma_s *= (1.0 - q.xi_m[assign[v]]) ** n_m
    sigma_d = 1.0
    sigma_sw = 1.0
    routes: list[SwapRoute] = []
    for (i, j), n in g.edges.items():
        a, b = assign[i], assign[j]
        pair = ordered_pair(a, b)
        if pair in q.xi_d:
            sigma_d *= (1.0 - q.xi_d[pair]) ** n
            continue
        path, length = _route(q, a, b)
        for idx in range(length - 1):
            e = ordered_pair(path[idx], path[idx + 1])
            sigma_sw *= (1.0 - q.xi_d[e]) ** (2 * n)
        last = ordered_pair(path[-2], path[-1])
        sigma_d *= (1.0 - q.xi_d[last]) ** n
        routes.append(SwapRoute((i, j), path, length))
    return sigma_s, sigma_d, sigma_sw, routes


def evaluate_mapping(
    g: InteractionGraph,
    q: CouplingGraph,
    m: Mapping,
    include_measurement: bool = False,
) -> MetricReport:
    """Score a mapping; raises :class:`InvalidMappingError` on a bad one.

    ``sigma_total`` is the product of the three components, so it always
    lies in (0, 1].  Measurement errors fold into ``sigma_s`` only when
    ``include_measurement`` is set (off by default).
    """
    m.validate(g, q)
    sigma_s, sigma_d, sigma_sw, routes = _components(g, q, m.assign, include_measurement)
    return MetricReport(sigma_s, sigma_d, sigma_sw, sigma_s * sigma_d * sigma_sw, tuple(routes))


def swap_edge_count(report: MetricReport) -> int:
    """Total SWAP-carrying edges: sum of (length - 1) over all routes."""
    return sum(r.length - 1 for r in report.swap_routes)
