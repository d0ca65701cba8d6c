"""Per-qubit traffic coefficients.

A qubit's frequency counts its single-qubit invocations plus twice its
incident two-qubit invocations; the traffic coefficient ``t = 1 - 1/f``
compresses that into [0, 1) so qubits can be ranked by activity.  The
descending-traffic order produced here is the processing queue of the
greedy mapper.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import InteractionGraph


@dataclass(frozen=True)
class TrafficProfile:
    """Frequencies ``f``, coefficients ``t``, normalization ``c`` (``None``
    when all coefficients are zero), the maximal coefficient ``t_max`` and
    the descending-traffic vertex order (ties broken by ascending id)."""

    f: dict[int, int]
    t: dict[int, float]
    c: float | None
    t_max: float
    order: list[int]


def traffic_profile(g: InteractionGraph) -> TrafficProfile:
    """Compute the traffic profile of an interaction graph.

    ``f[i] = N_s,i + 2 * (two-qubit invocations incident to i)``; ``t[i] =
    1 - 1/f[i]`` for active qubits and 0 for idle ones (f = 0), which keeps
    idle qubits at the back of the order.
    """
    f = {v: g.single_count(v) for v in range(g.n_vertices)}
    for (u, v), w in g.edges.items():
        f[u] += 2 * w
        f[v] += 2 * w
    t = {v: 1.0 - 1.0 / fv if fv >= 1 else 0.0 for v, fv in f.items()}
    total = sum(t.values())
    c = 1.0 / total if total > 0 else None
    order = sorted(t, key=lambda v: (-t[v], v))
    t_max = t[order[0]] if order else 0.0
    return TrafficProfile(f, t, c, t_max, order)
