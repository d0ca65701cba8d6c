"""Interaction graphs, coupling graphs, lattice generation and error-weighted
shortest paths.

An interaction graph summarizes a circuit: vertex weights count single-qubit
gate (and measurement) invocations, edge weights count two-qubit invocations
on each unordered qubit pair.  A coupling graph models the device: an
undirected connectivity graph annotated with per-vertex single-qubit and
measurement error rates and per-edge two-qubit error rates.

Shortest paths minimize ``sum(-log(1 - xi_d))`` over the traversed edges, so
an additive path cost corresponds exactly to a multiplicative success
probability.  Ties are broken by hop count and then by the lexicographically
smallest vertex sequence, which makes every caller deterministic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import CircuitIR, tally_gates

Pair = tuple[int, int]

# scaled error rates are clamped here; probabilities must stay below 1
MAX_RATE = 0.999


class InvalidNoiseError(ValueError):
    """A noise range or scaling parameter violates its bounds."""


class NoPathError(Exception):
    """Blocked vertices disconnect the requested endpoints."""


def ordered_pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class InteractionGraph:
    """Weighted undirected graph over circuit qubits 0..n_vertices-1.

    ``single_counts``/``measure_counts`` map every vertex to its gate tally;
    ``edges`` maps unordered pairs to two-qubit invocation counts (>= 1).
    Isolated vertices are retained.
    """

    n_vertices: int
    single_counts: dict[int, int]
    measure_counts: dict[int, int]
    edges: dict[Pair, int]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise ValueError("vertex count must be non-negative")
        for (u, v), w in self.edges.items():
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < v < self.n_vertices):
                raise ValueError(f"edge ({u},{v}) out of range or unordered")
            if w < 1:
                raise ValueError(f"edge ({u},{v}) has weight {w} < 1")
        for counts in (self.single_counts, self.measure_counts):
            for v, w in counts.items():
                if not 0 <= v < self.n_vertices:
                    raise ValueError(f"vertex {v} out of range")
                if w < 0:
                    raise ValueError("gate counts must be non-negative")

    def single_count(self, v: int) -> int:
        return self.single_counts.get(v, 0)

    def measure_count(self, v: int) -> int:
        return self.measure_counts.get(v, 0)

    def neighbors(self, v: int) -> list[int]:
        out = [b for (a, b) in self.edges if a == v]
        out += [a for (a, b) in self.edges if b == v]
        return sorted(out)

    def scaled(self, k: int) -> "InteractionGraph":
        """Multiply every gate count by ``k`` (depth rescaling)."""
        if k < 1:
            raise ValueError("multiplier must be positive")
        return InteractionGraph(
            self.n_vertices,
            {v: w * k for v, w in self.single_counts.items()},
            {v: w * k for v, w in self.measure_counts.items()},
            {e: w * k for e, w in self.edges.items()},
        )


@dataclass
class CouplingGraph:
    """Device connectivity with error rates; immutable after construction.

    ``xi_s``/``xi_m`` are indexed by vertex, ``xi_d`` is keyed by unordered
    edge pair.  ``layout`` carries (row, col) coordinates for lattice-generated
    graphs and is ``None`` otherwise.
    """

    n_vertices: int
    edges: tuple[Pair, ...]
    xi_s: tuple[float, ...]
    xi_m: tuple[float, ...]
    xi_d: dict[Pair, float]
    layout: dict[int, tuple[int, int]] | None = None
    _adjacency: dict[int, tuple[int, ...]] | None = field(
        default=None, repr=False, compare=False
    )
    _route_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.xi_s) != self.n_vertices or len(self.xi_m) != self.n_vertices:
            raise ValueError("error-rate vectors must cover every vertex")
        for rate in (*self.xi_s, *self.xi_m, *self.xi_d.values()):
            if not 0.0 <= rate < 1.0:
                raise ValueError(f"error rate {rate} outside [0, 1)")
        for (u, v) in self.edges:
            if not (0 <= u < v < self.n_vertices):
                raise ValueError(f"edge ({u},{v}) out of range or unordered")
            if (u, v) not in self.xi_d:
                raise ValueError(f"edge ({u},{v}) missing a two-qubit error rate")

    def adjacency(self) -> dict[int, tuple[int, ...]]:
        if self._adjacency is None:
            adj: dict[int, list[int]] = {v: [] for v in range(self.n_vertices)}
            for (u, v) in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            self._adjacency = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        return self._adjacency

    def adjacent(self, u: int, v: int) -> bool:
        return ordered_pair(u, v) in self.xi_d

    def edge_weight(self, u: int, v: int) -> float:
        """Path weight of an edge: ``-log(1 - xi_d)``."""
        return -math.log1p(-self.xi_d[ordered_pair(u, v)])


@dataclass(frozen=True)
class NoiseScaling:
    """Multiplier applied to all sampled rates as a function of lattice side n.

    ``uniform`` applies a constant factor; ``exponential`` applies
    ``base ** (n - 3)`` so that 3x3 lattices are unaffected.
    """

    mode: str
    value: float

    def __post_init__(self):
        if self.mode not in ("uniform", "exponential"):
            raise InvalidNoiseError(f"unknown scaling mode {self.mode!r}")
        if self.value <= 0:
            raise InvalidNoiseError("scaling value must be positive")

    @staticmethod
    def uniform(factor: float) -> "NoiseScaling":
        return NoiseScaling("uniform", factor)

    @staticmethod
    def exponential(base: float) -> "NoiseScaling":
        return NoiseScaling("exponential", base)

    def factor(self, n: int) -> float:
        if self.mode == "uniform":
            return self.value
        return self.value ** (n - 3)


@dataclass(frozen=True)
class NoiseSpec:
    """Uniform sampling ranges for error rates plus an optional scaling law.

    Defaults put two-qubit rates roughly an order of magnitude above
    single-qubit rates, matching published superconducting-device calibration
    magnitudes.
    """

    single_range: tuple[float, float] = (0.0005, 0.005)
    two_range: tuple[float, float] = (0.005, 0.05)
    measure_range: tuple[float, float] = (0.01, 0.05)
    scaling: NoiseScaling | None = None
    seed: int = 0

    def __post_init__(self):
        for lo, hi in (self.single_range, self.two_range, self.measure_range):
            if not (0.0 <= lo <= hi < 1.0):
                raise InvalidNoiseError(f"range ({lo}, {hi}) violates 0 <= lo <= hi < 1")


def lattice_edges(n: int) -> list[Pair]:
    """Edges of the n x n square lattice in row-major vertex order."""
    edges: list[Pair] = []
    for v in range(n * n):
        r, c = divmod(v, n)
        if c < n - 1:
            edges.append((v, v + 1))
        if r < n - 1:
            edges.append((v, v + n))
    return edges


def make_lattice(n: int, noise: NoiseSpec = NoiseSpec()) -> CouplingGraph:
    """Build an n x n lattice coupling graph with sampled error rates.

    Rates are drawn independently and uniformly from each range with a
    PCG64 generator seeded by ``noise.seed`` (vertex single-qubit rates
    first, then edge two-qubit rates, then measurement rates), scaled per
    ``noise.scaling`` and clamped to :data:`MAX_RATE`.  The same
    ``(n, noise)`` always yields a bit-for-bit identical graph.
    """
    if n < 1:
        raise ValueError("lattice side must be >= 1")
    nv = n * n
    edges = lattice_edges(n)
    rng = np.random.default_rng(noise.seed & (2**64 - 1))
    factor = noise.scaling.factor(n) if noise.scaling is not None else 1.0

    def draw(rng_range: tuple[float, float], count: int) -> list[float]:
        raw = rng.uniform(rng_range[0], rng_range[1], count)
        return [min(float(x) * factor, MAX_RATE) for x in raw]

    xi_s = tuple(draw(noise.single_range, nv))
    xi_d_vals = draw(noise.two_range, len(edges))
    xi_m = tuple(draw(noise.measure_range, nv))
    xi_d = dict(zip(edges, xi_d_vals))
    layout = {v: divmod(v, n) for v in range(nv)}
    return CouplingGraph(nv, tuple(edges), xi_s, xi_m, xi_d, layout)


def interaction_graph(c: CircuitIR) -> InteractionGraph:
    """Project a circuit onto its interaction graph.

    Vertices are 0..qubit_count-1 (gate-free qubits stay as isolated
    vertices); weights come from :func:`tally_gates`.
    """
    n_s, n_d, n_m = tally_gates(c)
    singles = {v: n_s.get(v, 0) for v in range(c.qubit_count)}
    measures = {v: n_m.get(v, 0) for v in range(c.qubit_count)}
    return InteractionGraph(c.qubit_count, singles, measures, dict(sorted(n_d.items())))


def vertex_degrees(g) -> dict[int, int]:
    """Degree of every vertex; works for both graph kinds."""
    deg = {v: 0 for v in range(g.n_vertices)}
    for (u, v) in g.edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def max_degree(g) -> int:
    degrees = vertex_degrees(g)
    return max(degrees.values()) if degrees else 0


def min_error_path(
    g: CouplingGraph,
    src: int,
    dst: int,
    blocked: frozenset[int] | set[int] = frozenset(),
    allow_blocked_dst: bool = False,
) -> tuple[list[int], float]:
    """Lowest-error path from ``src`` to ``dst``.

    Minimizes the summed edge weights ``-log(1 - xi_d)`` over paths whose
    intermediate vertices avoid ``blocked``; ``dst`` itself is admissible only
    when ``allow_blocked_dst`` is set.  Ties are broken by fewer hops, then by
    the lexicographically smallest vertex sequence.  Returns ``(path, cost)``
    with ``path[0] == src`` and ``path[-1] == dst``.

    Raises :class:`NoPathError` when the blocked set disconnects the
    endpoints.
    """
    if not (0 <= src < g.n_vertices and 0 <= dst < g.n_vertices):
        raise ValueError("endpoint out of range")
    if src in blocked:
        raise ValueError("source vertex must not be blocked")
    if src == dst:
        return [src], 0.0
    if dst in blocked and not allow_blocked_dst:
        raise NoPathError(f"destination {dst} is blocked")
    adj = g.adjacency()
    # heap entries carry the whole path so the lexicographic tie-break falls
    # out of the tuple ordering; graphs here are small (<= a few hundred cells)
    heap: list[tuple[float, int, tuple[int, ...]]] = [(0.0, 0, (src,))]
    settled: set[int] = set()
    while heap:
        cost, hops, path = heapq.heappop(heap)
        tail = path[-1]
        if tail == dst:
            return list(path), cost
        if tail in settled:
            continue
        settled.add(tail)
        for nb in adj[tail]:
            if nb in settled:
                continue
            if nb in blocked and not (nb == dst and allow_blocked_dst):
                continue
            heapq.heappush(heap, (cost + g.edge_weight(tail, nb), hops + 1, path + (nb,)))
    raise NoPathError(f"no path from {src} to {dst} avoiding {sorted(blocked)}")


def min_error_distances(
    g: CouplingGraph,
    src: int,
    blocked: frozenset[int] | set[int] = frozenset(),
) -> dict[int, tuple[float, int]]:
    """Single-source variant of :func:`min_error_path`.

    Returns ``{vertex: (cost, hops)}`` for every vertex reachable from
    ``src`` without passing through ``blocked``; blocked vertices themselves
    are excluded.  Costs and hop counts agree with :func:`min_error_path`.
    """
    if not 0 <= src < g.n_vertices:
        raise ValueError("source out of range")
    if src in blocked:
        raise ValueError("source vertex must not be blocked")
    adj = g.adjacency()
    best: dict[int, tuple[float, int]] = {src: (0.0, 0)}
    heap: list[tuple[float, int, int]] = [(0.0, 0, src)]
    settled: set[int] = set()
    while heap:
        cost, hops, v = heapq.heappop(heap)
        if v in settled:
            continue
        settled.add(v)
        for nb in adj[v]:
            if nb in settled or nb in blocked:
                continue
            cand = (cost + g.edge_weight(v, nb), hops + 1)
            if nb not in best or cand < best[nb]:
                best[nb] = cand
                heapq.heappush(heap, (cand[0], cand[1], nb))
    return best


def _connected(n_vertices: int, edges) -> bool:
    if n_vertices <= 1:
        return True
    adj: dict[int, list[int]] = {v: [] for v in range(n_vertices)}
    for (u, v) in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == n_vertices


# ---------------------------------------------------------------------------
# graph interchange format (JSON documents)

def interaction_to_json(g: InteractionGraph) -> dict:
    """Interchange dict: ``vertices``, ``edges`` as [u, v, weight] triples,
    ``vertex_weights`` as {vertex: {"single": N_s, "measure": N_m}}."""
    return {
        "vertices": g.n_vertices,
        "edges": [[u, v, w] for (u, v), w in sorted(g.edges.items())],
        "vertex_weights": {
            str(v): {"single": g.single_count(v), "measure": g.measure_count(v)}
            for v in range(g.n_vertices)
        },
    }


def interaction_from_json(obj: dict) -> InteractionGraph:
    n = int(obj["vertices"])
    edges = {ordered_pair(int(u), int(v)): int(w) for u, v, w in obj["edges"]}
    weights = obj.get("vertex_weights", {})
    singles = {v: 0 for v in range(n)}
    measures = {v: 0 for v in range(n)}
    for key, entry in weights.items():
        singles[int(key)] = int(entry.get("single", 0))
        measures[int(key)] = int(entry.get("measure", 0))
    return InteractionGraph(n, singles, measures, dict(sorted(edges.items())))


def coupling_to_json(g: CouplingGraph) -> dict:
    doc = {
        "vertices": g.n_vertices,
        "edges": [[u, v] for (u, v) in g.edges],
        "xi_s": {str(v): g.xi_s[v] for v in range(g.n_vertices)},
        "xi_d": {f"{u}-{v}": g.xi_d[(u, v)] for (u, v) in g.edges},
        "xi_m": {str(v): g.xi_m[v] for v in range(g.n_vertices)},
        "layout": None
        if g.layout is None
        else {str(v): list(rc) for v, rc in g.layout.items()},
    }
    return doc


def coupling_from_json(obj: dict) -> CouplingGraph:
    n = int(obj["vertices"])
    edges = tuple(sorted(ordered_pair(int(e[0]), int(e[1])) for e in obj["edges"]))
    if not _connected(n, edges):
        raise ValueError("coupling graph must be connected")
    xi_s = tuple(float(obj["xi_s"][str(v)]) for v in range(n))
    xi_m = tuple(float(obj["xi_m"][str(v)]) for v in range(n))
    xi_d = {}
    for key, rate in obj["xi_d"].items():
        u, v = key.split("-")
        xi_d[ordered_pair(int(u), int(v))] = float(rate)
    layout = obj.get("layout")
    if layout is not None:
        layout = {int(v): (int(rc[0]), int(rc[1])) for v, rc in layout.items()}
    return CouplingGraph(n, edges, xi_s, xi_m, xi_d, layout)
