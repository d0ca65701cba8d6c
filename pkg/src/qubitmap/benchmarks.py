"""Benchmark interaction-graph families.

Three generated families plus a small suite of named fixture graphs:

* ``linear``: the path P_r (nearest-neighbor circuits);
* ``sequence_i``: P_s plus nonlinear edges added depth-first -- the cycle
  edge first, then all chords of vertex 0, then vertex 1, and so on until
  the complete graph K_s;
* ``sequence_ii``: P_s plus nonlinear edges added breadth-first -- the cycle
  edge first, then chords in rounds of increasing span so all vertex degrees
  stay within 2 of each other on every prefix.

Generated graphs carry unit gate counts (one single-qubit gate per vertex,
one two-qubit gate per edge) times the depth multiplier, so topology effects
stay isolated from gate-count effects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .graphs import InteractionGraph, Pair, interaction_from_json, ordered_pair


class UnknownBenchmarkError(KeyError):
    """No fixture registered under the requested name."""


REALISTIC_NAMES = (
    "BV4",
    "BV6",
    "BV8",
    "QFT",
    "HS2",
    "HS4",
    "HS6",
    "Fredkin",
    "Or",
    "Peres",
    "Toffoli",
    "Adder",
)

_FIXTURE_FILES = {
    "bv4": "bv4.json",
    "bv6": "bv6.json",
    "bv8": "bv8.json",
    "qft": "qft_hs2.json",
    "hs2": "qft_hs2.json",
    "hs4": "hs4.json",
    "hs6": "hs6.json",
    "fredkin": "triangle.json",
    "or": "triangle.json",
    "peres": "triangle.json",
    "toffoli": "triangle.json",
    "adder": "adder.json",
}


def _uniform_graph(n: int, edges: list[Pair], multiplier: int = 1) -> InteractionGraph:
    return InteractionGraph(
        n,
        {v: multiplier for v in range(n)},
        {v: 0 for v in range(n)},
        {e: multiplier for e in sorted(edges)},
    )


def gen_linear(r: int, depth_multiplier: int = 1) -> InteractionGraph:
    """Path 0-1-...-(r-1); r = 1 gives a single isolated vertex."""
    if r < 1:
        raise ValueError("linear benchmark needs at least one vertex")
    return _uniform_graph(r, [(v, v + 1) for v in range(r - 1)], depth_multiplier)


def max_nonlinear_edges(s: int) -> int:
    """Nonlinear edges available on top of P_s before K_s is reached."""
    return s * (s - 1) // 2 - (s - 1)


def _sequence_i_stream(s: int) -> list[Pair]:
    stream = [(0, s - 1)]
    present = {(v, v + 1) for v in range(s - 1)} | {(0, s - 1)}
    for v in range(s):
        for u in range(v + 2, s):
            if (v, u) not in present:
                present.add((v, u))
                stream.append((v, u))
    return stream


def _sequence_ii_stream(s: int) -> list[Pair]:
    stream = [(0, s - 1)]
    present = {(v, v + 1) for v in range(s - 1)} | {(0, s - 1)}
    for span in range(2, s // 2 + 1):
        for i in range(s):
            e = ordered_pair(i, (i + span) % s)
            if e not in present:
                present.add(e)
                stream.append(e)
    return stream


def _check_sequence_args(s: int, k: int) -> None:
    if s < 4:
        raise ValueError("edge-addition sequences need s >= 4")
    if not 0 <= k <= max_nonlinear_edges(s):
        raise ValueError(
            f"k={k} outside [0, {max_nonlinear_edges(s)}] for s={s}"
        )


def gen_sequence_i(s: int, k: int, depth_multiplier: int = 1) -> InteractionGraph:
    """P_s plus the first ``k`` depth-first nonlinear edges.

    Order: (0, s-1) closes the cycle, then for v = 0, 1, 2, ... the chords
    (v, u) for u = v+2 .. s-1 ascending, skipping edges already present.
    """
    _check_sequence_args(s, k)
    edges = [(v, v + 1) for v in range(s - 1)] + _sequence_i_stream(s)[:k]
    return _uniform_graph(s, edges, depth_multiplier)


def gen_sequence_ii(s: int, k: int, depth_multiplier: int = 1) -> InteractionGraph:
    """P_s plus the first ``k`` breadth-first nonlinear edges.

    Order: (0, s-1) closes the cycle, then chords in rounds of increasing
    span d = 2 .. s//2; within a round (i, (i+d) mod s) for i = 0 .. s-1
    ascending, deduplicating unordered pairs.
    """
    _check_sequence_args(s, k)
    edges = [(v, v + 1) for v in range(s - 1)] + _sequence_ii_stream(s)[:k]
    return _uniform_graph(s, edges, depth_multiplier)


def load_realistic(name: str, depth_multiplier: int = 1) -> InteractionGraph:
    """Load a named fixture graph shipped with the package.

    Accepted names (case-insensitive): BV4, BV6, BV8, QFT, HS2, HS4, HS6,
    Fredkin, Or, Peres, Toffoli, Adder.  Several names share one graph
    (the four triangle benchmarks; QFT and HS2).
    """
    key = name.lower()
    if key not in _FIXTURE_FILES:
        raise UnknownBenchmarkError(
            f"unknown benchmark {name!r}; expected one of {', '.join(REALISTIC_NAMES)}"
        )
    text = (resources.files(__package__) / "fixtures" / _FIXTURE_FILES[key]).read_text()
    graph = interaction_from_json(json.loads(text))
    if depth_multiplier != 1:
        graph = graph.scaled(depth_multiplier)
    return graph


FAMILIES = ("linear", "sequence_i", "sequence_ii", "realistic")


@dataclass(frozen=True)
class BenchmarkSpec:
    """One benchmark point: a family plus its parameters.

    ``linear`` needs ``r``; the sequences need ``s`` and ``k``; ``realistic``
    needs ``name``.  ``depth_multiplier`` rescales all gate counts.
    """

    family: str
    r: int | None = None
    s: int | None = None
    k: int | None = None
    name: str | None = None
    depth_multiplier: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.depth_multiplier < 1:
            raise ValueError("depth_multiplier must be positive")
        if self.family == "linear":
            if self.r is None or self.r < 1:
                raise ValueError("linear benchmark needs r >= 1")
        elif self.family == "realistic":
            if self.name is None or self.name.lower() not in _FIXTURE_FILES:
                raise ValueError(f"realistic benchmark needs a known name, got {self.name!r}")
        else:
            if self.s is None or self.k is None:
                raise ValueError(f"{self.family} needs both s and k")
            _check_sequence_args(self.s, self.k)

    def build(self) -> InteractionGraph:
        if self.family == "linear":
            return gen_linear(self.r, self.depth_multiplier)
        if self.family == "sequence_i":
            return gen_sequence_i(self.s, self.k, self.depth_multiplier)
        if self.family == "sequence_ii":
            return gen_sequence_ii(self.s, self.k, self.depth_multiplier)
        return load_realistic(self.name, self.depth_multiplier)

    @property
    def label(self) -> str:
        if self.family == "realistic":
            return self.name.upper()
        return self.family

    @property
    def params(self) -> str:
        if self.family == "linear":
            return f"r={self.r},m={self.depth_multiplier}"
        if self.family == "realistic":
            return f"m={self.depth_multiplier}"
        return f"s={self.s},k={self.k},m={self.depth_multiplier}"
