import json
import math
import random

import pytest

from qubitmap import (
    CouplingGraph,
    InteractionGraph,
    InvalidNoiseError,
    NoiseScaling,
    NoiseSpec,
    NoPathError,
    coupling_from_json,
    coupling_to_json,
    interaction_from_json,
    interaction_graph,
    interaction_to_json,
    make_lattice,
    max_degree,
    min_error_distances,
    min_error_path,
    parse_circuit,
    vertex_degrees,
)
from tests.oracles import exhaustive_best_path, path_success_product, random_connected_coupling


# --- lattice generation -----------------------------------------------------

@pytest.mark.parametrize("n,vertices,edges", [(3, 9, 12), (1, 1, 0), (10, 100, 180)])
def test_lattice_counts(n, vertices, edges):
    lat = make_lattice(n, NoiseSpec(seed=5))
    assert lat.n_vertices == vertices
    assert len(lat.edges) == edges


def test_lattice_reproducible():
    a = make_lattice(4, NoiseSpec(seed=123))
    b = make_lattice(4, NoiseSpec(seed=123))
    assert a == b
    c = make_lattice(4, NoiseSpec(seed=124))
    assert a != c


def test_lattice_layout_row_major():
    lat = make_lattice(3)
    assert lat.layout[0] == (0, 0)
    assert lat.layout[5] == (1, 2)
    assert lat.layout[8] == (2, 2)


def test_lattice_rates_within_ranges():
    spec = NoiseSpec()
    lat = make_lattice(5, spec)
    assert all(spec.single_range[0] <= x <= spec.single_range[1] for x in lat.xi_s)
    assert all(spec.measure_range[0] <= x <= spec.measure_range[1] for x in lat.xi_m)
    assert all(spec.two_range[0] <= x <= spec.two_range[1] for x in lat.xi_d.values())


def test_uniform_scaling_multiplies_rates():
    base = make_lattice(4, NoiseSpec(seed=7))
    scaled = make_lattice(4, NoiseSpec(seed=7, scaling=NoiseScaling.uniform(4.0)))
    for v in range(base.n_vertices):
        assert scaled.xi_s[v] == pytest.approx(4.0 * base.xi_s[v], rel=1e-12)
    for e in base.edges:
        assert scaled.xi_d[e] == pytest.approx(4.0 * base.xi_d[e], rel=1e-12)


def test_exponential_scaling_anchored_at_three():
    spec = NoiseSpec(seed=11, scaling=NoiseScaling.exponential(2.0))
    plain = NoiseSpec(seed=11)
    assert make_lattice(3, spec) == make_lattice(3, plain)
    grown = make_lattice(5, spec)
    base = make_lattice(5, plain)
    for e in base.edges:
        assert grown.xi_d[e] == pytest.approx(4.0 * base.xi_d[e], rel=1e-12)


def test_scaled_rates_clamped_below_one():
    spec = NoiseSpec(seed=3, scaling=NoiseScaling.uniform(1000.0))
    lat = make_lattice(3, spec)
    assert all(x <= 0.999 for x in lat.xi_d.values())
    assert all(x <= 0.999 for x in lat.xi_s)


def test_invalid_noise_ranges():
    with pytest.raises(InvalidNoiseError):
        NoiseSpec(single_range=(0.5, 0.1))
    with pytest.raises(InvalidNoiseError):
        NoiseSpec(two_range=(0.0, 1.0))
    with pytest.raises(InvalidNoiseError):
        NoiseSpec(measure_range=(-0.1, 0.2))
    with pytest.raises(InvalidNoiseError):
        NoiseScaling("cubic", 2.0)


# --- interaction graphs -----------------------------------------------------

def _complete_pairs_circuit():
    lines = ["qubits 4"]
    for u in range(4):
        for v in range(u + 1, 4):
            lines.append(f"cnot q[{u}],q[{v}]")
    return parse_circuit("\n".join(lines))


def test_interaction_complete_graph():
    g = interaction_graph(_complete_pairs_circuit())
    assert set(g.edges) == {(u, v) for u in range(4) for v in range(u + 1, 4)}
    assert max_degree(g) == 3


def test_interaction_path_and_cycle():
    path_circuit = parse_circuit("qubits 4\ncnot q[0],q[1]\ncnot q[1],q[2]\ncnot q[2],q[3]")
    g = interaction_graph(path_circuit)
    assert set(g.edges) == {(0, 1), (1, 2), (2, 3)}
    assert max_degree(g) == 2

    cycle_circuit = parse_circuit(
        "qubits 4\ncnot q[0],q[1]\ncnot q[1],q[2]\ncnot q[2],q[3]\ncnot q[0],q[3]"
    )
    g = interaction_graph(cycle_circuit)
    assert set(g.edges) == {(0, 1), (1, 2), (2, 3), (0, 3)}
    assert vertex_degrees(g) == {0: 2, 1: 2, 2: 2, 3: 2}


def test_interaction_keeps_isolated_vertices():
    g = interaction_graph(parse_circuit("qubits 5\ncnot q[0],q[1]"))
    assert g.n_vertices == 5
    assert g.single_count(4) == 0


def test_degree_helpers():
    star = InteractionGraph(4, {v: 0 for v in range(4)}, {v: 0 for v in range(4)},
                            {(0, 3): 1, (1, 3): 1, (2, 3): 1})
    assert max_degree(star) == 3
    assert vertex_degrees(star)[3] == 3


def test_interaction_graph_invariants():
    with pytest.raises(ValueError):
        InteractionGraph(3, {}, {}, {(1, 1): 1})
    with pytest.raises(ValueError):
        InteractionGraph(3, {}, {}, {(0, 5): 1})
    with pytest.raises(ValueError):
        InteractionGraph(3, {}, {}, {(0, 1): 0})


# --- shortest paths ---------------------------------------------------------

def _uniform_lattice(n: int, xi_d: float = 0.01) -> CouplingGraph:
    lat = make_lattice(n)
    return CouplingGraph(
        lat.n_vertices,
        lat.edges,
        tuple(0.001 for _ in range(lat.n_vertices)),
        tuple(0.02 for _ in range(lat.n_vertices)),
        {e: xi_d for e in lat.edges},
        lat.layout,
    )


def test_path_src_equals_dst():
    lat = _uniform_lattice(3)
    assert min_error_path(lat, 4, 4) == ([4], 0.0)


def test_path_uniform_lattice_is_hop_count():
    lat = _uniform_lattice(3, xi_d=0.01)
    path, cost = min_error_path(lat, 0, 2)
    assert path == [0, 1, 2]
    assert cost == pytest.approx(2 * -math.log1p(-0.01), rel=1e-12)


def test_path_lexicographic_tie_break():
    lat = _uniform_lattice(3)
    path, _ = min_error_path(lat, 2, 3)
    # both [2,1,0,3] and [2,5,4,3] cost the same; the smaller sequence wins
    assert path == [2, 1, 0, 3]


def test_path_matches_exhaustive_enumeration():
    rng = random.Random(42)
    for _ in range(60):
        n = rng.randint(2, 9)
        q = random_connected_coupling(rng, n)
        src, dst = rng.sample(range(n), 2)
        path, cost = min_error_path(q, src, dst)
        oracle_path, oracle_cost = exhaustive_best_path(q, src, dst)
        assert cost == pytest.approx(oracle_cost, abs=1e-10)
        assert path == oracle_path


def test_blocked_vertices_respected_and_monotone():
    rng = random.Random(43)
    for _ in range(40):
        n = rng.randint(3, 8)
        q = random_connected_coupling(rng, n)
        src, dst = rng.sample(range(n), 2)
        _, base_cost = min_error_path(q, src, dst)
        candidates = [v for v in range(n) if v not in (src, dst)]
        blocked = frozenset(rng.sample(candidates, min(2, len(candidates))))
        oracle = exhaustive_best_path(q, src, dst, blocked)
        try:
            path, cost = min_error_path(q, src, dst, blocked)
        except NoPathError:
            assert oracle is None
            continue
        assert all(v not in blocked for v in path[1:-1])
        assert cost == pytest.approx(oracle[1], abs=1e-10)
        assert path == oracle[0]
        assert cost >= base_cost - 1e-12  # blocking never helps


def test_blocked_destination_flag():
    lat = _uniform_lattice(3)
    with pytest.raises(NoPathError):
        min_error_path(lat, 0, 2, blocked={2})
    path, _ = min_error_path(lat, 0, 2, blocked={2}, allow_blocked_dst=True)
    assert path == [0, 1, 2]


def test_path_cost_exp_matches_product():
    rng = random.Random(44)
    for _ in range(30):
        q = random_connected_coupling(rng, rng.randint(2, 9))
        src, dst = rng.sample(range(q.n_vertices), 2)
        path, cost = min_error_path(q, src, dst)
        assert math.exp(-cost) == pytest.approx(path_success_product(q, path), rel=1e-12)


def test_distances_agree_with_paths():
    rng = random.Random(45)
    for _ in range(20):
        q = random_connected_coupling(rng, rng.randint(2, 9))
        src = rng.randrange(q.n_vertices)
        blocked = frozenset(
            v for v in range(q.n_vertices) if v != src and rng.random() < 0.2
        )
        dist = min_error_distances(q, src, blocked)
        for dst in range(q.n_vertices):
            if dst == src or dst in blocked:
                continue
            try:
                _, cost = min_error_path(q, src, dst, blocked)
            except NoPathError:
                assert dst not in dist
                continue
            assert dist[dst][0] == pytest.approx(cost, abs=1e-12)


def test_no_path_when_disconnected_by_blocking():
    lat = _uniform_lattice(3)
    # corner 0 is cut off by blocking its two neighbors
    with pytest.raises(NoPathError):
        min_error_path(lat, 0, 8, blocked={1, 3})


# --- interchange format -----------------------------------------------------

def test_interaction_json_round_trip():
    g = interaction_graph(parse_circuit("qubits 3\nh q[0]\ncnot q[0],q[1]\nmeasure q[2]"))
    doc = interaction_to_json(g)
    assert set(doc) >= {"vertices", "edges", "vertex_weights"}
    assert doc["edges"] == [[0, 1, 1]]
    assert interaction_from_json(json.loads(json.dumps(doc))) == g


def test_coupling_json_round_trip():
    lat = make_lattice(3, NoiseSpec(seed=9))
    doc = coupling_to_json(lat)
    assert set(doc) >= {"vertices", "edges", "xi_s", "xi_d", "xi_m", "layout"}
    back = coupling_from_json(json.loads(json.dumps(doc)))
    assert back == lat


def test_coupling_json_rejects_disconnected():
    doc = {
        "vertices": 4,
        "edges": [[0, 1], [2, 3]],
        "xi_s": {str(v): 0.001 for v in range(4)},
        "xi_d": {"0-1": 0.01, "2-3": 0.01},
        "xi_m": {str(v): 0.02 for v in range(4)},
        "layout": None,
    }
    with pytest.raises(ValueError):
        coupling_from_json(doc)
