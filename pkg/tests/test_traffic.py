import random

import pytest

from qubitmap import InteractionGraph, interaction_graph, parse_circuit, traffic_profile
from tests.oracles import random_interaction_graph


def _graph(n, singles, edges):
    return InteractionGraph(
        n,
        {v: singles.get(v, 0) for v in range(n)},
        {v: 0 for v in range(n)},
        dict(sorted(edges.items())),
    )


def test_frequency_combines_single_and_double_counts():
    # one vertex with 2 single-qubit gates and 3 incident two-qubit invocations
    g = _graph(3, {0: 2}, {(0, 1): 2, (0, 2): 1})
    prof = traffic_profile(g)
    assert prof.f[0] == 2 + 2 * 3 == 8
    assert prof.t[0] == pytest.approx(1 - 1 / 8, rel=1e-12)
    assert prof.t[0] == pytest.approx(0.875, rel=1e-12)


def test_normalization_and_order():
    # engineered so that t = (0.8, 0.5, 0.7): f = (5, 2, 10/3) -> use singles-only
    # fractional f is impossible, so check c and order on a direct profile instead
    g = _graph(3, {0: 5, 1: 2, 2: 0}, {})
    prof = traffic_profile(g)
    assert prof.t[0] == pytest.approx(0.8, rel=1e-12)
    assert prof.t[1] == pytest.approx(0.5, rel=1e-12)
    assert prof.t[2] == 0.0
    total = prof.t[0] + prof.t[1]
    assert prof.c == pytest.approx(1.0 / total, rel=1e-12)
    assert prof.c * sum(prof.t.values()) == pytest.approx(1.0, rel=1e-12)
    assert prof.order == [0, 1, 2]


def test_order_for_three_known_coefficients():
    # t = (0.8, 0.5, 0.7) exactly: f = (5, 2, 10/3) is unreachable with integer
    # counts, so build t-equivalents f = (5, 2, 10/3)*3 -> (15, 6, 10) gives
    # t = (14/15, 5/6, 9/10) with the same ranking
    g = _graph(3, {0: 15, 1: 6, 2: 10}, {})
    prof = traffic_profile(g)
    assert prof.order == [0, 2, 1]
    assert prof.t_max == prof.t[0]


def test_p4_hand_derived_profile():
    text = "qubits 4\n" + "\n".join(f"h q[{v}]" for v in range(4))
    text += "\ncnot q[0],q[1]\ncnot q[1],q[2]\ncnot q[2],q[3]"
    prof = traffic_profile(interaction_graph(parse_circuit(text)))
    assert [prof.f[v] for v in range(4)] == [3, 5, 5, 3]
    assert prof.t[0] == pytest.approx(2 / 3, rel=1e-12)
    assert prof.t[1] == pytest.approx(4 / 5, rel=1e-12)
    assert prof.t[2] == pytest.approx(4 / 5, rel=1e-12)
    assert prof.t[3] == pytest.approx(2 / 3, rel=1e-12)
    assert prof.t_max == pytest.approx(0.8, rel=1e-12)
    assert prof.order[0] == 1
    assert prof.order == [1, 2, 0, 3]


def test_all_idle_circuit_flags_undefined_normalization():
    prof = traffic_profile(_graph(3, {}, {}))
    assert prof.c is None
    assert prof.t_max == 0.0
    assert prof.order == [0, 1, 2]


def test_single_invocation_gives_zero_coefficient():
    prof = traffic_profile(_graph(2, {0: 1, 1: 1}, {}))
    assert prof.t[0] == 0.0 and prof.t[1] == 0.0


def test_adding_a_gate_is_monotone():
    rng = random.Random(7)
    for _ in range(30):
        g = random_interaction_graph(rng, rng.randint(2, 6))
        prof = traffic_profile(g)
        v = rng.randrange(g.n_vertices)
        singles = dict(g.single_counts)
        singles[v] += 1
        bumped = InteractionGraph(g.n_vertices, singles, g.measure_counts, g.edges)
        prof2 = traffic_profile(bumped)
        assert prof2.t[v] >= prof.t[v]
        for u in range(g.n_vertices):
            if u != v:
                assert prof2.t[u] == prof.t[u]


def test_doubling_counts_preserves_order():
    rng = random.Random(8)
    for _ in range(100):
        g = random_interaction_graph(rng, rng.randint(2, 7))
        doubled = g.scaled(2)
        assert traffic_profile(doubled).order == traffic_profile(g).order
