import random

import pytest

from qubitmap import (
    CircuitIR,
    CircuitSyntaxError,
    GateEvent,
    GateKind,
    MissingHeaderError,
    QubitIndexError,
    parse_circuit,
    render_circuit,
    tally_gates,
)


def test_parse_basic():
    c = parse_circuit("qubits 2\nh q[0]\ncnot q[0],q[1]")
    assert c.qubit_count == 2
    assert c.gates == (
        GateEvent(GateKind.SINGLE, (0,), "h"),
        GateEvent(GateKind.TWO, (0, 1), "cnot"),
    )


def test_parse_empty_circuit():
    c = parse_circuit("qubits 1\n")
    assert c.qubit_count == 1
    assert c.gates == ()


def test_parse_out_of_range_reports_line():
    with pytest.raises(QubitIndexError) as exc:
        parse_circuit("qubits 2\ncnot q[0],q[5]")
    assert exc.value.line_no == 2


def test_parse_comments_blanks_and_whitespace():
    text = "# a comment\n\nqubits 3\n  x q[ 1 ]\n# another\n  cz q[0] , q[2]\nmeasure q[2]\n"
    c = parse_circuit(text)
    assert [g.kind for g in c.gates] == [GateKind.SINGLE, GateKind.TWO, GateKind.MEASURE]
    assert c.gates[1].operands == (0, 2)


def test_parse_missing_header():
    with pytest.raises(MissingHeaderError):
        parse_circuit("h q[0]\n")
    with pytest.raises(MissingHeaderError):
        parse_circuit("")


def test_parse_malformed_lines():
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\nh q[0] q[1]")
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits two\nh q[0]")
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\nH q[0]")  # mnemonics are lowercase
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\nmeasure q[0],q[1]")
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\ncnot q[1],q[1]")


def test_gate_event_invariants():
    with pytest.raises(ValueError):
        GateEvent(GateKind.TWO, (1, 1), "cnot")
    with pytest.raises(ValueError):
        GateEvent(GateKind.MEASURE, (0, 1), "measure")
    with pytest.raises(ValueError):
        CircuitIR(2, (GateEvent(GateKind.SINGLE, (5,), "h"),))


def test_tally_basic():
    c = parse_circuit("qubits 2\nh q[0]\nh q[0]\ncnot q[0],q[1]")
    n_s, n_d, n_m = tally_gates(c)
    assert n_s == {0: 2}
    assert n_d == {(0, 1): 1}
    assert n_m == {}


def test_tally_empty():
    n_s, n_d, n_m = tally_gates(parse_circuit("qubits 3\n"))
    assert n_s == {} and n_d == {} and n_m == {}


def test_tally_unordered_pair_accumulation():
    c = parse_circuit("qubits 2\ncnot q[0],q[1]\ncnot q[1],q[0]")
    _, n_d, _ = tally_gates(c)
    assert n_d == {(0, 1): 2}


def test_tally_totals_match_gate_count():
    rng = random.Random(20)
    for _ in range(25):
        n = rng.randint(1, 6)
        lines = [f"qubits {n}"]
        for _ in range(rng.randint(0, 15)):
            roll = rng.random()
            if roll < 0.4 or n == 1:
                lines.append(f"g{rng.randint(0,3)} q[{rng.randrange(n)}]")
            elif roll < 0.8:
                a, b = rng.sample(range(n), 2)
                lines.append(f"cx q[{a}],q[{b}]")
            else:
                lines.append(f"measure q[{rng.randrange(n)}]")
        c = parse_circuit("\n".join(lines))
        n_s, n_d, n_m = tally_gates(c)
        assert sum(n_s.values()) + sum(n_d.values()) + sum(n_m.values()) == len(c.gates)


def test_render_round_trip():
    rng = random.Random(99)
    for _ in range(25):
        n = rng.randint(1, 5)
        gates = []
        for _ in range(rng.randint(0, 12)):
            roll = rng.random()
            if roll < 0.4 or n == 1:
                gates.append(GateEvent(GateKind.SINGLE, (rng.randrange(n),), "h"))
            elif roll < 0.8:
                a, b = rng.sample(range(n), 2)
                gates.append(GateEvent(GateKind.TWO, (a, b), "cnot"))
            else:
                gates.append(GateEvent(GateKind.MEASURE, (rng.randrange(n),), "measure"))
        c = CircuitIR(n, tuple(gates))
        assert parse_circuit(render_circuit(c)) == c
