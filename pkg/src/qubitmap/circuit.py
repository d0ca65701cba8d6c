"""Quantum-circuit gate lists and a minimal line-oriented text parser.

The text format is deliberately tiny: a ``qubits N`` header followed by one
gate per line (``h q[0]``, ``cnot q[0],q[1]``, ``measure q[0]``), ``#``
comment lines and blank lines.  Gate mnemonics are kept verbatim but never
interpreted; only the operand arity matters downstream.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field


class CircuitParseError(ValueError):
    """Base class for errors raised while parsing circuit text."""


class CircuitSyntaxError(CircuitParseError):
    """A line does not match the grammar."""

    def __init__(self, line_no: int, detail: str):
        super().__init__(f"line {line_no}: {detail}")
        self.line_no = line_no
        self.detail = detail


class MissingHeaderError(CircuitParseError):
    """No ``qubits N`` header before the first gate."""


class QubitIndexError(CircuitParseError):
    """A gate references a qubit index at or beyond the declared count."""

    def __init__(self, line_no: int, index: int, qubit_count: int):
        super().__init__(
            f"line {line_no}: qubit q[{index}] out of range (declared {qubit_count})"
        )
        self.line_no = line_no
        self.index = index


class GateKind(enum.Enum):
    SINGLE = "single"
    TWO = "two"
    MEASURE = "measure"


@dataclass(frozen=True)
class GateEvent:
    """One gate invocation: a kind, 1 or 2 operand qubits, and a mnemonic."""

    kind: GateKind
    operands: tuple[int, ...]
    label: str

    def __post_init__(self):
        arity = 2 if self.kind is GateKind.TWO else 1
        if len(self.operands) != arity:
            raise ValueError(f"{self.kind.value} gate needs {arity} operand(s)")
        if self.kind is GateKind.TWO and self.operands[0] == self.operands[1]:
            raise ValueError("two-qubit gate operands must be distinct")
        if any(i < 0 for i in self.operands):
            raise ValueError("qubit indices must be non-negative")


@dataclass(frozen=True)
class CircuitIR:
    """Parsed circuit: declared qubit count plus the ordered gate stream."""

    qubit_count: int
    gates: tuple[GateEvent, ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.qubit_count < 1:
            raise ValueError("qubit_count must be positive")
        for g in self.gates:
            for i in g.operands:
                if i >= self.qubit_count:
                    raise ValueError(f"gate references q[{i}] >= {self.qubit_count}")


_HEADER_RE = re.compile(r"^qubits\s+(\d+)$")
_GATE_RE = re.compile(
    r"^([a-z][a-z0-9]*)\s+q\s*\[\s*(\d+)\s*\]\s*(?:,\s*q\s*\[\s*(\d+)\s*\])?$"
)


def parse_circuit(text: str, name: str = "") -> CircuitIR:
    """Parse circuit text into a :class:`CircuitIR`.

    Raises :class:`MissingHeaderError` if no ``qubits N`` line precedes the
    first gate, :class:`CircuitSyntaxError` for malformed lines (with a
    1-based line number) and :class:`QubitIndexError` for out-of-range
    operands.
    """
    qubit_count: int | None = None
    gates: list[GateEvent] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if qubit_count is None:
            m = _HEADER_RE.match(line)
            if m:
                qubit_count = int(m.group(1))
                if qubit_count < 1:
                    raise CircuitSyntaxError(line_no, "qubit count must be positive")
                continue
            if line.startswith("qubits"):
                raise CircuitSyntaxError(line_no, f"malformed header {line!r}")
            raise MissingHeaderError(f"line {line_no}: no 'qubits N' header before {line!r}")
        m = _GATE_RE.match(line)
        if m is None:
            raise CircuitSyntaxError(line_no, f"unrecognized statement {line!r}")
        label, a, b = m.group(1), int(m.group(2)), m.group(3)
        operands = (a,) if b is None else (a, int(b))
        for i in operands:
            if i >= qubit_count:
                raise QubitIndexError(line_no, i, qubit_count)
        # arity is inferred from the operand count, except for "measure"
        if label == "measure":
            if len(operands) != 1:
                raise CircuitSyntaxError(line_no, "measure takes exactly one qubit")
            kind = GateKind.MEASURE
        elif len(operands) == 1:
            kind = GateKind.SINGLE
        else:
            if operands[0] == operands[1]:
                raise CircuitSyntaxError(line_no, "two-qubit gate operands must be distinct")
            kind = GateKind.TWO
        gates.append(GateEvent(kind, operands, label))
    if qubit_count is None:
        raise MissingHeaderError("no 'qubits N' header found")
    return CircuitIR(qubit_count, tuple(gates), name)


def render_circuit(c: CircuitIR) -> str:
    """Emit text in the same grammar; ``parse_circuit(render_circuit(c)) == c``
    whenever ``c.name`` is empty."""
    lines = [f"qubits {c.qubit_count}"]
    for g in c.gates:
        if g.kind is GateKind.TWO:
            lines.append(f"{g.label} q[{g.operands[0]}],q[{g.operands[1]}]")
        else:
            lines.append(f"{g.label} q[{g.operands[0]}]")
    return "\n".join(lines) + "\n"


def tally_gates(
    c: CircuitIR,
) -> tuple[dict[int, int], dict[tuple[int, int], int], dict[int, int]]:
    """Count gate invocations per qubit / unordered qubit pair.

    Returns ``(single_counts, two_counts, measure_counts)``.  Two-qubit
    counts are keyed by the unordered pair ``(min, max)``, so ``cnot q[0],q[1]``
    and ``cnot q[1],q[0]`` accumulate on the same key.  Only nonzero entries
    are present.
    """
    n_s: dict[int, int] = {}
    n_d: dict[tuple[int, int], int] = {}
    n_m: dict[int, int] = {}
    for g in c.gates:
        if g.kind is GateKind.SINGLE:
            n_s[g.operands[0]] = n_s.get(g.operands[0], 0) + 1
        elif g.kind is GateKind.TWO:
            u, v = g.operands
            key = (u, v) if u < v else (v, u)
            n_d[key] = n_d.get(key, 0) + 1
        else:
            n_m[g.operands[0]] = n_m.get(g.operands[0], 0) + 1
    return n_s, n_d, n_m
