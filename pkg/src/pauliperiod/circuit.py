"""Gate-level circuits, the text format, and semantic maps.

Text format::

    qubits 3
    # comment
    H 0
    CNOT 0 1
    ZPOW 3 2      # Z^(1/2^3) on qubit 2; the exponent comes first

Gate order is temporal order. Qubit 0 is the most significant bit of a
basis index, and for multi-qubit gates the listed qubits are control(s)
first. :func:`controlled` prepends a fresh control at index 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import exact
from .errors import NonClifford, ParseError, RingUnrepresentable, UnsupportedControl
from .exact import ExactUnitary, RingElem
from .pauli import CliffordTableau, apply_gate_rows
from .f2linalg import F2Matrix

ARITY = {
    "X": 1, "Y": 1, "Z": 1, "H": 1, "S": 1, "SDG": 1, "SX": 1, "T": 1, "TDG": 1,
    "ZPOW": 1,
    "CNOT": 2, "CZ": 2, "CS": 2, "CH": 2,
    "CCX": 3,
}
CLIFFORD_KINDS = frozenset({"X", "Y", "Z", "H", "S", "SDG", "SX", "CNOT", "CZ"})


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    param: int | None = None

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if kind not in ARITY:
            raise ValueError(f"unknown gate kind {kind!r}")
        if len(self.qubits) != ARITY[kind]:
            raise ValueError(f"{kind} takes {ARITY[kind]} qubit(s), got {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit index in {kind} {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")
        if kind == "ZPOW":
            if self.param is None or self.param < 0:
                raise ValueError("ZPOW needs a non-negative exponent parameter")
        elif self.param is not None:
            raise ValueError(f"{kind} takes no parameter")

    @property
    def is_clifford(self) -> bool:
        return self.kind in CLIFFORD_KINDS or (self.kind == "ZPOW" and self.param <= 1)

    def shifted(self, offset: int) -> Gate:
        return Gate(self.kind, tuple(q + offset for q in self.qubits), self.param)

    def to_line(self) -> str:
        args = [str(self.param)] if self.kind == "ZPOW" else []
        args += [str(q) for q in self.qubits]
        return " ".join([self.kind, *args])


def g(kind: str, *qubits: int, param: int | None = None) -> Gate:
    return Gate(kind, qubits, param)


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.width < 1:
            raise ValueError("circuit width must be positive")
        for gate in self.gates:
            if any(q >= self.width for q in gate.qubits):
                raise ValueError(f"gate {gate.to_line()} exceeds width {self.width}")

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        """Run ``self`` then ``other``."""
        if self.width != other.width:
            raise ValueError("width mismatch")
        return Circuit(self.width, self.gates + other.gates)

    def repeat(self, times: int) -> Circuit:
        return Circuit(self.width, self.gates * times)

    def remap(self, mapping: Sequence[int], width: int) -> Circuit:
        return Circuit(
            width, [Gate(gt.kind, tuple(mapping[q] for q in gt.qubits), gt.param) for gt in self.gates]
        )

    def gate_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for gt in self.gates:
            counts[gt.kind] = counts.get(gt.kind, 0) + 1
        return counts

    @property
    def t_count(self) -> int:
        return sum(1 for gt in self.gates if gt.kind in ("T", "TDG") or (gt.kind == "ZPOW" and gt.param == 2))

    @property
    def is_clifford(self) -> bool:
        return all(gt.is_clifford for gt in self.gates)

    def serialize(self) -> str:
        return serialize(self)


def tensor(c1: Circuit, c2: Circuit) -> Circuit:
    """``c1`` on the low-index qubits, ``c2`` shifted above it."""
    return Circuit(c1.width + c2.width, c1.gates + tuple(gt.shifted(c1.width) for gt in c2.gates))


_INVERSE_KIND = {"S": "SDG", "SDG": "S", "T": "TDG", "TDG": "T"}
_SELF_INVERSE = {"X", "Y", "Z", "H", "CNOT", "CZ", "CH", "CCX"}


def inverse(c: Circuit) -> Circuit:
    out: list[Gate] = []
    for gt in reversed(c.gates):
        if gt.kind in _SELF_INVERSE:
            out.append(gt)
        elif gt.kind in _INVERSE_KIND:
            out.append(Gate(_INVERSE_KIND[gt.kind], gt.qubits))
        elif gt.kind in ("SX", "CS"):
            out.extend([gt] * 3)
        elif gt.kind == "ZPOW" and gt.param <= 1:
            out.extend([gt] * (3 if gt.param == 1 else 1))
        else:
            raise UnsupportedControl(f"no inverse for {gt.to_line()} in the gate alphabet")
    return Circuit(c.width, out)


# ---------------------------------------------------------------------------
# Text format


def parse(text: str) -> Circuit:
    width = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0].upper()
        if width is None:
            if head != "QUBITS" or len(parts) != 2:
                raise ParseError("first statement must be 'qubits N'", lineno)
            try:
                width = int(parts[1])
            except ValueError:
                raise ParseError(f"bad qubit count {parts[1]!r}", lineno) from None
            if width < 1:
                raise ParseError("qubit count must be positive", lineno)
            continue
        if head == "QUBITS":
            raise ParseError("duplicate 'qubits' header", lineno)
        if head not in ARITY:
            raise ParseError(f"unknown gate {parts[0]!r}", lineno)
        try:
            args = [int(a) for a in parts[1:]]
        except ValueError:
            raise ParseError(f"non-integer argument in {line!r}", lineno) from None
        param = None
        if head == "ZPOW":
            if not args:
                raise ParseError("ZPOW needs an exponent", lineno)
            param, args = args[0], args[1:]
        if len(args) != ARITY[head]:
            raise ParseError(f"{head} takes {ARITY[head]} qubit index(es), got {len(args)}", lineno)
        if any(q >= width or q < 0 for q in args):
            raise ParseError(f"qubit index out of range for width {width}", lineno)
        try:
            gates.append(Gate(head, tuple(args), param))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if width is None:
        raise ParseError("missing 'qubits N' header", None)
    return Circuit(width, gates)


def serialize(c: Circuit) -> str:
    return "\n".join([f"qubits {c.width}", *(gt.to_line() for gt in c.gates)]) + "\n"


# ---------------------------------------------------------------------------
# Controlled construction


def _controlled_gate(gt: Gate) -> list[Gate]:
    qs = tuple(q + 1 for q in gt.qubits)
    kind = gt.kind
    if kind == "ZPOW" and gt.param <= 1:
        kind = "Z" if gt.param == 0 else "S"
    if kind == "X":
        return [Gate("CNOT", (0, *qs))]
    if kind == "Z":
        return [Gate("CZ", (0, *qs))]
    if kind == "S":
        return [Gate("CS", (0, *qs))]
    if kind == "H":
        return [Gate("CH", (0, *qs))]
    if kind == "Y":
        # Y = S X S^dag
        t = qs[0]
        return [Gate("SDG", (t,)), Gate("CNOT", (0, t)), Gate("S", (t,))]
    if kind == "SDG":
        # S^dag = S Z
        return [Gate("CZ", (0, *qs)), Gate("CS", (0, *qs))]
    if kind == "SX":
        return [Gate("CH", (0, *qs)), Gate("CS", (0, *qs)), Gate("CH", (0, *qs))]
    if kind == "CNOT":
        return [Gate("CCX", (0, *qs))]
    if kind == "CZ":
        a, b = qs
        return [Gate("H", (b,)), Gate("CCX", (0, a, b)), Gate("H", (b,))]
    raise UnsupportedControl(f"no controlled form of {gt.to_line()} in the gate alphabet")


def controlled(c: Circuit) -> Circuit:
    out: list[Gate] = []
    for gt in c.gates:
        out.extend(_controlled_gate(gt))
    return Circuit(c.width + 1, out)


# ---------------------------------------------------------------------------
# Semantics


def to_tableau(c: Circuit) -> CliffordTableau:
    n = c.width
    rows = list(F2Matrix.identity(2 * n).rows)
    r = 0
    for gt in c.gates:
        kind = gt.kind
        if kind == "ZPOW":
            if gt.param > 1:
                raise NonClifford(f"{gt.to_line()} is not Clifford")
            kind = "Z" if gt.param == 0 else "S"
        elif kind not in CLIFFORD_KINDS:
            raise NonClifford(f"{gt.to_line()} is not Clifford")
        r = apply_gate_rows(rows, r, n, kind, gt.qubits)
    return CliffordTableau(n, F2Matrix(2 * n, 2 * n, rows), r, check=False)


_HALF = RingElem.make(1, k=1)


@lru_cache(maxsize=None)
def gate_matrix(kind: str, param: int | None = None) -> ExactUnitary:
    """Exact matrix of one gate; listed qubits map to significance order."""
    w = exact.OMEGA_ELEM
    i = RingElem.omega_power(2)
    if kind == "X":
        return ExactUnitary.from_entries([[0, 1], [1, 0]])
    if kind == "Y":
        return ExactUnitary.from_entries([[0, -i], [i, 0]])
    if kind == "Z":
        return ExactUnitary.diagonal([1, -1])
    if kind == "H":
        return ExactUnitary.from_entries([[_HALF, _HALF], [_HALF, -_HALF]])
    if kind == "S":
        return ExactUnitary.diagonal([1, i])
    if kind == "SDG":
        return ExactUnitary.diagonal([1, -i])
    if kind == "T":
        return ExactUnitary.diagonal([1, w])
    if kind == "TDG":
        return ExactUnitary.diagonal([1, w.conj()])
    if kind == "SX":
        h = gate_matrix("H")
        return h @ gate_matrix("S") @ h
    if kind == "ZPOW":
        if param > 2:
            raise RingUnrepresentable(f"Z^(1/2^{param}) is outside Z[w, 1/sqrt2]")
        return ExactUnitary.diagonal([1, RingElem.omega_power(4 >> param)])
    if kind == "CNOT":
        return exact.controlled(gate_matrix("X"))
    if kind == "CZ":
        return exact.controlled(gate_matrix("Z"))
    if kind == "CS":
        return exact.controlled(gate_matrix("S"))
    if kind == "CH":
        return exact.controlled(gate_matrix("H"))
    if kind == "CCX":
        return exact.controlled(gate_matrix("CNOT"))
    raise ValueError(f"unknown gate kind {kind!r}")


def to_exact(c: Circuit) -> ExactUnitary:
    u = ExactUnitary.identity(1 << c.width)
    for gt in c.gates:
        u = exact.embed(gate_matrix(gt.kind, gt.param), gt.qubits, c.width) @ u
    return u


def circuits_equal(a: Circuit, b: Circuit) -> bool:
    """Exact matrix equality (phase-sensitive)."""
    return a.width == b.width and to_exact(a) == to_exact(b)


def gates_from(spec: Iterable[tuple]) -> list[Gate]:
    """Convenience: ``[("H", 0), ("CNOT", 0, 1)]`` -> gates."""
    out = []
    for item in spec:
        kind, *qs = item
        out.append(Gate(kind, tuple(qs)))
    return out
