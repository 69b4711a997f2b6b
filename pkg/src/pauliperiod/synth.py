"""Exact Clifford and Clifford+T synthesis.

``decompose_clifford`` rebuilds a circuit from a tableau. ``lower_controlled``
rewrites controlled Cliffords gate by gate with fixed templates; every
template is checked against its target matrix when this module loads.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import exact
from .circuit import Circuit, Gate, controlled, gate_matrix, to_exact, to_tableau
from .errors import MismatchError, NonClifford, UnsupportedGate
from .exact import ExactUnitary, RingElem
from .pauli import CliffordTableau, apply_gate_rows

CLIFFORD_T_KINDS = frozenset({"H", "S", "SDG", "T", "TDG", "CNOT"})


@dataclass(frozen=True)
class SynthReport:
    input_gates: int
    output_gates: int
    t_count: int
    verified: bool
    residual_global_phase: RingElem | None

    def as_dict(self) -> dict:
        phase = self.residual_global_phase
        return {
            "input_gates": self.input_gates,
            "output_gates": self.output_gates,
            "t_count": self.t_count,
            "verified": self.verified,
            "residual_global_phase": None if phase is None else str(phase),
        }


# ---------------------------------------------------------------------------
# Tableau -> {H, S, CNOT, X, Z}


def decompose_clifford(t: CliffordTableau) -> Circuit:
    """Circuit over {H, S, CNOT, X, Z} with exactly the tableau ``t``.

    Sweeps qubits in order, applying gates after ``t`` until the image of
    X_i is X_i and the image of Z_i is Z_i, then clears signs with Paulis.
    The recorded gates reduce ``t`` to the identity, so the answer is their
    inverse.
    """
    n = t.n
    rows = list(t.f.rows)
    sign = t.sign_bits
    ops: list[tuple[str, tuple[int, ...]]] = []

    def do(kind: str, *qs: int) -> None:
        nonlocal sign
        sign = apply_gate_rows(rows, sign, n, kind, qs)
        ops.append((kind, qs))

    def col(j: int) -> tuple[list[int], list[int]]:
        xs = [(rows[k] >> j) & 1 for k in range(n)]
        zs = [(rows[n + k] >> j) & 1 for k in range(n)]
        return xs, zs

    for i in range(n):
        # image of X_i -> X_i
        xs, zs = col(i)
        for k in range(i, n):
            if zs[k]:
                do("S" if xs[k] else "H", k)
        xs, _ = col(i)
        if not xs[i]:
            k = next(k for k in range(i + 1, n) if xs[k])
            do("CNOT", k, i)
        xs, _ = col(i)
        for k in range(i + 1, n):
            if xs[k]:
                do("CNOT", i, k)
        # image of Z_i -> Z_i, leaving X_i fixed
        xs, zs = col(n + i)
        for k in range(i + 1, n):
            if xs[k]:
                if zs[k]:
                    do("S", k)
                do("H", k)
        _, zs = col(n + i)
        for k in range(i + 1, n):
            if zs[k]:
                do("CNOT", k, i)
        xs, _ = col(n + i)
        if xs[i]:
            do("H", i)
            do("S", i)
            do("H", i)
    for j in range(n):
        if (sign >> j) & 1:
            do("Z", j)
        if (sign >> (n + j)) & 1:
            do("X", j)
    gates: list[Gate] = []
    for kind, qs in reversed(ops):
        gates.append(Gate(kind, qs))
        if kind == "S":
            gates.append(Gate("Z", qs))
    out = Circuit(n, gates)
    if to_tableau(out) != t:
        raise MismatchError("tableau decomposition failed to round-trip")
    return out


def resynthesize(c: Circuit) -> tuple[Circuit, SynthReport]:
    """Rebuild a Clifford circuit from its tableau and report the phase gap."""
    out = decompose_clifford(to_tableau(c))
    phase = exact.global_phase_between(to_exact(out), to_exact(c))
    return out, SynthReport(len(c), len(out), 0, phase is not None, phase)


# ---------------------------------------------------------------------------
# Controlled Cliffords -> Clifford+T


def _g(kind: str, *qs: int) -> Gate:
    return Gate(kind, qs)


# kind -> (gate list on local qubits 0..arity-1, target matrix)
TEMPLATES: dict[str, tuple[tuple[Gate, ...], ExactUnitary]] = {
    "CS": (
        (_g("T", 0), _g("T", 1), _g("CNOT", 0, 1), _g("TDG", 1), _g("CNOT", 0, 1)),
        gate_matrix("CS"),
    ),
    "CH": (
        (_g("SDG", 1), _g("H", 1), _g("TDG", 1), _g("CNOT", 0, 1), _g("T", 1), _g("H", 1), _g("S", 1)),
        gate_matrix("CH"),
    ),
    "CCX": (
        (
            _g("H", 2), _g("CNOT", 1, 2), _g("TDG", 2), _g("CNOT", 0, 2), _g("T", 2),
            _g("CNOT", 1, 2), _g("TDG", 2), _g("CNOT", 0, 2), _g("T", 1), _g("T", 2),
            _g("H", 2), _g("CNOT", 0, 1), _g("T", 0), _g("TDG", 1), _g("CNOT", 0, 1),
        ),
        gate_matrix("CCX"),
    ),
    "CZ": ((_g("H", 1), _g("CNOT", 0, 1), _g("H", 1)), gate_matrix("CZ")),
    "X": ((_g("H", 0), _g("S", 0), _g("S", 0), _g("H", 0)), gate_matrix("X")),
    "Y": (
        (_g("SDG", 0), _g("H", 0), _g("S", 0), _g("S", 0), _g("H", 0), _g("S", 0)),
        gate_matrix("Y"),
    ),
    "Z": ((_g("S", 0), _g("S", 0)), gate_matrix("Z")),
    "SX": ((_g("H", 0), _g("S", 0), _g("H", 0)), gate_matrix("SX")),
}


def _validate_templates() -> None:
    for kind, (gates, target) in TEMPLATES.items():
        width = max(q for gt in gates for q in gt.qubits) + 1
        if to_exact(Circuit(width, gates)) != target:
            raise MismatchError(f"template for {kind} does not match its matrix")


_validate_templates()

_ZPOW_AS = {0: "Z", 1: "S", 2: "T"}


def lower_controlled(c: Circuit) -> Circuit:
    """Rewrite into {H, S, SDG, T, TDG, CNOT} with an identical matrix."""
    out: list[Gate] = []
    for gt in c.gates:
        kind = gt.kind
        if kind == "ZPOW":
            if gt.param not in _ZPOW_AS:
                raise UnsupportedGate(f"{gt.to_line()} has no exact Clifford+T form")
            kind = _ZPOW_AS[gt.param]
        if kind in CLIFFORD_T_KINDS:
            out.append(Gate(kind, gt.qubits))
        elif kind in TEMPLATES:
            for tg in TEMPLATES[kind][0]:
                out.append(Gate(tg.kind, tuple(gt.qubits[q] for q in tg.qubits)))
        else:
            raise UnsupportedGate(f"cannot lower {gt.to_line()}")
    return Circuit(c.width, out)


def synth_jumped(c: Circuit) -> tuple[Circuit, SynthReport]:
    """Exact Clifford+T circuit for controlled(c), verified against diag(I, U)."""
    if not c.is_clifford:
        raise NonClifford("synth_jumped needs a Clifford input circuit")
    lowered = lower_controlled(controlled(c))
    target = exact.controlled(to_exact(c))
    got = to_exact(lowered)
    verified = got == target
    phase = exact.ONE if verified else exact.global_phase_between(got, target)
    return lowered, SynthReport(len(c), len(lowered), lowered.t_count, verified, phase)
