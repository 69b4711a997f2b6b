import pytest
from conftest import random_circuit

from pauliperiod import exact
from pauliperiod.circuit import Circuit, Gate, controlled, gate_matrix, to_exact, to_tableau
from pauliperiod.errors import NonClifford, UnsupportedGate
from pauliperiod.exact import ExactUnitary, RingElem
from pauliperiod.families import brickwork_cnot, jordan_cnot_string, sch
from pauliperiod.pauli import CliffordTableau
from pauliperiod.synth import (
    CLIFFORD_T_KINDS,
    TEMPLATES,
    decompose_clifford,
    lower_controlled,
    resynthesize,
    synth_jumped,
)

# T-counts of the lowered controlled circuits, recorded from the verified output.
T_COUNT_SCH3 = 23


def one(kind, *qs):
    return Circuit(max(qs) + 1, [Gate(kind, qs)])


def test_identity_tableau_gives_empty_circuit():
    assert len(decompose_clifford(CliffordTableau.identity(3))) == 0


def test_decompose_sch3():
    c = sch(3)
    out = decompose_clifford(to_tableau(c))
    assert to_tableau(out) == to_tableau(c)
    assert set(out.gate_counts()) <= {"H", "S", "CNOT", "X", "Z"}
    phase = exact.global_phase_between(to_exact(out), to_exact(c))
    assert phase is not None


def test_decompose_random_round_trip(rng):
    for _ in range(100):
        n = int(rng.integers(1, 5))
        c = random_circuit(n, 6 * n, rng)
        t = to_tableau(c)
        out = decompose_clifford(t)
        assert to_tableau(out) == t
        if n <= 3:
            assert exact.global_phase_between(to_exact(out), to_exact(c)) is not None


def test_resynthesize_reports_phase(rng):
    for _ in range(20):
        c = random_circuit(2, 10, rng)
        out, report = resynthesize(c)
        assert report.verified
        assert to_exact(out) == to_exact(c).scale(report.residual_global_phase)


@pytest.mark.parametrize("kind", sorted(TEMPLATES))
def test_templates_are_exact(kind):
    gates, target = TEMPLATES[kind]
    width = max(q for gt in gates for q in gt.qubits) + 1
    assert to_exact(Circuit(width, gates)) == target
    assert all(gt.kind in CLIFFORD_T_KINDS for gt in gates)


def test_template_t_counts():
    def tc(kind):
        return sum(gt.kind in ("T", "TDG") for gt in TEMPLATES[kind][0])

    assert tc("CS") == 3
    assert tc("CH") == 2
    assert tc("CCX") == 7
    assert len(TEMPLATES["CS"][0]) == 5


def test_lower_cs():
    out = lower_controlled(one("CS", 0, 1))
    assert len(out) == 5
    i = RingElem.omega_power(2)
    assert to_exact(out) == ExactUnitary.diagonal([1, 1, 1, i])


def test_lower_ccx():
    out = lower_controlled(one("CCX", 0, 1, 2))
    assert out.t_count == 7
    assert to_exact(out) == gate_matrix("CCX")


def test_lower_respects_qubit_mapping():
    c = Circuit(3, [Gate("CCX", (2, 0, 1)), Gate("CH", (1, 2)), Gate("CS", (2, 0))])
    assert to_exact(lower_controlled(c)) == to_exact(c)


def test_lower_controlled_sch3():
    c = controlled(sch(3))
    out = lower_controlled(c)
    assert to_exact(out) == exact.block_diag(ExactUnitary.identity(8), to_exact(sch(3)))
    assert out.t_count == T_COUNT_SCH3


def test_lower_rejects_unknown():
    with pytest.raises(UnsupportedGate):
        lower_controlled(Circuit(1, [Gate("ZPOW", (0,), 3)]))


def test_lower_zpow():
    for p in (0, 1, 2):
        c = Circuit(1, [Gate("ZPOW", (0,), p)])
        assert to_exact(lower_controlled(c)) == to_exact(c)


@pytest.mark.parametrize(
    "circ, t_count",
    [
        (one("X", 0), 0),
        (one("S", 0), 3),
        (one("H", 0), 2),
        (one("CNOT", 0, 1), 7),
        (brickwork_cnot(4), 21),
        (sch(3), T_COUNT_SCH3),
    ],
)
def test_synth_jumped_counts(circ, t_count):
    out, report = synth_jumped(circ)
    assert report.verified and report.residual_global_phase == exact.ONE
    assert report.t_count == t_count == out.t_count
    assert all(gt.kind in CLIFFORD_T_KINDS for gt in out.gates)


def test_synth_x_is_cnot():
    out, _ = synth_jumped(one("X", 0))
    assert out == Circuit(2, [Gate("CNOT", (0, 1))])


def test_synth_random_cliffords(rng):
    for _ in range(40):
        n = int(rng.integers(1, 4))
        c = random_circuit(n, 8, rng)
        out, report = synth_jumped(c)
        assert report.verified
        assert to_exact(out) == exact.controlled(to_exact(c))


def test_synth_deterministic():
    a = synth_jumped(jordan_cnot_string(5))
    b = synth_jumped(jordan_cnot_string(5))
    assert a[0] == b[0] and a[1].t_count == b[1].t_count


def test_synth_rejects_non_clifford():
    with pytest.raises(NonClifford):
        synth_jumped(one("T", 0))
