import pytest
from conftest import random_circuit

from pauliperiod import exact
from pauliperiod.circuit import Circuit, Gate, gate_matrix, to_exact, to_tableau
from pauliperiod.errors import BudgetExceeded, MismatchError
from pauliperiod.exact import ExactUnitary, RingElem, controlled, mat_pow
from pauliperiod.families import brickwork_cnot, jordan_cnot_string, sch
from pauliperiod.hierarchy import (
    HierarchyOracle,
    brute_force_is_in_level,
    exact_level,
    is_in_level,
    verify_block_diagonal_closure,
    verify_controlled_jump,
)
from pauliperiod.pauli import pauli_periodicity

S = gate_matrix("S")
T = gate_matrix("T")


def one(kind, *qs, width=None):
    return Circuit(width or max(qs) + 1, [Gate(kind, qs)])


def test_membership_examples():
    assert is_in_level(S, 2)
    assert not is_in_level(T, 2)
    assert is_in_level(T, 3)
    cs = gate_matrix("CS")
    assert is_in_level(cs, 3) and not is_in_level(cs, 2)


def test_level_examples():
    assert exact_level(gate_matrix("CNOT"), 4).level == 2
    assert exact_level(gate_matrix("X"), 4).level == 1
    assert exact_level(controlled(to_exact(brickwork_cnot(2))), 4).level == 3
    assert exact_level(gate_matrix("CCX"), 4).level == 3
    assert exact_level(controlled(to_exact(sch(3))), 6).level == 5


def test_zpow_levels():
    for k in range(3):
        u = to_exact(Circuit(1, [Gate("ZPOW", (0,), k)]))
        assert exact_level(u, 5).level == k + 1


def test_witness_points_at_non_pauli_leaf():
    v = exact_level(T, 4)
    assert v.level == 3
    assert v.witness is not None and len(v.witness) == 1


def test_above_cap():
    v = exact_level(controlled(to_exact(sch(3))), 4)
    assert v.above_cap and v.level is None and v.cap == 4


def test_verify_controlled_jump_examples():
    r = verify_controlled_jump(one("S", 0))
    assert (r.m, r.level, r.passed) == (1, 3, True)
    r = verify_controlled_jump(sch(3))
    assert (r.m, r.level, r.passed) == (3, 5, True)
    r = verify_controlled_jump(jordan_cnot_string(4))
    assert (r.m, r.level) == (2, 4)
    assert r.leaf_count > 0 and r.runtime >= 0


def test_verify_controlled_jump_rejects_paulis():
    with pytest.raises(ValueError):
        verify_controlled_jump(one("X", 0))


def test_verify_controlled_jump_cap_too_low_is_mismatch():
    with pytest.raises(MismatchError):
        verify_controlled_jump(sch(3), cap=4)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        exact_level(controlled(to_exact(sch(3))), 6, budget=10)


def test_budget_counts_leaves():
    oracle = HierarchyOracle()
    oracle.exact_level(T, 3)
    assert oracle.leaves > 0
    before = oracle.leaves
    oracle.exact_level(T, 3)  # memoised
    assert oracle.leaves == before


def _sample_unitaries(rng, count, n=2, kinds=("H", "S", "T", "CNOT", "CZ")):
    for _ in range(count):
        yield to_exact(random_circuit(n, 6, rng, kinds))


def test_nestedness(rng):
    for u in _sample_unitaries(rng, 30):
        oracle = HierarchyOracle()
        verdicts = [oracle.is_in_level(u, k) for k in range(1, 5)]
        for a, b in zip(verdicts, verdicts[1:]):
            assert not a or b


def test_clifford_invariance(rng):
    base = [T, gate_matrix("CS"), controlled(to_exact(brickwork_cnot(2))), controlled(S)]
    for u in base:
        q = u.qubits
        lvl = exact_level(u, 5).level
        for _ in range(5):
            c1 = to_exact(random_circuit(q, 8, rng))
            c2 = to_exact(random_circuit(q, 8, rng))
            assert exact_level(c1 @ u @ c2, 5).level == lvl


def test_phase_robustness(rng):
    for u in list(_sample_unitaries(rng, 15)) + [controlled(to_exact(sch(2)))]:
        lvl = exact_level(u, 5).level
        for e in (2, 4, 6):
            assert exact_level(u.scale(RingElem.omega_power(e)), 5).level == lvl


def test_aw_necessity(rng):
    for _ in range(25):
        n = int(rng.integers(1, 4))
        c = random_circuit(n, 3 * n + 2, rng)
        k = exact_level(controlled(to_exact(c)), 6).level
        m = pauli_periodicity(to_tableau(c))
        if k is None:
            assert m is None or m + 2 > 6
            continue
        u = to_exact(c)
        assert exact.is_pauli_up_to_phase(mat_pow(u, 2 ** max(k - 2, 0))) is not None


def test_qubit_lower_bound():
    cases = [sch(2), sch(3), jordan_cnot_string(3), jordan_cnot_string(4), brickwork_cnot(3)]
    for c in cases:
        k = exact_level(controlled(to_exact(c)), 6).level
        if k >= 4:
            assert c.width >= 2 ** (k - 4) + 1


def test_block_diagonal_examples():
    ident = ExactUnitary.identity(2)
    assert verify_block_diagonal_closure(ident, ident, 1)
    z = mat_pow(S, 2)
    assert verify_block_diagonal_closure(ident, z, 1)
    assert is_in_level(exact.block_diag(ident, z), 2)
    assert is_in_level(ident, 2) and is_in_level(z, 2)
    assert verify_block_diagonal_closure(ident, z, 2)


def test_block_diagonal_closure_random(rng):
    for _ in range(50):
        a = to_exact(random_circuit(2, 6, rng))
        b = to_exact(random_circuit(2, 6, rng))
        assert verify_block_diagonal_closure(a, b, 2)


def test_block_diagonal_closure_non_clifford_blocks(rng):
    for _ in range(20):
        a = to_exact(random_circuit(1, 4, rng, ("H", "S", "T")))
        b = to_exact(random_circuit(1, 4, rng, ("H", "S", "T")))
        assert verify_block_diagonal_closure(a, b, 3)


def test_agrees_with_brute_force(rng):
    samples = list(_sample_unitaries(rng, 25))
    samples += [gate_matrix("CS"), controlled(to_exact(sch(2))), exact.tensor(T, T)]
    for u in samples:
        for k in (1, 2, 3):
            assert is_in_level(u, k) == brute_force_is_in_level(u, k)


def test_agrees_with_brute_force_at_level_four():
    samples = [controlled(to_exact(sch(2))), controlled(T)]
    for u in samples:
        assert is_in_level(u, 4) == brute_force_is_in_level(u, 4)


def test_periodicity_matches_jump(rng):
    for _ in range(20):
        c = random_circuit(2, 8, rng)
        m = pauli_periodicity(to_tableau(c))
        if m is None or m < 1:
            continue
        assert verify_controlled_jump(c).level == m + 2
