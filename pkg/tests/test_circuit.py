import pytest
from conftest import random_circuit

from pauliperiod import exact
from pauliperiod.circuit import (
    Circuit,
    Gate,
    controlled,
    gate_matrix,
    inverse,
    parse,
    serialize,
    tensor,
    to_exact,
    to_tableau,
)
from pauliperiod.errors import NonClifford, ParseError, RingUnrepresentable, UnsupportedControl
from pauliperiod.exact import ExactUnitary, RingElem
from pauliperiod.f2linalg import F2Matrix
from pauliperiod.families import brickwork_cnot, circuit_to_affine, perm_symplectic, sch

ALL_KINDS = ("H", "S", "SDG", "SX", "X", "Y", "Z", "CNOT", "CZ", "T", "TDG", "CS", "CH")


def test_parse_basic():
    c = parse("qubits 2\nH 0\n# comment\nCNOT 0 1  # trailing\n\nZPOW 2 1\n")
    assert c.width == 2
    assert c.gates == (Gate("H", (0,)), Gate("CNOT", (0, 1)), Gate("ZPOW", (1,), 2))


def test_parse_is_case_insensitive():
    assert parse("QUBITS 1\nh 0\n").gates == (Gate("H", (0,)),)


@pytest.mark.parametrize(
    "text, line",
    [
        ("qubits 2\nCNOT 0 0\n", 2),
        ("qubits 2\nH 2\n", 2),
        ("H 0\n", 1),
        ("qubits 1\nFOO 0\n", 2),
        ("qubits 1\n\nH\n", 3),
        ("qubits 1\nqubits 2\n", 2),
        ("qubits x\n", 1),
        ("qubits 1\nH a\n", 2),
        ("qubits 1\nZPOW\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line


def test_parse_empty_input():
    with pytest.raises(ParseError):
        parse("# nothing\n")


def test_round_trip(rng):
    for _ in range(300):
        n = int(rng.integers(1, 6))
        c = random_circuit(n, int(rng.integers(0, 20)), rng, ALL_KINDS)
        assert parse(serialize(c)) == c


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("CNOT", (1, 1))
    with pytest.raises(ValueError):
        Gate("H", (0, 1))
    with pytest.raises(ValueError):
        Gate("ZPOW", (0,))
    with pytest.raises(ValueError):
        Gate("H", (0,), 3)
    with pytest.raises(ValueError):
        Circuit(1, [Gate("CNOT", (0, 1))])


def test_concatenation_and_repeat():
    c = Circuit(1, [Gate("S", (0,))])
    assert to_exact(c.repeat(2)) == gate_matrix("Z")
    assert to_exact(c + c + c + c) == ExactUnitary.identity(2)


def test_temporal_order():
    # H then S is S.H as a matrix
    c = Circuit(1, [Gate("H", (0,)), Gate("S", (0,))])
    assert to_exact(c) == gate_matrix("S") @ gate_matrix("H")


def test_tensor_places_first_circuit_on_low_indices():
    a = Circuit(1, [Gate("H", (0,))])
    b = Circuit(1, [Gate("S", (0,))])
    assert to_exact(tensor(a, b)) == exact.tensor(gate_matrix("H"), gate_matrix("S"))


def test_inverse(rng):
    for _ in range(40):
        c = random_circuit(3, 10, rng, ALL_KINDS)
        assert to_exact(c + inverse(c)) == ExactUnitary.identity(8)


def test_controlled_s_is_diag():
    i = RingElem.omega_power(2)
    cs = controlled(Circuit(1, [Gate("S", (0,))]))
    assert to_exact(cs) == ExactUnitary.diagonal([1, 1, 1, i])


def test_controlled_sch3_is_block_diag():
    c = sch(3)
    u = to_exact(c)
    assert to_exact(controlled(c)) == exact.block_diag(ExactUnitary.identity(8), u)


def test_controlled_matches_exact_controlled(rng):
    for _ in range(60):
        n = int(rng.integers(1, 4))
        c = random_circuit(n, 8, rng)
        assert to_exact(controlled(c)) == exact.controlled(to_exact(c))


def test_controlled_zpow_parameters():
    for p in (0, 1):
        c = Circuit(1, [Gate("ZPOW", (0,), p)])
        assert to_exact(controlled(c)) == exact.controlled(to_exact(c))


@pytest.mark.parametrize("kind", ["T", "TDG", "CS", "CH", "CCX"])
def test_controlled_unsupported(kind):
    qs = tuple(range({"CS": 2, "CH": 2, "CCX": 3}.get(kind, 1)))
    with pytest.raises(UnsupportedControl):
        controlled(Circuit(len(qs), [Gate(kind, qs)]))


def test_h_tableau():
    t = to_tableau(Circuit(1, [Gate("H", (0,))]))
    assert t.f == F2Matrix.from_rows([[0, 1], [1, 0]])


def test_tableau_agrees_with_exact_conjugation(rng):
    from pauliperiod.pauli import PauliString, conjugate

    for _ in range(50):
        n = int(rng.integers(1, 4))
        c = random_circuit(n, 10, rng)
        u = to_exact(c)
        t = to_tableau(c)
        for j in range(2 * n):
            p = PauliString.from_vector(n, 1 << j)
            img = conjugate(t, p)
            lhs = u @ ExactUnitary.from_pauli(p) @ u.dagger()
            assert lhs == ExactUnitary.from_pauli(img)


def test_non_clifford_tableau():
    with pytest.raises(NonClifford):
        to_tableau(Circuit(1, [Gate("T", (0,))]))
    with pytest.raises(NonClifford):
        to_tableau(Circuit(1, [Gate("ZPOW", (0,), 2)]))


def test_t_is_exact():
    w = exact.OMEGA_ELEM
    assert to_exact(Circuit(1, [Gate("T", (0,))])) == ExactUnitary.diagonal([1, w])
    assert to_exact(Circuit(1, [Gate("ZPOW", (0,), 2)])) == ExactUnitary.diagonal([1, w])


def test_zpow_beyond_ring():
    with pytest.raises(RingUnrepresentable):
        to_exact(Circuit(1, [Gate("ZPOW", (0,), 3)]))


def test_brickwork_tableau_is_permutation_symplectic():
    for n in range(2, 7):
        c = brickwork_cnot(n)
        assert to_tableau(c).f == perm_symplectic(circuit_to_affine(c))


def test_counts():
    c = parse("qubits 2\nT 0\nTDG 1\nCNOT 0 1\nT 1\n")
    assert c.t_count == 3
    assert c.gate_counts() == {"T": 2, "TDG": 1, "CNOT": 1}
    assert not c.is_clifford
