import math

import numpy as np
import pytest

from pauliperiod.errors import DimensionError, NotNilpotent, SingularMatrix
from pauliperiod.f2linalg import (
    F2Matrix,
    inverse,
    is_symplectic,
    is_unipotent,
    matpow,
    mul,
    nilpotency_index,
    pow2,
    rank,
    symplectic_form,
    symplectic_inverse,
    two_power_order,
)
from pauliperiod.pauli import CliffordTableau

from conftest import naive_mul, random_circuit, random_f2

F_S = F2Matrix.from_rows([[1, 0], [1, 1]])


def jordan_block(k):
    return F2Matrix.from_rows([[int(j == i + 1) for j in range(k)] for i in range(k)])


def test_mul_identity_and_nilpotent_square():
    i2 = F2Matrix.identity(2)
    assert mul(i2, i2) == i2
    n = F2Matrix.from_rows([[0, 1], [0, 0]])
    assert mul(n, n).is_zero()


def test_mul_matches_naive(rng):
    for _ in range(20):
        a, b = random_f2(rng, 8), random_f2(rng, 8)
        assert mul(a, b) == naive_mul(a, b)
    a, b = random_f2(rng, 3, 5), random_f2(rng, 5, 4)
    assert mul(a, b) == naive_mul(a, b)


def test_mul_dimension_mismatch():
    with pytest.raises(DimensionError):
        mul(F2Matrix.identity(2), F2Matrix.identity(3))


def test_identity_is_neutral(rng):
    for d in (1, 5, 12):
        a = random_f2(rng, d)
        assert a @ F2Matrix.identity(d) == a == F2Matrix.identity(d) @ a


def test_pow2():
    assert pow2(F2Matrix.identity(4), 5) == F2Matrix.identity(4)
    assert pow2(F_S, 1) == F2Matrix.identity(2)
    with pytest.raises(DimensionError):
        pow2(F2Matrix.zeros(2, 3), 1)


def _random_unipotent(rng, d):
    # conjugate an upper unitriangular matrix by a random invertible one
    upper = np.triu(rng.integers(0, 2, size=(d, d)), 1) + np.eye(d, dtype=int)
    while True:
        p = random_f2(rng, d)
        if rank(p) == d:
            break
    return p @ F2Matrix.from_numpy(upper) @ inverse(p)


def test_frobenius_identity_on_unipotent(rng):
    for _ in range(10):
        f = _random_unipotent(rng, 6)
        n = f + F2Matrix.identity(6)
        for k in range(5):
            assert pow2(f, k) == F2Matrix.identity(6) + pow2(n, k)


def test_matpow_agrees_with_repeated_products(rng):
    a = random_f2(rng, 5)
    acc = F2Matrix.identity(5)
    for e in range(9):
        assert matpow(a, e) == acc
        acc = acc @ a


def test_inverse(rng):
    for _ in range(20):
        a = random_f2(rng, 7)
        if rank(a) == 7:
            assert a @ inverse(a) == F2Matrix.identity(7)
    with pytest.raises(SingularMatrix):
        inverse(F2Matrix.zeros(3))


def test_is_symplectic_cases(rng):
    assert is_symplectic(F2Matrix.identity(6))
    rejected = 0
    for _ in range(30):
        n = int(rng.integers(1, 5))
        c = random_circuit(n, 25, rng, ("H", "S", "CNOT", "X", "Z"))
        f = CliffordTableau.from_gates(n, [(g.kind, g.qubits) for g in c.gates]).f
        assert is_symplectic(f)
        i, j = (int(v) for v in rng.integers(0, 2 * n, size=2))
        rows = list(f.rows)
        rows[i] ^= 1 << j
        bad = F2Matrix(2 * n, 2 * n, rows)
        omega = symplectic_form(n)
        expected = naive_mul(naive_mul(bad.T, omega), bad) == omega
        assert is_symplectic(bad) == expected
        rejected += not expected
    assert rejected > 0
    assert not is_symplectic(F2Matrix.from_rows([[1, 1], [0, 0]]))
    with pytest.raises(DimensionError):
        is_symplectic(F2Matrix.identity(3))


def test_symplectic_group_closure_and_inverse(rng):
    fs = []
    for _ in range(10):
        c = random_circuit(3, 30, rng, ("H", "S", "CNOT"))
        fs.append(CliffordTableau.from_gates(3, [(g.kind, g.qubits) for g in c.gates]).f)
    for f, g in zip(fs, fs[1:]):
        assert is_symplectic(f @ g)
        assert f @ symplectic_inverse(f) == F2Matrix.identity(6)


def test_nilpotency_index_examples():
    assert nilpotency_index(F2Matrix.zeros(4)) == 1
    assert nilpotency_index(jordan_block(3)) == 3
    with pytest.raises(NotNilpotent):
        nilpotency_index(F2Matrix.identity(2))


def _naive_index(n):
    acc = n
    for r in range(1, n.nrows + 1):
        if acc.is_zero():
            return r
        acc = acc @ n
    return None


def test_nilpotency_index_matches_naive(rng):
    for d in range(1, 13):
        for _ in range(5):
            f = _random_unipotent(rng, d)
            n = f + F2Matrix.identity(d)
            assert nilpotency_index(n) == _naive_index(n)


def test_two_power_order_examples():
    assert two_power_order(F2Matrix.identity(4)) == 0
    assert two_power_order(F_S) == 1
    three_cycle = F2Matrix.from_rows([[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert two_power_order(three_cycle) is None
    assert not is_unipotent(three_cycle)
    with pytest.raises(SingularMatrix):
        two_power_order(F2Matrix.zeros(2))


def test_two_power_order_bound(rng):
    for d in range(1, 13):
        f = _random_unipotent(rng, d)
        m = two_power_order(f)
        assert m <= math.ceil(math.log2(d)) if d > 1 else m == 0
        assert pow2(f, m).is_identity()
        if m:
            assert not pow2(f, m - 1).is_identity()


def test_block_and_transpose_roundtrip(rng):
    a = random_f2(rng, 3, 4)
    assert a.T.T == a
    assert F2Matrix.from_numpy(a.to_numpy()) == a
    blk = F2Matrix.block([[a, a], [a, a]])
    assert blk.submatrix(3, 6, 4, 8) == a
