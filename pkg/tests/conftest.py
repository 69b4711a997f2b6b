import numpy as np
import pytest

from pauliperiod.circuit import Circuit, Gate
from pauliperiod.f2linalg import F2Matrix


def naive_mul(a: F2Matrix, b: F2Matrix) -> F2Matrix:
    la, lb = a.to_list(), b.to_list()
    out = [[0] * b.ncols for _ in range(a.nrows)]
    for i in range(a.nrows):
        for j in range(b.ncols):
            s = 0
            for k in range(a.ncols):
                s ^= la[i][k] & lb[k][j]
            out[i][j] = s
    return F2Matrix.from_rows(out)


def random_f2(rng: np.random.Generator, r: int, c: int | None = None) -> F2Matrix:
    c = r if c is None else c
    return F2Matrix.from_numpy(rng.integers(0, 2, size=(r, c)))


CLIFFORD_ALPHABET = ("H", "S", "SDG", "SX", "X", "Y", "Z", "CNOT", "CZ")


def random_circuit(n: int, length: int, rng: np.random.Generator, kinds=CLIFFORD_ALPHABET) -> Circuit:
    gates = []
    pool = [k for k in kinds if n >= 2 or k not in ("CNOT", "CZ", "CS", "CH")]
    for _ in range(length):
        kind = pool[int(rng.integers(len(pool)))]
        if kind in ("CNOT", "CZ", "CS", "CH"):
            a, b = rng.choice(n, size=2, replace=False)
            gates.append(Gate(kind, (int(a), int(b))))
        else:
            gates.append(Gate(kind, (int(rng.integers(n)),)))
    return Circuit(n, gates)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
