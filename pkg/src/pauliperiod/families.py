"""Explicit Pauli-periodic gate families and the periodicity search.

Qubits are 0-indexed; the 1-indexed labels used in the usual notation for
these families shift down by one.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, tensor, to_tableau
from .errors import NonPermutationGate, SingularMatrix
from .f2linalg import F2Matrix, inverse, is_symplectic, nilpotency_index, rank, two_power_order
from .pauli import pauli_periodicity


def _need(n: int, least: int = 2) -> None:
    if n < least:
        raise ValueError(f"family needs n >= {least}, got {n}")


def periodicity_bound(n: int) -> int:
    """``ceil(log2(2n))``, the largest periodicity possible on n qubits."""
    return math.ceil(math.log2(2 * n))


def sch(n: int) -> Circuit:
    """H on qubit 0, a CNOT ladder 0->1->...->n-1, then SX on the last qubit."""
    _need(n)
    gates = [Gate("H", (0,))]
    gates += [Gate("CNOT", (j, j + 1)) for j in range(n - 1)]
    gates.append(Gate("SX", (n - 1,)))
    return Circuit(n, gates)


def jordan_cnot_string(n: int) -> Circuit:
    """CNOTs with control j+1 and target j, for j ascending.

    Realises ``a -> M a`` with M the upper-bidiagonal Jordan block.
    """
    _need(n)
    return Circuit(n, [Gate("CNOT", (j + 1, j)) for j in range(n - 1)])


def brickwork_cnot(n: int) -> Circuit:
    """Two CNOT layers: targets on even qubits first, then on odd qubits."""
    _need(n)
    first = [Gate("CNOT", (2 * j - 1, 2 * j - 2)) for j in range(1, n // 2 + 1)]
    second = [Gate("CNOT", (2 * j, 2 * j - 1)) for j in range((n - 1) // 2 + 1) if j >= 1]
    return Circuit(n, first + second)


FAMILIES = {"sch": sch, "jordan": jordan_cnot_string, "brickwork": brickwork_cnot}


# ---------------------------------------------------------------------------
# Closed-form symplectic matrix of sch(n)


def appendix_blocks(n: int) -> tuple[F2Matrix, F2Matrix, F2Matrix, F2Matrix]:
    """The four n x n blocks of sch(n)'s symplectic matrix, entrywise (1-indexed)."""
    _need(n)
    r = range(1, n + 1)
    a = [[int(i >= j and j > 1) for j in r] for i in r]
    b = [[int(j == 1 or i == j == n) for j in r] for i in r]
    c = [[int(i == j == 1) for j in r] for i in r]
    d = [[int((i == j and i > 1) or j == i + 1) for j in r] for i in r]
    return tuple(F2Matrix.from_rows(x) for x in (a, b, c, d))


def appendix_matrix(n: int) -> F2Matrix:
    a, b, c, d = appendix_blocks(n)
    return F2Matrix.block([[a, b], [c, d]])


@dataclass
class AppendixReport:
    n: int
    matches_tableau: bool
    symplectic: bool
    nilpotency_index: int
    chain_to_z1: bool | None  # None at n = 2, where the identity does not apply
    chain_to_even_x: bool

    @property
    def passed(self) -> bool:
        return (
            self.matches_tableau
            and self.symplectic
            and self.nilpotency_index == 2 * self.n
            and self.chain_to_z1 is not False
            and self.chain_to_even_x
        )

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "matches_tableau": self.matches_tableau,
            "symplectic": self.symplectic,
            "nilpotency_index": self.nilpotency_index,
            "expected_nilpotency_index": 2 * self.n,
            "chain_to_z1": self.chain_to_z1,
            "chain_to_even_x": self.chain_to_even_x,
            "passed": self.passed,
        }


def appendix_check(n: int) -> AppendixReport:
    m = appendix_matrix(n)
    nil = m + F2Matrix.identity(2 * n)
    ez = lambda j: 1 << (n + j - 1)  # noqa: E731  (1-indexed basis vectors)
    ex = lambda j: 1 << (j - 1)  # noqa: E731
    v = ez(n)
    walk = [v]
    for _ in range(n + 1):
        v = nil.apply(v)
        walk.append(v)
    even_x = 0
    for i in range(2, n + 1, 2):
        even_x |= ex(i)
    return AppendixReport(
        n=n,
        matches_tableau=m == to_tableau(sch(n)).f,
        symplectic=is_symplectic(m),
        nilpotency_index=nilpotency_index(nil),
        # N e_n^Z = e_n^X + e_{n-1}^Z and the X part only dies on the next step
        chain_to_z1=walk[n - 1] == ez(1) if n >= 3 else None,
        chain_to_even_x=walk[n + 1] == even_x,
    )


# ---------------------------------------------------------------------------
# Affine permutations a -> M a + phi


@dataclass(frozen=True)
class AffineClifford:
    m: F2Matrix
    phi: int = 0

    def __post_init__(self):
        if not self.m.is_square or rank(self.m) != self.m.nrows:
            raise SingularMatrix("affine Clifford needs an invertible linear part")
        if self.phi >> self.m.nrows:
            raise ValueError("phi has more bits than qubits")

    @property
    def n(self) -> int:
        return self.m.nrows

    def __call__(self, a: int) -> int:
        return self.m.apply(a) ^ self.phi


def affine_to_circuit(a: AffineClifford) -> Circuit:
    """CNOT network for M by Gauss-Jordan elimination, then X gates for phi."""
    n = a.n
    rows = list(a.m.rows)
    ops: list[tuple[int, int]] = []  # (control, target): row target ^= row control

    def add(c: int, t: int) -> None:
        rows[t] ^= rows[c]
        ops.append((c, t))

    for col in range(n):
        bit = 1 << col
        if not rows[col] & bit:
            piv = next(i for i in range(col + 1, n) if rows[i] & bit)
            add(piv, col)
        for i in range(n):
            if i != col and rows[i] & bit:
                add(col, i)
    # E_r ... E_1 M = I, so M = E_1 ... E_r: apply E_r first.
    gates = [Gate("CNOT", (c, t)) for c, t in reversed(ops)]
    gates += [Gate("X", (q,)) for q in range(n) if (a.phi >> q) & 1]
    return Circuit(n, gates)


def circuit_to_affine(c: Circuit) -> AffineClifford:
    rows = [1 << i for i in range(c.width)]
    phi = 0
    for gt in c.gates:
        if gt.kind == "CNOT":
            ctl, tgt = gt.qubits
            rows[tgt] ^= rows[ctl]
            phi ^= ((phi >> ctl) & 1) << tgt
        elif gt.kind == "X":
            phi ^= 1 << gt.qubits[0]
        else:
            raise NonPermutationGate(f"{gt.kind} is not an affine permutation gate")
    return AffineClifford(F2Matrix(c.width, c.width, rows), phi)


def perm_symplectic(a: AffineClifford) -> F2Matrix:
    """``diag(M, M^{-T})``."""
    return F2Matrix.direct_sum(a.m, inverse(a.m).T)


def random_affine(n: int, rng: np.random.Generator, ops: int | None = None) -> AffineClifford:
    """Random element of AGL(n, 2) from random row additions and a random shift."""
    rows = [1 << i for i in range(n)]
    if n >= 2:
        for _ in range(ops if ops is not None else 4 * n * n):
            c, t = rng.choice(n, size=2, replace=False)
            rows[t] ^= rows[c]
    phi = int(rng.integers(0, 1 << n))
    return AffineClifford(F2Matrix(n, n, rows), phi)


# ---------------------------------------------------------------------------
# Random Clifford sampling


def random_clifford_circuit(
    n: int, length: int, rng: np.random.Generator, kinds: tuple[str, ...] = ("H", "S", "CNOT")
) -> Circuit:
    gates = []
    single = [k for k in kinds if k != "CNOT" and k != "CZ"]
    double = [k for k in kinds if k in ("CNOT", "CZ")] if n >= 2 else []
    pool = single + double
    for _ in range(length):
        kind = pool[int(rng.integers(len(pool)))]
        if kind in ("CNOT", "CZ"):
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(Gate(kind, (int(c), int(t))))
        else:
            gates.append(Gate(kind, (int(rng.integers(n)),)))
    return Circuit(n, gates)


def _sample_symplectic_batch(n: int, seeds: list[np.random.SeedSequence]) -> np.ndarray:
    """Symplectic matrices of random {H, S, CNOT} words of length up to 10 n^2.

    Each step may also be an idle step, so the effective word length varies;
    with a fixed length the parity of the word would confine n = 1 samples to
    even permutations of Sp(2, 2). Each trial draws its word from its own
    generator; the row updates are then applied to all trials at once.
    """
    length = 10 * n * n
    trials = len(seeds)
    kinds = np.empty((trials, length), dtype=np.int8)
    q1 = np.empty((trials, length), dtype=np.int64)
    q2 = np.empty((trials, length), dtype=np.int64)
    n_kinds = 3 if n >= 2 else 2
    for i, ss in enumerate(seeds):
        rng = np.random.default_rng(ss)
        k = rng.integers(0, n_kinds + 1, length)
        kinds[i] = np.where(k == n_kinds, 3, k)  # 3 is an idle step
        q1[i] = rng.integers(0, n, length)
        q2[i] = (q1[i] + rng.integers(1, max(n, 2), length)) % n
    f = np.broadcast_to(np.eye(2 * n, dtype=np.uint8), (trials, 2 * n, 2 * n)).copy()
    for s in range(length):
        kind, a, b = kinds[:, s], q1[:, s], q2[:, s]
        idx = np.flatnonzero(kind == 0)  # H: swap x and z rows
        if idx.size:
            qa = a[idx]
            xr = f[idx, qa].copy()
            f[idx, qa] = f[idx, n + qa]
            f[idx, n + qa] = xr
        idx = np.flatnonzero(kind == 1)  # S: z ^= x
        if idx.size:
            qa = a[idx]
            f[idx, n + qa] ^= f[idx, qa]
        idx = np.flatnonzero(kind == 2)  # CNOT a -> b
        if idx.size:
            qa, qb = a[idx], b[idx]
            f[idx, qb] ^= f[idx, qa]
            f[idx, n + qa] ^= f[idx, n + qb]
    return f


def _pack(f: np.ndarray) -> F2Matrix:
    dim = f.shape[0]
    rows = [int("".join(map(str, r[::-1])), 2) for r in f.tolist()]
    return F2Matrix(dim, dim, rows)


def random_symplectic(n: int, seed: int = 0) -> F2Matrix:
    _need(n, 1)
    return _pack(_sample_symplectic_batch(n, [np.random.SeedSequence(seed)])[0])


@dataclass
class SearchReport:
    n: int
    trials: int
    seed: int
    histogram: dict[str, int]
    periodic: int
    max_observed: int | None
    bound: int

    @property
    def passed(self) -> bool:
        return self.max_observed is None or self.max_observed <= self.bound

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "histogram": self.histogram,
            "periodic_samples": self.periodic,
            "max_observed": self.max_observed,
            "bound": self.bound,
            "passed": self.passed,
        }


def search_max_periodicity(n: int, trials: int, seed: int = 0, chunk: int = 2048) -> SearchReport:
    """Periodicity histogram over seeded random Cliffords (not exactly uniform)."""
    _need(n, 1)
    if trials < 1:
        raise ValueError("trials must be positive")
    children = np.random.SeedSequence(seed).spawn(trials)
    counts: Counter = Counter()
    for start in range(0, trials, chunk):
        batch = _sample_symplectic_batch(n, children[start : start + chunk])
        for f in batch:
            m = two_power_order(_pack(f))
            counts["none" if m is None else str(m)] += 1
    observed = [int(k) for k in counts if k != "none"]
    hist = {k: counts[k] for k in sorted(counts, key=lambda k: (k == "none", int(k) if k != "none" else 0))}
    return SearchReport(
        n=n,
        trials=trials,
        seed=seed,
        histogram=hist,
        periodic=sum(v for k, v in counts.items() if k != "none"),
        max_observed=max(observed) if observed else None,
        bound=periodicity_bound(n),
    )


def tensor_periodicity_check(c1: Circuit, c2: Circuit) -> bool:
    m1 = pauli_periodicity(to_tableau(c1))
    m2 = pauli_periodicity(to_tableau(c2))
    if m1 is None or m2 is None:
        raise ValueError("both factors must be Pauli-periodic")
    return pauli_periodicity(to_tableau(tensor(c1, c2))) == max(m1, m2)
