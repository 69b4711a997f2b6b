"""Exact Clifford-hierarchy membership for small unitaries.

``W`` is in level ``k`` when ``W P W^dag`` is in level ``k - 1`` for every
Pauli ``P``. Checking only the single-qubit generators is enough at levels
2 and 3 because levels 1 and 2 are groups. From level 4 upward the recursion
also has to look at products of generators, but only of those whose image
is *not* Clifford: a Clifford factor can be split off without changing
membership, since every level is stable under multiplication by Cliffords.
For controlled Cliffords this leaves one or two branches per level.

A *leaf* is one base-case test (Pauli membership of a conjugate). The leaf
budget bounds the total work of one oracle instance.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache

from . import exact
from .circuit import Circuit, to_exact, to_tableau
from .errors import BudgetExceeded, MismatchError
from .exact import ExactUnitary
from .pauli import PauliString, pauli_periodicity

DEFAULT_BUDGET = 1_000_000


@lru_cache(maxsize=None)
def _generators(q: int) -> tuple[tuple[PauliString, ExactUnitary], ...]:
    out = []
    for j in range(q):
        for letter in "XZ":
            p = PauliString.single(q, letter, j)
            out.append((p, ExactUnitary.from_pauli(p)))
    return tuple(out)


def _label(p: PauliString) -> str:
    parts = []
    for j in range(p.n):
        x, z = (p.x >> j) & 1, (p.z >> j) & 1
        if x or z:
            parts.append(f"{'_XZY'[x | (z << 1)]}{j}")
    return "*".join(parts) or "I"


@dataclass(frozen=True)
class LevelVerdict:
    level: int | None  # None: not within the cap
    cap: int
    witness: tuple[str, ...] | None = None
    leaves: int = 0

    @property
    def above_cap(self) -> bool:
        return self.level is None


class HierarchyOracle:
    """Memoised membership tests sharing one leaf budget."""

    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget
        self.leaves = 0
        self._memo: dict[tuple[bytes, int], tuple[str, ...] | None] = {}

    def _tick(self) -> None:
        self.leaves += 1
        if self.leaves > self.budget:
            raise BudgetExceeded(f"leaf budget {self.budget} exhausted")

    def _is_pauli(self, w: ExactUnitary) -> bool:
        self._tick()
        return exact.is_pauli_up_to_phase(w) is not None

    def failure(self, w: ExactUnitary, k: int) -> tuple[str, ...] | None:
        """``None`` if ``w`` is in level ``k``, else a conjugation path to a
        non-Pauli leaf (empty when ``w`` itself is the offending leaf)."""
        if k < 1:
            raise ValueError("levels start at 1")
        key = (w.key, k)
        if key in self._memo:
            return self._memo[key]
        result = self._failure(w, k)
        self._memo[key] = result
        return result

    def _failure(self, w: ExactUnitary, k: int) -> tuple[str, ...] | None:
        if self._is_pauli(w):
            return None
        if k == 1:
            return ()
        gens = _generators(w.qubits)
        wd = w.dagger()
        images = [(p, w @ gm @ wd) for p, gm in gens]
        if k == 2:
            for p, img in images:
                if not self._is_pauli(img):
                    return (_label(p),)
            return None
        rest = [(p, img) for p, img in images if self.failure(img, 2) is not None]
        if not rest:
            return None
        if k == 3:
            p, img = rest[0]
            return (_label(p),) + self.failure(img, 2)
        for size in range(1, len(rest) + 1):
            for combo in itertools.combinations(rest, size):
                prod_p = combo[0][0]
                prod_img = combo[0][1]
                for p, img in combo[1:]:
                    prod_p = prod_p * p
                    prod_img = prod_img @ img
                path = self.failure(prod_img, k - 1)
                if path is not None:
                    return (_label(prod_p),) + path
        return None

    def is_in_level(self, w: ExactUnitary, k: int) -> bool:
        return self.failure(w, k) is None

    def exact_level(self, w: ExactUnitary, cap: int) -> LevelVerdict:
        witness = None
        for k in range(1, cap + 1):
            path = self.failure(w, k)
            if path is None:
                return LevelVerdict(k, cap, witness, self.leaves)
            witness = path
        return LevelVerdict(None, cap, witness, self.leaves)


def is_in_level(u: ExactUnitary, k: int, budget: int = DEFAULT_BUDGET) -> bool:
    return HierarchyOracle(budget).is_in_level(u, k)


def exact_level(u: ExactUnitary, cap: int = 6, budget: int = DEFAULT_BUDGET) -> LevelVerdict:
    return HierarchyOracle(budget).exact_level(u, cap)


@dataclass
class JumpReport:
    m: int
    predicted_level: int
    level: int | None
    witness: tuple[str, ...] | None
    runtime: float
    leaf_count: int
    passed: bool = field(default=False)

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "predicted_level": self.predicted_level,
            "level": self.level,
            "witness": list(self.witness) if self.witness is not None else None,
            "runtime_s": round(self.runtime, 6),
            "leaf_count": self.leaf_count,
            "passed": self.passed,
        }


def verify_controlled_jump(c: Circuit, cap: int = 6, budget: int = DEFAULT_BUDGET) -> JumpReport:
    """Check that controlled(U) sits strictly at level m + 2."""
    m = pauli_periodicity(to_tableau(c))
    if m is None or m < 1:
        raise ValueError(f"needs a Pauli-periodic Clifford with m >= 1, got m = {m}")
    start = time.perf_counter()
    oracle = HierarchyOracle(budget)
    verdict = oracle.exact_level(exact.controlled(to_exact(c)), cap)
    report = JumpReport(
        m=m,
        predicted_level=m + 2,
        level=verdict.level,
        witness=verdict.witness,
        runtime=time.perf_counter() - start,
        leaf_count=oracle.leaves,
    )
    report.passed = verdict.level == m + 2
    if not report.passed:
        raise MismatchError(f"controlled gate at level {verdict.level}, expected {m + 2} (cap {cap})")
    return report


def verify_block_diagonal_closure(
    a: ExactUnitary, b: ExactUnitary, r: int, budget: int = DEFAULT_BUDGET
) -> bool:
    """diag(a, b) in level r implies a and b are both in level r."""
    oracle = HierarchyOracle(budget)
    if not oracle.is_in_level(exact.block_diag(a, b), r):
        return True
    return oracle.is_in_level(a, r) and oracle.is_in_level(b, r)


def brute_force_is_in_level(u: ExactUnitary, k: int) -> bool:
    """Definition-level check over all 4^n Paulis; tiny inputs only."""
    if exact.is_pauli_up_to_phase(u) is not None:
        return True
    if k == 1:
        return False
    q = u.qubits
    ud = u.dagger()
    for x in range(1 << q):
        for z in range(1 << q):
            p = ExactUnitary.from_pauli(PauliString(q, x, z, 0))
            if not brute_force_is_in_level(u @ p @ ud, k - 1):
                return False
    return True
