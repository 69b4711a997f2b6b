"""Bit-level semantics of reversible circuits and algebraic normal forms.

Inputs to a boolean function are packed so that bit ``i`` is variable
``a_i``, the value on qubit ``i``. Basis-state indices keep the matrix
convention instead (qubit 0 is the most significant bit); the helpers below
convert between the two.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, controlled
from .errors import NonPermutationGate

MAX_WIDTH = 12
PERMUTATION_KINDS = frozenset({"X", "CNOT", "CCX"})


def _index_to_vars(index: int, width: int) -> int:
    out = 0
    for q in range(width):
        if (index >> (width - 1 - q)) & 1:
            out |= 1 << q
    return out


def _vars_to_index(bits: int, width: int) -> int:
    return _index_to_vars(bits, width)  # the bit reversal is an involution


def _run_bits(c: Circuit, bits: int) -> int:
    for gt in c.gates:
        qs = gt.qubits
        if gt.kind == "X":
            bits ^= 1 << qs[0]
        elif gt.kind == "CNOT":
            if (bits >> qs[0]) & 1:
                bits ^= 1 << qs[1]
        elif gt.kind == "CCX":
            if (bits >> qs[0]) & 1 and (bits >> qs[1]) & 1:
                bits ^= 1 << qs[2]
        else:
            raise NonPermutationGate(f"{gt.kind} is not a classical reversible gate")
    return bits


def _check(c: Circuit) -> None:
    bad = {gt.kind for gt in c.gates} - PERMUTATION_KINDS
    if bad:
        raise NonPermutationGate(f"phase-bearing or non-classical gates: {sorted(bad)}")
    if c.width > MAX_WIDTH:
        raise ValueError(f"width {c.width} exceeds the limit of {MAX_WIDTH}")


def permutation_of(c: Circuit) -> list[int]:
    """``perm[j]`` is the basis index that basis state ``j`` is sent to."""
    _check(c)
    w = c.width
    return [_vars_to_index(_run_bits(c, _index_to_vars(j, w)), w) for j in range(1 << w)]


def bit_map(c: Circuit) -> list[int]:
    """Same map in variable packing: ``out[a]`` for input assignment ``a``."""
    _check(c)
    return [_run_bits(c, a) for a in range(1 << c.width)]


@dataclass(frozen=True)
class BoolPoly:
    """Multilinear polynomial over GF(2); each monomial is a variable bitmask."""

    n: int
    monomials: frozenset[int]

    @property
    def degree(self) -> int:
        return max((bin(m).count("1") for m in self.monomials), default=0)

    def __call__(self, a: int) -> int:
        return sum(1 for m in self.monomials if a & m == m) & 1

    def table(self) -> list[int]:
        return [self(a) for a in range(1 << self.n)]

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        terms = []
        for m in sorted(self.monomials, key=lambda m: (bin(m).count("1"), m)):
            terms.append("".join(f"a{i}" for i in range(self.n) if (m >> i) & 1) or "1")
        return " + ".join(terms)


def anf(table) -> BoolPoly:
    """Möbius transform of a truth table of length 2^n."""
    t = np.asarray(table, dtype=np.uint8).copy() & 1
    size = t.size
    n = size.bit_length() - 1
    if size == 0 or size != 1 << n:
        raise ValueError(f"truth table length {size} is not a power of two")
    step = 1
    while step < size:
        view = t.reshape(-1, 2, step)
        view[:, 1, :] ^= view[:, 0, :]
        step <<= 1
    return BoolPoly(n, frozenset(int(i) for i in np.flatnonzero(t)))


def coordinate_anfs(images: list[int], width: int) -> list[BoolPoly]:
    """ANF of each output bit of ``a -> images[a]`` (variable packing)."""
    arr = np.asarray(images, dtype=np.int64)
    return [anf((arr >> i) & 1) for i in range(width)]


def invert_map(images: list[int]) -> list[int]:
    inv = [0] * len(images)
    for a, b in enumerate(images):
        inv[b] = a
    return inv


@dataclass
class QuadraticReport:
    width: int
    forward_degrees: list[int]
    inverse_degrees: list[int]

    @property
    def max_degree(self) -> int:
        return max(self.forward_degrees + self.inverse_degrees, default=0)

    @property
    def passed(self) -> bool:
        return self.max_degree <= 2

    def as_dict(self) -> dict:
        return {
            "width": self.width,
            "forward_degrees": self.forward_degrees,
            "inverse_degrees": self.inverse_degrees,
            "max_degree": self.max_degree,
            "passed": self.passed,
        }


def dressed_jump(u: Circuit, p: Circuit, q: Circuit) -> Circuit:
    """Circuit for ``P . C(U) . Q`` (Q runs first)."""
    cu = controlled(u)
    if p.width != cu.width or q.width != cu.width:
        raise ValueError("dressing permutations must act on n + 1 qubits")
    return q + cu + p


def check_jumped_perm_quadratic(u: Circuit, p: Circuit, q: Circuit) -> QuadraticReport:
    _check(u)
    circ = dressed_jump(u, p, q)
    images = bit_map(circ)
    w = circ.width
    return QuadraticReport(
        width=w,
        forward_degrees=[f.degree for f in coordinate_anfs(images, w)],
        inverse_degrees=[f.degree for f in coordinate_anfs(invert_map(images), w)],
    )
