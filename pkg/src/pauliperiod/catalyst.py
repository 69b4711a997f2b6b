"""Statevector simulation of catalysed phase gates.

A Clifford ``U`` with an eigenstate of eigenvalue ``e^{i pi / 2^k}`` lets a
controlled ``U`` imprint ``Z^(1/2^k)`` on its control while leaving the
eigenstate intact. The eigenstate is prepared by phase estimation with
post-selection.

Ancilla conventions for phase estimation: ancilla ``j`` (qubit ``j``)
controls ``U^(2^j)``, so the ancilla register encodes ``y = sum_j b_j 2^j``.
The inverse Fourier transform is taken over ``y`` and the accepted outcome
is ``y = 1``: ancilla 0 reads 1 and all other ancillas read 0.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exact
from .circuit import Circuit, Gate, controlled, gate_matrix, to_exact, to_tableau
from .errors import (
    MismatchError,
    NoSuchEigenphase,
    NotAnEigenstate,
    PostSelectImpossible,
    ZeroProjection,
)
from .pauli import pauli_periodicity

MAX_QUBITS = 24
NORM_TOL = 1e-10
EIGEN_TOL = 1e-8


@lru_cache(maxsize=None)
def _complex_gate(kind: str, param: int | None) -> np.ndarray:
    if kind == "ZPOW":
        return np.diag([1.0, cmath.exp(1j * math.pi / 2**param)])
    return gate_matrix(kind, param).to_complex()


@dataclass(frozen=True)
class StateVector:
    q: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.size != 1 << self.q:
            raise ValueError(f"expected {1 << self.q} amplitudes, got {amps.size}")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, q: int, index: int = 0) -> StateVector:
        amps = np.zeros(1 << q, dtype=complex)
        amps[index] = 1
        return cls(q, amps)

    @classmethod
    def from_bits(cls, bits: str) -> StateVector:
        """``"01"`` puts qubit 0 in |0> and qubit 1 in |1>."""
        return cls.basis(len(bits), int(bits, 2))

    @classmethod
    def plus(cls, q: int) -> StateVector:
        return cls(q, np.full(1 << q, 2 ** (-q / 2), dtype=complex))

    @classmethod
    def random(cls, q: int, seed: int = 0) -> StateVector:
        rng = np.random.default_rng(seed)
        v = rng.normal(size=1 << q) + 1j * rng.normal(size=1 << q)
        return cls(q, v / np.linalg.norm(v))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> StateVector:
        return StateVector(self.q, self.amps / self.norm)

    def inner(self, other: StateVector) -> complex:
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: StateVector) -> float:
        return abs(self.inner(other)) ** 2


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """``a`` on the low-index (most significant) qubits."""
    return StateVector(a.q + b.q, np.kron(a.amps, b.amps))


def fidelity(a: StateVector, b: StateVector) -> float:
    return a.fidelity(b)


def _apply_matrix(psi: np.ndarray, q: int, mat: np.ndarray, qubits: tuple[int, ...]) -> np.ndarray:
    m = len(qubits)
    t = psi.reshape((2,) * q)
    g = mat.reshape((2,) * (2 * m))
    t = np.tensordot(g, t, axes=(list(range(m, 2 * m)), list(qubits)))
    t = np.moveaxis(t, list(range(m)), list(qubits))
    return t.reshape(-1)


def apply(sv: StateVector, c: Circuit, times: int = 1) -> StateVector:
    if c.width != sv.q:
        raise ValueError(f"circuit width {c.width} does not match {sv.q} qubits")
    psi = sv.amps
    for _ in range(times):
        for gt in c.gates:
            psi = _apply_matrix(psi, sv.q, _complex_gate(gt.kind, gt.param), gt.qubits)
    out = StateVector(sv.q, psi)
    if abs(out.norm - sv.norm) > NORM_TOL * max(1.0, sv.norm):
        raise MismatchError("norm drifted during simulation")
    return out


def _periodicity(c: Circuit) -> int:
    m = pauli_periodicity(to_tableau(c))
    if m is None:
        raise ValueError("circuit is not Pauli-periodic")
    return m


def projector_state(c: Circuit, psi0: StateVector) -> tuple[StateVector, float]:
    """Normalised ``sum_{r < 2^m} U^r psi0`` and the norm of the raw sum.

    At ``m = 0`` two terms are used so that the sum still projects onto an
    eigenspace of ``U``.
    """
    terms = 1 << max(_periodicity(c), 1)
    acc = np.zeros_like(psi0.amps)
    cur = psi0
    for _ in range(terms):
        acc = acc + cur.amps
        cur = apply(cur, c)
    weight = float(np.linalg.norm(acc))
    if weight < 1e-12:
        raise ZeroProjection("projected vector vanishes")
    return StateVector(psi0.q, acc / weight), weight


def eigen_residual(sv: StateVector, c: Circuit, angle: float) -> float:
    return float(np.linalg.norm(apply(sv, c).amps - cmath.exp(1j * angle) * sv.amps))


def _shifted_controlled(c: Circuit, control: int, offset: int, width: int) -> Circuit:
    cu = controlled(c)
    mapping = [control] + [offset + i for i in range(c.width)]
    return cu.remap(mapping, width)


def prepare_catalyst(
    c: Circuit, k: int, target: StateVector | None = None
) -> tuple[StateVector, float]:
    """Post-selected phase estimation for the ``e^{i pi / 2^k}`` eigenspace.

    Returns the normalised target register and the exact probability of the
    accepted outcome. ``target`` defaults to a fixed generic state.
    """
    n = c.width
    anc = k + 1
    if anc + n > MAX_QUBITS:
        raise ValueError(f"{anc + n} qubits exceeds the limit of {MAX_QUBITS}")
    if not exact.spectrum_contains(to_exact(c), Fraction(1, 2**k)):
        raise NoSuchEigenphase(f"U has no eigenvalue exp(i pi / {2**k})")
    if target is None:
        target = StateVector.random(n, seed=0)
    if target.q != n:
        raise ValueError("target register size mismatch")
    width = anc + n
    state = tensor(StateVector.plus(anc), target)
    for j in range(anc):
        state = apply(state, _shifted_controlled(c, j, anc, width), times=2**j)
    size = 1 << anc
    blocks = state.amps.reshape(size, 1 << n)
    # matrix row a -> y with ancilla j as bit j of y
    y_of = [int(format(a, f"0{anc}b")[::-1], 2) for a in range(size)]
    by_y = np.empty_like(blocks)
    by_y[y_of] = blocks
    phases = np.exp(-2j * math.pi * np.arange(size) / size)  # inverse QFT row for y' = 1
    post = (phases[:, None] * by_y).sum(axis=0) / math.sqrt(size)
    prob = float(np.vdot(post, post).real)
    if prob < 1e-12:
        raise PostSelectImpossible("accepted outcome has vanishing probability")
    out = StateVector(n, post / math.sqrt(prob))
    if eigen_residual(out, c, math.pi / 2**k) > EIGEN_TOL:
        raise MismatchError("post-selected state is not the expected eigenvector")
    return out, prob


@dataclass
class KickbackReport:
    k: int
    control_fidelity: float
    catalyst_fidelity: float
    joint_fidelity: float

    @property
    def passed(self) -> bool:
        return self.control_fidelity >= 1 - 1e-8 and self.catalyst_fidelity >= 1 - 1e-10

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "control_fidelity": self.control_fidelity,
            "catalyst_fidelity": self.catalyst_fidelity,
            "joint_fidelity": self.joint_fidelity,
            "passed": self.passed,
        }


def kickback(catalyst: StateVector, c: Circuit, k: int) -> KickbackReport:
    """Apply controlled(U) to |+> (x) catalyst and compare with Z^(1/2^k)|+>."""
    if eigen_residual(catalyst, c, math.pi / 2**k) > EIGEN_TOL:
        raise NotAnEigenstate(f"catalyst is not an exp(i pi / {2**k}) eigenstate")
    n = c.width
    out = apply(tensor(StateVector.plus(1), catalyst), controlled(c))
    want_ctrl = apply(StateVector.plus(1), Circuit(1, [Gate("ZPOW", (0,), k)]))
    joint = fidelity(tensor(want_ctrl, catalyst), out)
    mat = out.amps.reshape(2, 1 << n)
    rho_ctrl = mat @ mat.conj().T
    rho_cat = mat.T @ mat.conj()
    ctrl_f = float(np.real(want_ctrl.amps.conj() @ rho_ctrl @ want_ctrl.amps))
    cat_f = float(np.real(catalyst.amps.conj() @ rho_cat @ catalyst.amps))
    return KickbackReport(k, ctrl_f, cat_f, joint)


# ---------------------------------------------------------------------------
# Finding a small Clifford with a pi/4 eigenphase

SEARCH_ALPHABET = (
    Gate("H", (0,)),
    Gate("H", (1,)),
    Gate("S", (0,)),
    Gate("S", (1,)),
    Gate("CNOT", (0, 1)),
)


def find_eighth_root_clifford(
    max_len: int = 6, periodicity: int | None = 1, entangling: bool = True
) -> Circuit | None:
    """Shortest two-qubit word over {H, S, CNOT} with an eigenvalue e^{i pi/4}.

    Breadth-first in word length, lexicographic within a length, skipping
    words whose matrix was already seen. With ``entangling`` the word must
    contain a CNOT.
    """
    seen = {to_exact(Circuit(2, [])).key}
    frontier = deque([()])
    for _ in range(max_len):
        nxt = deque()
        for word in frontier:
            for gt in SEARCH_ALPHABET:
                cand = word + (gt,)
                circ = Circuit(2, cand)
                u = to_exact(circ)
                if u.key in seen:
                    continue
                seen.add(u.key)
                nxt.append(cand)
                m = pauli_periodicity(to_tableau(circ))
                if m is None or (periodicity is not None and m != periodicity):
                    continue
                if entangling and all(g.kind != "CNOT" for g in cand):
                    continue
                if exact.spectrum_contains(u, Fraction(1, 4)):
                    return circ
        frontier = nxt
    return None


def level_cross_check(c: Circuit, k: int, cap: int = 5) -> dict:
    """Hierarchy level of controlled(U) against that of Z^(1/2^k)."""
    from .hierarchy import exact_level

    cu_level = exact_level(exact.controlled(to_exact(c)), cap).level
    phase_level = exact_level(to_exact(Circuit(1, [Gate("ZPOW", (0,), k)])), cap).level
    return {"cu_level": cu_level, "phase_gate_level": phase_level, "match": cu_level == phase_level}


__all__ = [
    "StateVector",
    "apply",
    "tensor",
    "fidelity",
    "projector_state",
    "prepare_catalyst",
    "kickback",
    "KickbackReport",
    "find_eighth_root_clifford",
    "level_cross_check",
    "eigen_residual",
]

