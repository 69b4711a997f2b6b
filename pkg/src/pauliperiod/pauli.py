"""Pauli strings and Clifford tableaux over GF(2).

A :class:`PauliString` on ``n`` qubits is ``i**phase * X^x Z^z`` where ``x``
and ``z`` are packed bit masks (bit ``j`` is qubit ``j``) and
``X^x Z^z = (prod_j X_j^x_j)(prod_j Z_j^z_j)``.

A :class:`CliffordTableau` stores the conjugation action of a Clifford ``U``
on the generators ``X_0..X_{n-1}, Z_0..Z_{n-1}``. Column ``j`` of the
symplectic matrix ``f`` is the (x, z) label of ``U g_j U^dag``; the sign bit
``j`` says whether that image is ``+`` or ``-`` the Hermitian letter-form
Pauli (``Y`` written as a letter, not as ``XZ``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from . import f2linalg as f2
from .errors import DimensionError, MalformedTableau
from .f2linalg import F2Matrix


def _popcount(v: int) -> int:
    return bin(v).count("1")


_LETTERS = {(0, 0): "_", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise DimensionError("x/z bits exceed the qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    @classmethod
    def single(cls, n: int, letter: str, qubit: int) -> PauliString:
        return cls.from_label(("_" * qubit) + letter + "_" * (n - qubit - 1))

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """Parse labels like ``"-iXZ_Y"``; qubit 0 is the leftmost letter."""
        label = label.strip()
        phase = 0
        for prefix, p in (("+i", 1), ("-i", 3), ("i", 1), ("+", 0), ("-", 2)):
            if label.startswith(prefix):
                phase, label = p, label[len(prefix):]
                break
        x = z = 0
        ys = 0
        for j, ch in enumerate(label):
            ch = ch.upper()
            if ch in "_I":
                continue
            if ch == "X":
                x |= 1 << j
            elif ch == "Z":
                z |= 1 << j
            elif ch == "Y":
                x |= 1 << j
                z |= 1 << j
                ys += 1
            else:
                raise ValueError(f"bad Pauli letter {ch!r}")
        # Y = i X Z
        return cls(len(label), x, z, phase + ys)

    @property
    def letter_phase(self) -> int:
        """Phase exponent when the operator is written with letter ``Y``."""
        return (self.phase - _popcount(self.x & self.z)) % 4

    @property
    def is_hermitian(self) -> bool:
        return self.letter_phase % 2 == 0

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def vector(self) -> int:
        """Packed (x, z) label in F2^(2n)."""
        return self.x | (self.z << self.n)

    @classmethod
    def from_vector(cls, n: int, vec: int, letter_phase: int = 0) -> PauliString:
        x, z = vec & ((1 << n) - 1), vec >> n
        return cls(n, x, z, letter_phase + _popcount(x & z))

    def label(self) -> str:
        letters = "".join(
            _LETTERS[((self.x >> j) & 1, (self.z >> j) & 1)] for j in range(self.n)
        )
        return _PHASE_PREFIX[self.letter_phase] + letters

    def __str__(self) -> str:
        return self.label()

    def __mul__(self, other: PauliString) -> PauliString:
        return pauli_mul(self, other)

    def commutes(self, other: PauliString) -> bool:
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    def with_phase(self, phase: int) -> PauliString:
        return PauliString(self.n, self.x, self.z, phase)


def pauli_mul(p: PauliString, q: PauliString) -> PauliString:
    """Product ``p * q``; moving ``Z^z1`` past ``X^x2`` costs ``(-1)^(z1.x2)``."""
    if p.n != q.n:
        raise DimensionError(f"Pauli size mismatch {p.n} vs {q.n}")
    phase = p.phase + q.phase + 2 * _popcount(p.z & q.x)
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z, phase)


# ---------------------------------------------------------------------------
# Tableau row updates. ``rows`` is a mutable list of 2n packed rows of f
# (row q = x bit of qubit q across all generator images, row n+q = z bit) and
# ``r`` the packed sign bits. Each update conjugates every image by the gate.


def _h(rows, r, n, q):
    xq, zq = rows[q], rows[n + q]
    rows[q], rows[n + q] = zq, xq
    return r ^ (xq & zq)


def _s(rows, r, n, q):
    r ^= rows[q] & rows[n + q]
    rows[n + q] ^= rows[q]
    return r


def _cnot(rows, r, n, c, t, mask):
    xc, zc, xt, zt = rows[c], rows[n + c], rows[t], rows[n + t]
    r ^= xc & zt & (~(xt ^ zc) & mask)
    rows[t] = xt ^ xc
    rows[n + c] = zc ^ zt
    return r


def apply_gate_rows(rows: list[int], r: int, n: int, kind: str, qubits: Sequence[int]) -> int:
    """Conjugate all images by one Clifford gate; returns the new sign mask."""
    mask = (1 << (2 * n)) - 1
    if kind == "H":
        return _h(rows, r, n, qubits[0])
    if kind == "S":
        return _s(rows, r, n, qubits[0])
    if kind == "SDG":
        q = qubits[0]
        r = _s(rows, r, n, q)
        return r ^ rows[q]
    if kind == "SX":
        q = qubits[0]
        r = _h(rows, r, n, q)
        r = _s(rows, r, n, q)
        return _h(rows, r, n, q)
    if kind == "X":
        return r ^ rows[n + qubits[0]]
    if kind == "Z":
        return r ^ rows[qubits[0]]
    if kind == "Y":
        q = qubits[0]
        return r ^ rows[q] ^ rows[n + q]
    if kind == "CNOT":
        return _cnot(rows, r, n, qubits[0], qubits[1], mask)
    if kind == "CZ":
        c, t = qubits
        r = _h(rows, r, n, t)
        r = _cnot(rows, r, n, c, t, mask)
        return _h(rows, r, n, t)
    if kind == "SWAP":
        a, b = qubits
        r = _cnot(rows, r, n, a, b, mask)
        r = _cnot(rows, r, n, b, a, mask)
        return _cnot(rows, r, n, a, b, mask)
    raise ValueError(f"{kind} is not a tableau gate")


TABLEAU_GATES = frozenset({"H", "S", "SDG", "SX", "X", "Y", "Z", "CNOT", "CZ", "SWAP"})


class CliffordTableau:
    """A Clifford unitary up to global phase."""

    __slots__ = ("n", "f", "sign_bits", "__dict__")

    def __init__(self, n: int, f: F2Matrix, sign_bits: int = 0, check: bool = True):
        if f.shape != (2 * n, 2 * n):
            raise DimensionError(f"tableau matrix must be {2 * n}x{2 * n}")
        if check and not f2.is_symplectic(f):
            raise MalformedTableau("matrix is not symplectic")
        self.n = n
        self.f = f
        self.sign_bits = sign_bits & ((1 << (2 * n)) - 1)

    @classmethod
    def identity(cls, n: int) -> CliffordTableau:
        return cls(n, F2Matrix.identity(2 * n), 0, check=False)

    @classmethod
    def from_images(cls, n: int, images: Sequence[PauliString]) -> CliffordTableau:
        """Images of ``X_0..X_{n-1}, Z_0..Z_{n-1}`` in that order."""
        if len(images) != 2 * n:
            raise DimensionError("need 2n generator images")
        sign = 0
        for j, img in enumerate(images):
            if img.n != n:
                raise DimensionError("image size mismatch")
            lp = img.letter_phase
            if lp % 2:
                raise MalformedTableau(f"image {img} of generator {j} is not Hermitian")
            if lp == 2:
                sign |= 1 << j
        f = F2Matrix.from_columns(2 * n, [img.vector for img in images])
        return cls(n, f, sign)

    @classmethod
    def from_gates(cls, n: int, gates: Sequence[tuple[str, Sequence[int]]]) -> CliffordTableau:
        rows = list(F2Matrix.identity(2 * n).rows)
        r = 0
        for kind, qubits in gates:
            r = apply_gate_rows(rows, r, n, kind, qubits)
        return cls(n, F2Matrix(2 * n, 2 * n, rows), r, check=False)

    @classmethod
    def from_pauli(cls, p: PauliString) -> CliffordTableau:
        n = p.n
        images = []
        for j in range(2 * n):
            g = PauliString.from_vector(n, 1 << j)
            images.append(g if p.commutes(g) else g.with_phase(g.phase + 2))
        return cls.from_images(n, images)

    @property
    def signs(self) -> tuple[int, ...]:
        """Per-generator phase entries in Z4 (always 0 or 2)."""
        return tuple(2 * ((self.sign_bits >> j) & 1) for j in range(2 * self.n))

    @cached_property
    def images(self) -> tuple[PauliString, ...]:
        return tuple(
            PauliString.from_vector(self.n, self.f.column(j), 2 * ((self.sign_bits >> j) & 1))
            for j in range(2 * self.n)
        )

    def image(self, p: PauliString) -> PauliString:
        return conjugate(self, p)

    def then(self, kind: str, *qubits: int) -> CliffordTableau:
        """Tableau of ``G U`` for gate ``G`` applied after this one."""
        rows = list(self.f.rows)
        r = apply_gate_rows(rows, self.sign_bits, self.n, kind, qubits)
        return CliffordTableau(self.n, F2Matrix(2 * self.n, 2 * self.n, rows), r, check=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return self.n == other.n and self.f == other.f and self.sign_bits == other.sign_bits

    def __hash__(self) -> int:
        return hash((self.n, self.f, self.sign_bits))

    def __matmul__(self, other: CliffordTableau) -> CliffordTableau:
        return compose(self, other)

    def __repr__(self) -> str:
        return "CliffordTableau(" + ", ".join(str(p) for p in self.images) + ")"

    @property
    def is_pauli(self) -> bool:
        return self.f.is_identity()

    def inverse(self) -> CliffordTableau:
        return inverse(self)


def conjugate(t: CliffordTableau, p: PauliString) -> PauliString:
    """``U p U^dag`` for the Clifford ``U`` described by ``t``."""
    if t.n != p.n:
        raise DimensionError(f"tableau on {t.n} qubits, Pauli on {p.n}")
    imgs = t.images
    n = t.n
    out = PauliString(n, 0, 0, p.phase)
    for j in range(n):
        if (p.x >> j) & 1:
            out = pauli_mul(out, imgs[j])
    for j in range(n):
        if (p.z >> j) & 1:
            out = pauli_mul(out, imgs[n + j])
    return out


def compose(a: CliffordTableau, b: CliffordTableau) -> CliffordTableau:
    """Tableau of ``U_a U_b`` (``b`` acts first)."""
    if a.n != b.n:
        raise DimensionError(f"tableau size mismatch {a.n} vs {b.n}")
    return CliffordTableau.from_images(a.n, [conjugate(a, img) for img in b.images])


def tableau_pow(t: CliffordTableau, e: int) -> CliffordTableau:
    if e < 0:
        return tableau_pow(inverse(t), -e)
    result = CliffordTableau.identity(t.n)
    base = t
    while e:
        if e & 1:
            result = compose(result, base)
        base = compose(base, base)
        e >>= 1
    return result


def inverse(t: CliffordTableau) -> CliffordTableau:
    n = t.n
    finv = f2.symplectic_inverse(t.f)
    sign = 0
    for j in range(2 * n):
        candidate = PauliString.from_vector(n, finv.column(j))
        back = conjugate(t, candidate)
        # back is +/- the generator g_j
        if back.letter_phase == 2:
            sign |= 1 << j
    return CliffordTableau(n, finv, sign, check=False)


def tensor(a: CliffordTableau, b: CliffordTableau) -> CliffordTableau:
    """``U_a (x) U_b`` with ``a`` on the low-index qubits."""
    na, nb = a.n, b.n
    n = na + nb

    def lift(p: PauliString, shift: int) -> PauliString:
        return PauliString(n, p.x << shift, p.z << shift, p.phase)

    ia, ib = a.images, b.images
    images = (
        [lift(ia[j], 0) for j in range(na)]
        + [lift(ib[j], na) for j in range(nb)]
        + [lift(ia[na + j], 0) for j in range(na)]
        + [lift(ib[nb + j], na) for j in range(nb)]
    )
    return CliffordTableau.from_images(n, images)


def pauli_periodicity(t: CliffordTableau) -> int | None:
    """Least ``m >= 0`` with ``U^(2^m)`` a Pauli up to phase, or ``None``.

    A Clifford is a Pauli up to phase exactly when its symplectic matrix is
    the identity, so this is the 2-power order of ``f``.
    """
    return f2.two_power_order(t.f)


class CuLevel(NamedTuple):
    level: int
    periodicity: int
    strict: bool


def predicted_cu_level(t: CliffordTableau) -> CuLevel | None:
    """Hierarchy level of the controlled gate predicted from periodicity.

    ``m >= 1`` gives level ``m + 2`` (strict). A Pauli target (``m == 0``)
    gives a Clifford controlled gate; strictness is not claimed because e.g.
    the controlled identity is itself a Pauli. Non-periodic targets return
    ``None``: their controlled versions lie outside the hierarchy.
    """
    m = pauli_periodicity(t)
    if m is None:
        return None
    if m == 0:
        return CuLevel(2, 0, False)
    return CuLevel(m + 2, m, True)
