"""Exact arithmetic in Z[w, 1/sqrt2] with w = exp(i pi/4).

A value is ``(a + b w + c w^2 + d w^3) / sqrt2^k``. Canonical form divides
out every factor of ``sqrt2 = w - w^3`` from the numerator, so ``k`` may be
negative (``sqrt2`` itself is ``1 / sqrt2^-1``). Zero is stored with ``k = 0``.

Matrices share one exponent: an :class:`ExactUnitary` is
``(A0 + A1 w + A2 w^2 + A3 w^3) / sqrt2^k`` with integer arrays ``A0..A3``,
reduced until some entry is no longer divisible by ``sqrt2``. Integer arrays
are int64 while products provably fit; otherwise they switch to Python ints.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DimensionError, NoFiniteOrder
from .pauli import PauliString

OMEGA = cmath.exp(1j * math.pi / 4)
_SQRT2 = math.sqrt(2.0)
_INT64_SAFE = 1 << 62


def _divisible_by_sqrt2(a, b, c, d) -> bool:
    return (a - c) % 2 == 0 and (b - d) % 2 == 0


def _div_sqrt2(a, b, c, d):
    # (a + b w + c w^2 + d w^3)(w - w^3) / 2
    return (b - d) // 2, (a + c) // 2, (b + d) // 2, (c - a) // 2


def _mul_sqrt2(a, b, c, d):
    return b - d, a + c, b + d, c - a


@dataclass(frozen=True)
class RingElem:
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0
    k: int = 0

    @classmethod
    def make(cls, a: int, b: int = 0, c: int = 0, d: int = 0, k: int = 0) -> RingElem:
        if a == b == c == d == 0:
            return cls()
        while _divisible_by_sqrt2(a, b, c, d):
            a, b, c, d = _div_sqrt2(a, b, c, d)
            k -= 1
        return cls(a, b, c, d, k)

    @classmethod
    def omega_power(cls, e: int) -> RingElem:
        e %= 8
        sign = -1 if e >= 4 else 1
        coeffs = [0, 0, 0, 0]
        coeffs[e % 4] = sign
        return cls.make(*coeffs)

    @classmethod
    def sqrt2_power(cls, e: int) -> RingElem:
        return cls.make(1, k=-e)

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return self.a == self.b == self.c == self.d == 0

    def _aligned(self, other: RingElem):
        k = max(self.k, other.k)
        x, y = self.coeffs, other.coeffs
        for _ in range(k - self.k):
            x = _mul_sqrt2(*x)
        for _ in range(k - other.k):
            y = _mul_sqrt2(*y)
        return x, y, k

    def __add__(self, other: RingElem | int) -> RingElem:
        other = _coerce(other)
        x, y, k = self._aligned(other)
        return RingElem.make(*(p + q for p, q in zip(x, y)), k=k)

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return RingElem(-self.a, -self.b, -self.c, -self.d, self.k)

    def __sub__(self, other: RingElem | int) -> RingElem:
        return self + (-_coerce(other))

    def __rsub__(self, other: RingElem | int) -> RingElem:
        return _coerce(other) - self

    def __mul__(self, other: RingElem | int) -> RingElem:
        other = _coerce(other)
        x, y = self.coeffs, other.coeffs
        out = [0, 0, 0, 0]
        for i in range(4):
            if x[i] == 0:
                continue
            for j in range(4):
                s = i + j
                if s < 4:
                    out[s] += x[i] * y[j]
                else:
                    out[s - 4] -= x[i] * y[j]
        return RingElem.make(*out, k=self.k + other.k)

    __rmul__ = __mul__

    def conj(self) -> RingElem:
        # w -> w^7 = -w^3, w^2 -> -w^2, w^3 -> -w
        return RingElem(self.a, -self.d, -self.c, -self.b, self.k)

    def __complex__(self) -> complex:
        v = self.a + self.b * OMEGA + self.c * 1j + self.d * OMEGA ** 3
        return v / (_SQRT2 ** self.k)

    def __repr__(self) -> str:
        return f"RingElem({self.a}, {self.b}, {self.c}, {self.d}, k={self.k})"

    def __str__(self) -> str:
        terms = []
        for coef, sym in zip(self.coeffs, ("", "w", "w^2", "w^3")):
            if coef:
                terms.append(f"{coef}{sym}" if sym == "" or coef not in (1, -1) else ("-" if coef < 0 else "") + sym)
        num = " + ".join(terms) or "0"
        return num if self.k == 0 else f"({num})/sqrt2^{self.k}"


def _coerce(v) -> RingElem:
    if isinstance(v, RingElem):
        return v
    if isinstance(v, (int, np.integer)):
        return RingElem.make(int(v))
    raise TypeError(f"cannot coerce {type(v).__name__} to RingElem")


def ring_add(x: RingElem, y: RingElem) -> RingElem:
    return x + y


def ring_mul(x: RingElem, y: RingElem) -> RingElem:
    return x * y


def ring_conj(x: RingElem) -> RingElem:
    return x.conj()


ONE = RingElem.make(1)
ZERO = RingElem()
OMEGA_ELEM = RingElem.omega_power(1)
PHASES_I = tuple(RingElem.omega_power(2 * e) for e in range(4))  # 1, i, -1, -i


# ---------------------------------------------------------------------------
# Matrices


def _maxabs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(max(abs(int(arr.max())), abs(int(arr.min()))))


def _as_int64_if_safe(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object and _maxabs(arr) < (1 << 31):
        return arr.astype(np.int64)
    return arr


def _poly_matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product of two (4, n, m) / (4, m, p) coefficient stacks mod w^4 = -1."""
    bound = _maxabs(x) * _maxabs(y) * 4 * x.shape[2]
    if x.dtype != object and y.dtype != object and bound < _INT64_SAFE:
        xs, ys = x, y
    else:
        xs, ys = x.astype(object), y.astype(object)
    out = [None] * 4
    for i in range(4):
        for j in range(4):
            prod = xs[i] @ ys[j]
            s = i + j
            if s >= 4:
                s -= 4
                prod = -prod
            out[s] = prod if out[s] is None else out[s] + prod
    return _as_int64_if_safe(np.stack(out))


def _poly_kron(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if _maxabs(x) * _maxabs(y) * 4 >= _INT64_SAFE:
        x, y = x.astype(object), y.astype(object)
    out = [None] * 4
    for i in range(4):
        for j in range(4):
            prod = np.kron(x[i], y[j])
            s = i + j
            if s >= 4:
                s -= 4
                prod = -prod
            out[s] = prod if out[s] is None else out[s] + prod
    return np.stack(out)


def _reduce(coeffs: np.ndarray, k: int) -> tuple[np.ndarray, int]:
    a, b, c, d = coeffs
    if not (a.any() or b.any() or c.any() or d.any()):
        return np.zeros_like(coeffs), 0
    while not (((a - c) % 2).any() or ((b - d) % 2).any()):
        a, b, c, d = (b - d) // 2, (a + c) // 2, (b + d) // 2, (c - a) // 2
        k -= 1
    return np.stack([a, b, c, d]), k


def _scale_sqrt2(coeffs: np.ndarray, e: int) -> np.ndarray:
    a, b, c, d = coeffs
    for _ in range(e):
        a, b, c, d = b - d, a + c, b + d, c - a
    return np.stack([a, b, c, d])


class ExactUnitary:
    """Exact square matrix over Z[w, 1/sqrt2] acting on ``qubits`` qubits.

    Basis index ``i`` has qubit 0 as its most significant bit. The class does
    not insist on unitarity (intermediate products like ``A - B`` are useful);
    :meth:`is_unitary` checks it exactly.
    """

    __slots__ = ("coeffs", "k", "dim", "__dict__")

    def __init__(self, coeffs: np.ndarray, k: int = 0, *, reduced: bool = False):
        coeffs = np.asarray(coeffs)
        if coeffs.ndim != 3 or coeffs.shape[0] != 4 or coeffs.shape[1] != coeffs.shape[2]:
            raise DimensionError("coefficients must have shape (4, d, d)")
        if coeffs.dtype != object:
            coeffs = coeffs.astype(np.int64)
        if not reduced:
            coeffs, k = _reduce(coeffs, k)
        self.coeffs = coeffs
        self.k = k
        self.dim = coeffs.shape[1]

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, dim: int) -> ExactUnitary:
        c = np.zeros((4, dim, dim), dtype=np.int64)
        c[0] = np.eye(dim, dtype=np.int64)
        return cls(c, 0, reduced=True)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[RingElem | int]]) -> ExactUnitary:
        rows = [[_coerce(v) for v in row] for row in entries]
        dim = len(rows)
        kmax = max(v.k for row in rows for v in row if not v.is_zero()) if any(
            not v.is_zero() for row in rows for v in row
        ) else 0
        c = np.zeros((4, dim, dim), dtype=object)
        for i, row in enumerate(rows):
            if len(row) != dim:
                raise DimensionError("matrix must be square")
            for j, v in enumerate(row):
                coef = v.coeffs
                for _ in range(kmax - v.k):
                    coef = _mul_sqrt2(*coef)
                for t in range(4):
                    c[t, i, j] = coef[t]
        return cls(_as_int64_if_safe(c), kmax)

    @classmethod
    def diagonal(cls, entries: Sequence[RingElem | int]) -> ExactUnitary:
        n = len(entries)
        return cls.from_entries([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_pauli(cls, p: PauliString) -> ExactUnitary:
        """Matrix of ``i^phase X^x Z^z`` (PauliString bit j is qubit j)."""
        n = p.n
        dim = 1 << n
        xi = _bits_to_index(p.x, n)
        zi = _bits_to_index(p.z, n)
        c = np.zeros((4, dim, dim), dtype=np.int64)
        # X^x Z^z |j> = (-1)^(z.j) |j ^ x>
        cols = np.arange(dim)
        signs = np.array([(-1) ** (bin(zi & j).count("1") & 1) for j in range(dim)])
        ph = p.phase % 4
        slot = 0 if ph in (0, 2) else 2
        sgn = -1 if ph in (2, 3) else 1
        c[slot, cols ^ xi, cols] = sgn * signs
        return cls(c, 0, reduced=True)

    # -- properties -------------------------------------------------------

    @property
    def qubits(self) -> int:
        return self.dim.bit_length() - 1

    def entry(self, i: int, j: int) -> RingElem:
        return RingElem.make(*(int(self.coeffs[t, i, j]) for t in range(4)), k=self.k)

    def to_complex(self) -> np.ndarray:
        a, b, c, d = (x.astype(float) for x in self.coeffs)
        return (a + b * OMEGA + c * 1j + d * OMEGA ** 3) / (_SQRT2 ** self.k)

    @cached_property
    def key(self) -> bytes:
        """Canonical byte string; equal matrices have equal keys."""
        arr = self.coeffs.astype(np.int64) if self.coeffs.dtype == object and _maxabs(self.coeffs) < _INT64_SAFE else self.coeffs
        if arr.dtype == object:
            return repr((self.k, arr.tolist())).encode()
        return self.k.to_bytes(4, "little", signed=True) + self.dim.to_bytes(4, "little") + arr.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactUnitary):
            return NotImplemented
        return self.dim == other.dim and self.k == other.k and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"ExactUnitary(dim={self.dim}, k={self.k})"

    # -- arithmetic -------------------------------------------------------

    def __matmul__(self, other: ExactUnitary) -> ExactUnitary:
        return mat_mul(self, other)

    def __add__(self, other: ExactUnitary) -> ExactUnitary:
        if self.dim != other.dim:
            raise DimensionError("dimension mismatch")
        k = max(self.k, other.k)
        x = _scale_sqrt2(self.coeffs.astype(object), k - self.k)
        y = _scale_sqrt2(other.coeffs.astype(object), k - other.k)
        return ExactUnitary(_as_int64_if_safe(x + y), k)

    def __neg__(self) -> ExactUnitary:
        return ExactUnitary(-self.coeffs, self.k, reduced=True)

    def __sub__(self, other: ExactUnitary) -> ExactUnitary:
        return self + (-other)

    def scale(self, s: RingElem) -> ExactUnitary:
        return ExactUnitary(_scale_elem(self.coeffs, s), self.k + s.k)

    def dagger(self) -> ExactUnitary:
        return dagger(self)

    def __pow__(self, e: int) -> ExactUnitary:
        return mat_pow(self, e)

    def is_unitary(self) -> bool:
        return mat_mul(self, dagger(self)) == ExactUnitary.identity(self.dim)

    def is_identity(self) -> bool:
        return self == ExactUnitary.identity(self.dim)


def _scale_elem(coeffs: np.ndarray, s: RingElem) -> np.ndarray:
    out = [None] * 4
    big = _maxabs(coeffs) * max(abs(v) for v in s.coeffs) * 4 >= _INT64_SAFE
    src = coeffs.astype(object) if big else coeffs
    for i in range(4):
        for j in range(4):
            if s.coeffs[j] == 0:
                continue
            prod = src[i] * s.coeffs[j]
            t = i + j
            if t >= 4:
                t -= 4
                prod = -prod
            out[t] = prod if out[t] is None else out[t] + prod
    out = [np.zeros_like(src[0]) if o is None else o for o in out]
    return _as_int64_if_safe(np.stack(out))


def _bits_to_index(bits: int, n: int) -> int:
    """PauliString bit j (qubit j) -> basis index bit n-1-j."""
    out = 0
    for j in range(n):
        if (bits >> j) & 1:
            out |= 1 << (n - 1 - j)
    return out


def _index_to_bits(index: int, n: int) -> int:
    return _bits_to_index(index, n)


def mat_mul(u: ExactUnitary, v: ExactUnitary) -> ExactUnitary:
    if u.dim != v.dim:
        raise DimensionError(f"dimension mismatch {u.dim} vs {v.dim}")
    return ExactUnitary(_poly_matmul(u.coeffs, v.coeffs), u.k + v.k)


def dagger(u: ExactUnitary) -> ExactUnitary:
    a, b, c, d = (x.T for x in u.coeffs)
    return ExactUnitary(np.stack([a, -d, -c, -b]), u.k, reduced=True)


def tensor(u: ExactUnitary, v: ExactUnitary) -> ExactUnitary:
    """``u (x) v``; ``u`` acts on the more significant qubits."""
    return ExactUnitary(_as_int64_if_safe(_poly_kron(u.coeffs, v.coeffs)), u.k + v.k)


def controlled(u: ExactUnitary) -> ExactUnitary:
    """``diag(I, u)`` with the control as the most significant qubit."""
    return block_diag(ExactUnitary.identity(u.dim), u)


def block_diag(a: ExactUnitary, b: ExactUnitary) -> ExactUnitary:
    if a.dim != b.dim:
        raise DimensionError("blocks must have equal size")
    k = max(a.k, b.k)
    ac = _scale_sqrt2(a.coeffs.astype(object), k - a.k)
    bc = _scale_sqrt2(b.coeffs.astype(object), k - b.k)
    d = a.dim
    out = np.zeros((4, 2 * d, 2 * d), dtype=object)
    out[:, :d, :d] = ac
    out[:, d:, d:] = bc
    return ExactUnitary(_as_int64_if_safe(out), k)


def blocks(u: ExactUnitary) -> tuple[ExactUnitary, ExactUnitary, ExactUnitary, ExactUnitary]:
    """Split into 2x2 blocks with respect to the most significant qubit."""
    d = u.dim // 2
    c = u.coeffs
    return (
        ExactUnitary(c[:, :d, :d].copy(), u.k),
        ExactUnitary(c[:, :d, d:].copy(), u.k),
        ExactUnitary(c[:, d:, :d].copy(), u.k),
        ExactUnitary(c[:, d:, d:].copy(), u.k),
    )


def mat_pow(u: ExactUnitary, e: int) -> ExactUnitary:
    if e < 0:
        return mat_pow(dagger(u), -e)
    result = ExactUnitary.identity(u.dim)
    base = u
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def embed(gate: ExactUnitary, qubits: Sequence[int], width: int) -> ExactUnitary:
    """Place a gate acting on ``qubits`` (first listed = most significant
    qubit of the gate matrix) into a ``width``-qubit identity."""
    r = len(qubits)
    if gate.dim != 1 << r:
        raise DimensionError("gate size does not match qubit count")
    if len(set(qubits)) != r or any(not 0 <= q < width for q in qubits):
        raise DimensionError(f"bad qubit indices {qubits} for width {width}")
    dim = 1 << width
    idx = np.arange(dim)
    sub = np.zeros(dim, dtype=np.int64)
    for pos, q in enumerate(qubits):
        sub |= ((idx >> (width - 1 - q)) & 1) << (r - 1 - pos)
    qmask = 0
    for q in qubits:
        qmask |= 1 << (width - 1 - q)
    rest = idx & ~qmask
    same = rest[:, None] == rest[None, :]
    out = np.zeros((4, dim, dim), dtype=gate.coeffs.dtype)
    for t in range(4):
        out[t] = np.where(same, gate.coeffs[t][sub[:, None], sub[None, :]], 0)
    return ExactUnitary(out, gate.k, reduced=True)


# ---------------------------------------------------------------------------
# Pauli recognition and spectra


def global_phase_between(u: ExactUnitary, v: ExactUnitary) -> RingElem | None:
    """Return ``lam`` with ``u == lam * v`` for a unit-modulus scalar.

    The only unit-modulus elements of the ring are the powers of ``w``.
    """
    if u.dim != v.dim:
        return None
    for e in range(8):
        lam = RingElem.omega_power(e)
        if v.scale(lam) == u:
            return lam
    return None


def is_pauli_up_to_phase(u: ExactUnitary) -> tuple[PauliString, RingElem] | None:
    """Decompose ``u = lam * X^x Z^z``; returns the Pauli and ``lam``.

    ``lam`` is any unit scalar of the ring (the caller decides whether it
    must lie in {+-1, +-i}). Returns ``None`` if ``u`` is not of this form.
    """
    dim = u.dim
    n = u.qubits
    if dim != 1 << n:
        raise DimensionError("dimension must be a power of two")
    c = u.coeffs
    nz = (c != 0).any(axis=0)
    if not (nz.sum(axis=0) == 1).all():
        return None
    x_index = int(np.argmax(nz[:, 0]))
    lam = u.entry(x_index, 0)
    cols = np.arange(dim)
    if not nz[cols ^ x_index, cols].all():
        return None
    z_index = 0
    lam_c = lam.coeffs
    for b in range(n):
        col = 1 << b
        ent = tuple(int(c[t, col ^ x_index, col]) for t in range(4))
        if ent == lam_c:
            continue
        if ent == tuple(-v for v in lam_c):
            z_index |= col
        else:
            return None
    signs = np.array([1 - 2 * (bin(z_index & j).count("1") & 1) for j in range(dim)])
    expected = np.asarray(lam_c, dtype=object).reshape(4, 1) * signs.reshape(1, dim)
    got = c[:, cols ^ x_index, cols].astype(object)
    if not (got == expected).all():
        return None
    if lam * lam.conj() != ONE:
        return None
    p = PauliString(n, _index_to_bits(x_index, n), _index_to_bits(z_index, n), 0)
    return p, lam


def order_of_exact(u: ExactUnitary, cap: int = 1024) -> int | None:
    """Smallest ``e`` in ``1..cap`` with ``u**e == I``."""
    ident = ExactUnitary.identity(u.dim)
    acc = u
    for e in range(1, cap + 1):
        if acc == ident:
            return e
        acc = mat_mul(acc, u)
    return None


def eigenphase_spectrum(u: ExactUnitary, cap: int = 1024, tol: float = 1e-9) -> list[tuple[Fraction, int]]:
    """Eigenphases as exact multiples of pi in ``[0, 2)`` with multiplicities.

    The exact order ``r`` of ``u`` is found first; every eigenvalue is then an
    ``r``-th root of unity, so numerically computed angles are snapped to
    the lattice ``2 pi / r``.
    """
    if u.dim > 64:
        raise DimensionError("spectra are limited to 6 qubits")
    order = order_of_exact(u, cap)
    if order is None:
        raise NoFiniteOrder(f"no finite order up to {cap}")
    vals = np.linalg.eigvals(u.to_complex())
    counts: dict[Fraction, int] = {}
    for lam in vals:
        steps = np.angle(lam) / (2 * math.pi) * order
        snapped = round(steps)
        if abs(steps - snapped) > tol * order or abs(abs(lam) - 1) > 1e-6:
            raise NoFiniteOrder("eigenvalue failed to snap to a root of unity")
        frac = Fraction(2 * (snapped % order), order)
        counts[frac] = counts.get(frac, 0) + 1
    return sorted(counts.items())


def spectrum_contains(u: ExactUnitary, angle_over_pi: Fraction, cap: int = 1024) -> bool:
    return any(a == angle_over_pi for a, _ in eigenphase_spectrum(u, cap))
