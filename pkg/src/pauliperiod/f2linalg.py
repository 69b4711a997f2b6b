"""Dense linear algebra over GF(2).

Matrices are stored row-major with each row packed into a single Python
integer: bit ``j`` of ``rows[i]`` is entry ``(i, j)``. Python integers are
arbitrary width, so one "word" holds the whole row and bits past ``cols``
are always zero. Equality and hashing therefore compare packed rows directly.

Symplectic conventions: vectors in F2^(2n) are ordered ``(x_0..x_{n-1},
z_0..z_{n-1})`` and the form is ``Omega = [[0, I], [I, 0]]``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, NotNilpotent, SingularMatrix


def _iter_bits(word: int):
    while word:
        low = word & -word
        yield low.bit_length() - 1
        word ^= low


class F2Matrix:
    """Immutable bit matrix over GF(2)."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[int]):
        rows = tuple(rows)
        if len(rows) != nrows:
            raise DimensionError(f"expected {nrows} rows, got {len(rows)}")
        mask = (1 << ncols) - 1
        for r in rows:
            if r < 0 or r & ~mask:
                raise DimensionError("row word has bits beyond the column count")
        self.rows: tuple[int, ...] = rows
        self.nrows = nrows
        self.ncols = ncols
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> F2Matrix:
        ncols = nrows if ncols is None else ncols
        return cls(nrows, ncols, [0] * nrows)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]]) -> F2Matrix:
        data = [list(r) for r in data]
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        words = []
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged row data")
            w = 0
            for j, v in enumerate(r):
                if v & 1:
                    w |= 1 << j
            words.append(w)
        return cls(nrows, ncols, words)

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> F2Matrix:
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise DimensionError("expected a 2-D array")
        return cls.from_rows((arr % 2).astype(int).tolist())

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[int]) -> F2Matrix:
        """Build from packed column vectors (bit i of ``cols[j]`` is entry (i, j))."""
        rows = [0] * nrows
        for j, c in enumerate(cols):
            for i in _iter_bits(c):
                if i >= nrows:
                    raise DimensionError("column vector longer than nrows")
                rows[i] |= 1 << j
        return cls(nrows, len(cols), rows)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[F2Matrix]]) -> F2Matrix:
        rows: list[int] = []
        ncols = sum(b.ncols for b in blocks[0])
        for brow in blocks:
            h = brow[0].nrows
            if any(b.nrows != h for b in brow) or sum(b.ncols for b in brow) != ncols:
                raise DimensionError("inconsistent block shapes")
            for i in range(h):
                word, shift = 0, 0
                for b in brow:
                    word |= b.rows[i] << shift
                    shift += b.ncols
                rows.append(word)
        return cls(len(rows), ncols, rows)

    @classmethod
    def direct_sum(cls, a: F2Matrix, b: F2Matrix) -> F2Matrix:
        return cls.block([[a, cls.zeros(a.nrows, b.ncols)], [cls.zeros(b.nrows, a.ncols), b]])

    # -- basic access -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(idx)
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> int:
        """Packed column ``j`` (bit i is entry (i, j))."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                out |= 1 << i
        return out

    def to_list(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.to_list(), dtype=np.uint8).reshape(self.nrows, self.ncols)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> F2Matrix:
        mask = (1 << (c1 - c0)) - 1
        return F2Matrix(r1 - r0, c1 - c0, [(r >> c0) & mask for r in self.rows[r0:r1]])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join("".join(str(v) for v in row) for row in self.to_list())
        return f"F2Matrix({self.nrows}x{self.ncols}: {body})"

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_identity(self) -> bool:
        return self.is_square and all(r == 1 << i for i, r in enumerate(self.rows))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: F2Matrix) -> F2Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return F2Matrix(self.nrows, self.ncols, [a ^ b for a, b in zip(self.rows, other.rows)])

    __sub__ = __add__

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        return mul(self, other)

    def apply(self, vec: int) -> int:
        """Matrix-vector product with a packed column vector."""
        out = 0
        for i, r in enumerate(self.rows):
            if bin(r & vec).count("1") & 1:
                out |= 1 << i
        return out

    def transpose(self) -> F2Matrix:
        return F2Matrix.from_columns(self.ncols, self.rows)

    @property
    def T(self) -> F2Matrix:
        return self.transpose()

    def inverse(self) -> F2Matrix:
        return inverse(self)


def mul(a: F2Matrix, b: F2Matrix) -> F2Matrix:
    """GF(2) matrix product; row i of the result is the XOR of rows of ``b``
    selected by the set bits of row i of ``a``."""
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        while r:
            low = r & -r
            acc ^= brows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return F2Matrix(a.nrows, b.ncols, out)


def _require_square(a: F2Matrix) -> None:
    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.shape}")


def pow2(a: F2Matrix, t: int) -> F2Matrix:
    """``a ** (2 ** t)`` by ``t`` repeated squarings."""
    _require_square(a)
    for _ in range(t):
        a = mul(a, a)
    return a


def matpow(a: F2Matrix, e: int) -> F2Matrix:
    _require_square(a)
    result = F2Matrix.identity(a.nrows)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def rank(a: F2Matrix) -> int:
    rows = list(a.rows)
    r = 0
    for col in range(a.ncols):
        bit = 1 << col
        piv = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        r += 1
    return r


def inverse(a: F2Matrix) -> F2Matrix:
    _require_square(a)
    n = a.nrows
    rows = list(a.rows)
    inv = [1 << i for i in range(n)]
    for col in range(n):
        bit = 1 << col
        piv = next((i for i in range(col, n) if rows[i] & bit), None)
        if piv is None:
            raise SingularMatrix("matrix is singular over GF(2)")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        for i in range(n):
            if i != col and rows[i] & bit:
                rows[i] ^= rows[col]
                inv[i] ^= inv[col]
    return F2Matrix(n, n, inv)


def symplectic_form(n: int) -> F2Matrix:
    """``Omega = [[0, I_n], [I_n, 0]]`` in (x, z) ordering."""
    rows = [1 << (n + i) for i in range(n)] + [1 << i for i in range(n)]
    return F2Matrix(2 * n, 2 * n, rows)


def symplectic_product(u: int, v: int, n: int) -> int:
    """``u^T Omega v`` for packed (x, z) vectors of length 2n."""
    mask = (1 << n) - 1
    ux, uz = u & mask, u >> n
    vx, vz = v & mask, v >> n
    return bin((ux & vz) ^ (uz & vx)).count("1") & 1


def is_symplectic(f: F2Matrix) -> bool:
    _require_square(f)
    if f.nrows % 2:
        raise DimensionError("symplectic matrices have even dimension")
    n = f.nrows // 2
    omega = symplectic_form(n)
    return mul(mul(f.transpose(), omega), f) == omega


def symplectic_inverse(f: F2Matrix) -> F2Matrix:
    """Inverse of a symplectic matrix, ``Omega f^T Omega``."""
    omega = symplectic_form(f.nrows // 2)
    return mul(mul(omega, f.transpose()), omega)


def nilpotency_index(n: F2Matrix) -> int:
    """Smallest ``r >= 1`` with ``n ** r == 0`` (the zero matrix has index 1).

    Uses binary lifting over the powers ``n, n^2, n^4, ...`` so only
    ``O(log dim)`` products are needed.
    """
    _require_square(n)
    dim = n.nrows
    if n.is_zero():
        return 1
    powers = [n]
    while (1 << len(powers)) <= dim:
        powers.append(mul(powers[-1], powers[-1]))
    # powers[j] = n^(2^j); dim < 2^len(powers)
    if not _nilpotent_by(powers, dim):
        raise NotNilpotent("matrix is not nilpotent")
    acc = F2Matrix.identity(dim)
    r = 0
    for j in range(len(powers) - 1, -1, -1):
        cand = mul(acc, powers[j])
        if not cand.is_zero():
            acc = cand
            r += 1 << j
    return r + 1


def _nilpotent_by(powers: list[F2Matrix], dim: int) -> bool:
    # n^dim == 0 check assembled from the stored squares
    acc = F2Matrix.identity(powers[0].nrows)
    for j, p in enumerate(powers):
        if (dim >> j) & 1:
            acc = mul(acc, p)
    return acc.is_zero()


def is_unipotent(f: F2Matrix) -> bool:
    _require_square(f)
    try:
        nilpotency_index(f + F2Matrix.identity(f.nrows))
    except NotNilpotent:
        return False
    return True


def two_power_order(f: F2Matrix) -> int | None:
    """Smallest ``m >= 0`` with ``f ** (2 ** m) == I``, or ``None`` when ``f``
    has no 2-power order (equivalently, is not unipotent)."""
    _require_square(f)
    if rank(f) != f.nrows:
        raise SingularMatrix("two_power_order needs an invertible matrix")
    try:
        r = nilpotency_index(f + F2Matrix.identity(f.nrows))
    except NotNilpotent:
        return None
    return (r - 1).bit_length()
