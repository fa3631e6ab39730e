"""Exact dense and sparse linear algebra over GF(p), p an odd prime.

All arithmetic is on canonical residues in [0, p) using int64 numpy arrays
(dense) or scipy.sparse matrices in triplet/CSR form (sparse).  Elimination
always picks the first nonzero entry in column order, so every result is
deterministic.  Values are never mutated after construction; all operations
return fresh objects.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import InputError

# Sparse constructions densify beyond this fill ratio.
DENSE_SWITCH = 0.25


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p: int) -> int:
    """Validate a characteristic, returning it; raises InputError otherwise."""
    if not isinstance(p, int) or not is_odd_prime(p):
        raise InputError(f"characteristic must be an odd prime >= 3, got {p!r}")
    return p


@dataclass(frozen=True)
class FieldElement:
    """A residue in GF(p).  Arithmetic reduces to the canonical residue."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise InputError(f"mixed characteristics {self.p} and {other.p}")
            return other
        return FieldElement(int(other), self.p)

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.value - other.value, self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElement(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return FieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(pow(self.value, n, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value


def inverse_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse in GF({p})")
    return pow(a, p - 2, p)


class MatrixFp:
    """An immutable matrix over GF(p).

    Storage is a scipy CSR matrix while the fill ratio stays at or below
    DENSE_SWITCH, and a dense int64 array beyond that.  Entries are always
    canonical residues.  Absent entries are zero.
    """

    __slots__ = ("rows", "cols", "p", "_data", "_dense")

    def __init__(self, rows: int, cols: int, p: int, data, dense: bool):
        self.rows = int(rows)
        self.cols = int(cols)
        self.p = p
        self._data = data
        self._dense = dense

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_entries(cls, rows: int, cols: int, p: int, entries) -> "MatrixFp":
        """Build from an association of (row, col) -> residue.

        `entries` is a dict or an iterable of (i, j, value) triplets.
        Out-of-range indices raise InputError.
        """
        if rows < 0 or cols < 0:
            raise InputError("matrix dimensions must be nonnegative")
        if isinstance(entries, dict):
            triplets = [(i, j, v) for (i, j), v in entries.items()]
        else:
            triplets = [(i, j, v) for i, j, v in entries]
        for i, j, _ in triplets:
            if not (0 <= i < rows and 0 <= j < cols):
                raise InputError(f"entry index ({i},{j}) outside {rows}x{cols}")
        nnz = sum(1 for _, _, v in triplets if int(v) % p != 0)
        if rows * cols > 0 and nnz / (rows * cols) > DENSE_SWITCH:
            a = np.zeros((rows, cols), dtype=np.int64)
            for i, j, v in triplets:
                a[i, j] = (a[i, j] + int(v)) % p
            return cls(rows, cols, p, a, True)
        ii = [i for i, _, _ in triplets]
        jj = [j for _, j, _ in triplets]
        vv = [int(v) % p for _, _, v in triplets]
        m = sp.coo_matrix((vv, (ii, jj)), shape=(rows, cols), dtype=np.int64).tocsr()
        m.sum_duplicates()
        m.data %= p
        m.eliminate_zeros()
        return cls(rows, cols, p, m, False)

    @classmethod
    def from_dense(cls, array, p: int) -> "MatrixFp":
        a = np.asarray(array, dtype=np.int64) % p
        if a.ndim != 2:
            raise InputError(f"expected a 2d array, got shape {a.shape}")
        return cls(a.shape[0], a.shape[1], p, a.copy(), True)

    @classmethod
    def from_sparse(cls, mat: sp.spmatrix, p: int) -> "MatrixFp":
        m = mat.tocsr().astype(np.int64)
        m.data %= p
        m.eliminate_zeros()
        return cls(m.shape[0], m.shape[1], p, m, False)

    @classmethod
    def identity(cls, n: int, p: int) -> "MatrixFp":
        return cls.from_sparse(sp.identity(n, dtype=np.int64, format="csr"), p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "MatrixFp":
        return cls.from_entries(rows, cols, p, {})

    # -- accessors ----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_dense(self) -> bool:
        return self._dense

    def nnz(self) -> int:
        if self._dense:
            return int(np.count_nonzero(self._data))
        return int(self._data.nnz)

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise InputError(f"index ({i},{j}) outside {self.rows}x{self.cols}")
        if self._dense:
            return int(self._data[i, j])
        return int(self._data[i, j])

    def __getitem__(self, ij):
        return self.get(*ij)

    def to_numpy(self) -> np.ndarray:
        if self._dense:
            return self._data.copy()
        return self._data.toarray()

    def to_csr(self) -> sp.csr_matrix:
        if self._dense:
            return sp.csr_matrix(self._data)
        return self._data.copy()

    def __eq__(self, other):
        if not isinstance(other, MatrixFp):
            return NotImplemented
        if self.shape != other.shape or self.p != other.p:
            return False
        return bool(np.array_equal(self.to_numpy(), other.to_numpy()))

    def __repr__(self):
        kind = "dense" if self._dense else "sparse"
        return f"MatrixFp({self.rows}x{self.cols}, p={self.p}, {kind}, nnz={self.nnz()})"

    # -- arithmetic ---------------------------------------------------------

    def _check_compat(self, other: "MatrixFp"):
        if self.p != other.p:
            raise InputError(f"mixed characteristics {self.p} and {other.p}")

    def __add__(self, other: "MatrixFp") -> "MatrixFp":
        self._check_compat(other)
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")
        if self._dense or other._dense:
            return MatrixFp.from_dense(self.to_numpy() + other.to_numpy(), self.p)
        return MatrixFp.from_sparse(self.to_csr() + other.to_csr(), self.p)

    def __sub__(self, other: "MatrixFp") -> "MatrixFp":
        self._check_compat(other)
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")
        if self._dense or other._dense:
            return MatrixFp.from_dense(self.to_numpy() - other.to_numpy(), self.p)
        return MatrixFp.from_sparse(self.to_csr() - other.to_csr(), self.p)

    def scale(self, c: int) -> "MatrixFp":
        c = int(c) % self.p
        if self._dense:
            return MatrixFp.from_dense(self._data * c, self.p)
        m = self.to_csr()
        m.data = (m.data * c) % self.p
        return MatrixFp.from_sparse(m, self.p)

    def __matmul__(self, other: "MatrixFp") -> "MatrixFp":
        self._check_compat(other)
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        if self._dense or other._dense:
            return MatrixFp.from_dense(self.to_numpy() @ other.to_numpy() % self.p, self.p)
        return MatrixFp.from_sparse(self.to_csr() @ other.to_csr(), self.p)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Matrix-vector product on a residue vector."""
        v = np.asarray(vec, dtype=np.int64) % self.p
        if v.shape != (self.cols,):
            raise InputError(f"vector length {v.shape} incompatible with {self.shape}")
        if self._dense:
            return (self._data @ v) % self.p
        return (self._data @ v) % self.p

    def transpose(self) -> "MatrixFp":
        if self._dense:
            return MatrixFp.from_dense(self._data.T, self.p)
        return MatrixFp.from_sparse(self.to_csr().T.tocsr(), self.p)

    def is_zero(self) -> bool:
        return self.nnz() == 0


# -- elimination core --------------------------------------------------------


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p).

    Pivots are the first nonzero entry in column order (no pivoting
    heuristics are needed over an exact field).  Returns (R, pivot_cols).
    """
    a = np.asarray(a, dtype=np.int64).copy() % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = inverse_mod(int(a[r, c]), p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(A: MatrixFp) -> int:
    """Dimension of the column space over GF(p)."""
    _, pivots = rref(A.to_numpy(), A.p)
    return len(pivots)


def kernel_basis(A: MatrixFp) -> list[np.ndarray]:
    """Canonical basis of the right kernel.

    Each vector corresponds to a free column of the reduced echelon form,
    with that coordinate set to 1; vectors are ordered by free column index.
    """
    R, pivots = rref(A.to_numpy(), A.p)
    p = A.p
    pivot_set = set(pivots)
    basis = []
    for f in range(A.cols):
        if f in pivot_set:
            continue
        v = np.zeros(A.cols, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-R[r, f]) % p
        basis.append(v)
    return basis


def solve(A: MatrixFp, b) -> np.ndarray | None:
    """One solution of A x = b, or None when the system is inconsistent.

    Free variables are set to 0, so the answer is deterministic.
    """
    bb = np.asarray(b, dtype=np.int64) % A.p
    if bb.shape != (A.rows,):
        raise InputError(f"rhs length {bb.shape} incompatible with {A.shape}")
    aug = np.concatenate([A.to_numpy(), bb.reshape(-1, 1)], axis=1)
    R, pivots = rref(aug, A.p)
    if pivots and pivots[-1] == A.cols:
        return None
    x = np.zeros(A.cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, A.cols]
    return x


def row_space_basis(vectors: np.ndarray, p: int) -> np.ndarray:
    """Canonical (RREF) basis of the row span of `vectors`."""
    v = np.asarray(vectors, dtype=np.int64).reshape(len(vectors), -1) if len(vectors) else np.zeros((0, 0))
    if len(v) == 0:
        return np.zeros((0, v.shape[1] if v.ndim == 2 else 0), dtype=np.int64)
    R, pivots = rref(v, p)
    return R[: len(pivots)].copy()


def in_row_space(basis_rref: np.ndarray, pivots: list[int], vec: np.ndarray, p: int) -> bool:
    """Membership test against a precomputed RREF basis with known pivots."""
    v = np.asarray(vec, dtype=np.int64).copy() % p
    for r, c in enumerate(pivots):
        if v[c]:
            v = (v - v[c] * basis_rref[r]) % p
    return not v.any()
