"""Exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries in [0, p).  The public
``ExactMatrix`` wrapper carries the field; the underscore helpers work on
raw arrays and are what the rest of the package uses in inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

DEFAULT_PRIME = 7
# keeps every product of two residues (and short dot products) inside int64
MAX_PRIME = 1 << 25


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if self.p >= MAX_PRIME:
            raise ValueError(f"modulus {self.p} too large (limit {MAX_PRIME})")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)


# ----------------------------------------------------------------------------
# raw array kernels


def _mm(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Matrix product mod p; uses exact float64 BLAS when the bound allows."""
    k = a.shape[-1]
    if k * (p - 1) ** 2 < 2**52:
        out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.remainder(out, p).astype(np.int64)
    return np.remainder(
        np.asarray(a, dtype=object) @ np.asarray(b, dtype=object), p
    ).astype(np.int64)


def _rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(_rref(a, p)[1])


def _row_basis(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Nonzero rows of the rref and the pivot columns."""
    if a.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64), []
    r, piv = _rref(a, p)
    return r[: len(piv)], piv


def _kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning {x : a x = 0}, one per free variable.

    The basis is normalised so that it is the reduced column-echelon form of
    the kernel: column for free variable f has a 1 in row f and 0 in every
    other free row.
    """
    rows, cols = a.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = _rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    k = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, pc in enumerate(piv):
            k[pc, j] = (-r[i, f]) % p
    return _col_echelon(k, p)


def _col_echelon(a: np.ndarray, p: int) -> np.ndarray:
    """Reduced column-echelon basis of the column space of ``a``."""
    rb, _ = _row_basis(a.T, p)
    return np.ascontiguousarray(rb.T)


def _pivot_rows(basis: np.ndarray) -> List[int]:
    """Pivot rows of a reduced column-echelon basis."""
    out = []
    for j in range(basis.shape[1]):
        out.append(int(np.flatnonzero(basis[:, j])[0]))
    return out


def _solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    rows, cols = a.shape
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if rows == 0:
        return np.zeros((cols, b.shape[1]), dtype=np.int64)
    aug = np.concatenate([a % p, b % p], axis=1)
    r, piv = _rref(aug, p)
    if any(c >= cols for c in piv):
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, cols:]
    return x


def _inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = _solve(a, np.eye(n, dtype=np.int64), p)
    if x is None or _rank(a, p) < n:
        raise ValueError("matrix is singular")
    return x


def _quotient(h: np.ndarray, n: int, p: int) -> Tuple[np.ndarray, np.ndarray]:
    """Projection and section for F_p^n / colspan(h).

    The quotient basis is the set of non-pivot coordinates of rref(h^T);
    returns (proj, sect) with proj @ sect = I and proj @ h = 0.
    """
    if h.size == 0:
        return np.eye(n, dtype=np.int64), np.eye(n, dtype=np.int64)
    rows, piv = _row_basis(np.ascontiguousarray(h.T), p)
    pset = set(piv)
    keep = [c for c in range(n) if c not in pset]
    proj = np.zeros((len(keep), n), dtype=np.int64)
    for i, c in enumerate(keep):
        proj[i, c] = 1
    if piv:
        # v - rows^T v[piv] is the reduced representative of v
        proj[:, piv] = (-rows[:, keep].T) % p
    sect = np.zeros((n, len(keep)), dtype=np.int64)
    for i, c in enumerate(keep):
        sect[c, i] = 1
    return proj, sect


# ----------------------------------------------------------------------------
# public wrapper


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    data: np.ndarray
    field: FieldSpec = FieldSpec()

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("ExactMatrix needs a 2-d array")
        arr = arr % self.field.p
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int = DEFAULT_PRIME,
                  cols: Optional[int] = None) -> "ExactMatrix":
        if len(rows) == 0:
            return cls(np.zeros((0, cols or 0), dtype=np.int64), FieldSpec(p))
        return cls(np.array(rows, dtype=np.int64), FieldSpec(p))

    @classmethod
    def identity(cls, n: int, p: int = DEFAULT_PRIME) -> "ExactMatrix":
        return cls(np.eye(n, dtype=np.int64), FieldSpec(p))

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int = DEFAULT_PRIME) -> "ExactMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), FieldSpec(p))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    def entries(self) -> List[int]:
        return [int(v) for v in self.data.ravel()]

    def tolist(self) -> List[List[int]]:
        return self.data.tolist()

    def _check(self, other: "ExactMatrix"):
        if self.field != other.field:
            raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return ExactMatrix(_mm(self.data, other.data, self.p), self.field)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        return ExactMatrix(self.data + other.data, self.field)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        return ExactMatrix(self.data - other.data, self.field)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(-self.data, self.field)

    def scale(self, c: int) -> "ExactMatrix":
        return ExactMatrix(self.data * (c % self.p), self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(
            np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.p, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"ExactMatrix(F_{self.p}, {self.tolist()})"

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.data.T, self.field)

    def is_zero(self) -> bool:
        return not self.data.any()


def rref(m: ExactMatrix) -> Tuple[ExactMatrix, List[int]]:
    """Reduced row-echelon form and pivot columns."""
    if m.rows == 0:
        return m, []
    r, piv = _rref(m.data, m.p)
    return ExactMatrix(r, m.field), piv


def rank(m: ExactMatrix) -> int:
    return _rank(m.data, m.p)


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(_kernel(m.data, m.p).reshape(m.cols, -1), m.field)


def solve(m: ExactMatrix, b: ExactMatrix) -> Optional[ExactMatrix]:
    """One solution of m x = b (free variables zero), or None."""
    m._check(b)
    if m.rows != b.rows:
        raise ValueError(f"row count mismatch: {m.rows} vs {b.rows}")
    x = _solve(m.data, b.data, m.p)
    return None if x is None else ExactMatrix(x, m.field)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product; index pair (i, j) maps to i * dim(b) + j."""
    a._check(b)
    return ExactMatrix(np.kron(a.data, b.data), a.field)


def inverse(m: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(_inverse(m.data, m.p), m.field)


__all__ = [
    "DEFAULT_PRIME",
    "FieldSpec",
    "ExactMatrix",
    "is_prime",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "kron",
    "inverse",
]
