"""Total unimodularity: exact testing, the I-sum construction, TU-preserving operations."""
from __future__ import annotations

import itertools
import random
from bisect import bisect_left
from dataclasses import dataclass
from typing import Sequence

import numpy as np

ENTRY_BOUND = 10
SIZE_GUARD = 12
MAX_SUBMATRICES = 2_000_000


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        for row in self.entries:
            for a in row:
                if abs(a) > ENTRY_BOUND:
                    raise ValueError(f"entry {a} exceeds the bound {ENTRY_BOUND}")

    @classmethod
    def of(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(int(a) for a in r) for r in np.asarray(rows, dtype=np.int64)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))


@dataclass(frozen=True)
class TUResult:
    """Verdict of a TU test; ``rows``/``cols``/``det`` describe a violating submatrix."""

    is_tu: bool
    rows: tuple[int, ...] | None = None
    cols: tuple[int, ...] | None = None
    det: int | None = None
    exhaustive: bool = True

    def __bool__(self) -> bool:
        return self.is_tu


def i_sum(A: IntMatrix, n_fold: int) -> IntMatrix:
    """N-fold I-sum: N identity blocks on top, N diagonal copies of A below."""
    if n_fold < 1:
        raise ValueError("n_fold must be >= 1")
    m, n = A.rows, A.cols
    out = np.zeros((m * n_fold + n, n * n_fold), dtype=np.int64)
    a = A.array()
    for h in range(n_fold):
        out[:n, h * n:(h + 1) * n] = np.eye(n, dtype=np.int64)
        out[n + h * m:n + (h + 1) * m, h * n:(h + 1) * n] = a
    return IntMatrix.of(out)


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def is_totally_unimodular(M: IntMatrix, samples: int | None = None, seed: int = 0,
                          max_submatrices: int = MAX_SUBMATRICES) -> TUResult:
    """Check that every square submatrix has determinant in {-1, 0, 1}.

    Minors are built level by level through Laplace expansion along the first row,
    memoising the nonzero minors of the previous level, so the first violation
    found is a smallest one. Zero minors are never stored, which keeps sparse
    matrices cheap. If a level holds more than ``max_submatrices`` nonzero minors,
    ``samples`` random square submatrices are checked instead (the result is then
    marked non-exhaustive); without ``samples`` an OverflowError is raised.
    """
    m, n = M.rows, M.cols
    if min(m, n) > SIZE_GUARD:
        raise ValueError(f"min dimension {min(m, n)} exceeds the guard {SIZE_GUARD}")
    a = M.entries
    for i in range(m):
        for j in range(n):
            if a[i][j] not in (-1, 0, 1):
                return TUResult(False, (i,), (j,), a[i][j])

    # prev[rows] = {cols: det} over the nonzero minors of the current size
    prev: dict[tuple, dict[tuple, int]] = {}
    for i in range(m):
        nz = {(j,): a[i][j] for j in range(n) if a[i][j]}
        if nz:
            prev[(i,)] = nz
    support = [[j for j in range(n) if a[i][j]] for i in range(m)]
    for k in range(2, min(m, n) + 1):
        cur: dict[tuple, dict[tuple, int]] = {}
        stored = 0
        for R in itertools.combinations(range(m), k):
            minors = prev.get(R[1:])
            if not minors or not support[R[0]]:
                continue
            row = a[R[0]]
            acc: dict[tuple, int] = {}
            for C1, minor in minors.items():
                for c in support[R[0]]:
                    if c in C1:
                        continue
                    pos = bisect_left(C1, c)
                    C = C1[:pos] + (c,) + C1[pos:]
                    acc[C] = acc.get(C, 0) + (-1) ** pos * row[c] * minor
            for C in sorted(acc):
                if acc[C] not in (-1, 0, 1):
                    return TUResult(False, R, C, acc[C])
            nz = {C: d for C, d in acc.items() if d}
            if nz:
                cur[R] = nz
                stored += len(nz)
                if stored > max_submatrices:
                    if not samples:
                        raise OverflowError("too many nonzero minors for exhaustive testing")
                    return _sampled_tu(M, samples, seed)
        if not cur:
            break
        prev = cur
    return TUResult(True)


def _sampled_tu(M: IntMatrix, samples: int, seed: int) -> TUResult:
    rng = random.Random(seed)
    m, n = M.rows, M.cols
    a = M.entries
    for _ in range(samples):
        k = rng.randint(1, min(m, n))
        R = tuple(sorted(rng.sample(range(m), k)))
        C = tuple(sorted(rng.sample(range(n), k)))
        det = bareiss_det([[a[i][j] for j in C] for i in R])
        if det not in (-1, 0, 1):
            return TUResult(False, R, C, det, exhaustive=False)
    return TUResult(True, exhaustive=False)


# TU-preserving operations ------------------------------------------------------

def _arr(M: IntMatrix) -> np.ndarray:
    return M.array()


def _check_index(i: int, size: int):
    if not 0 <= i < size:
        raise IndexError(f"index {i} out of range for size {size}")


def permute_rows(M: IntMatrix, perm: Sequence[int]) -> IntMatrix:
    if sorted(perm) != list(range(M.rows)):
        raise IndexError("not a permutation of the rows")
    return IntMatrix.of(_arr(M)[list(perm)])


def permute_cols(M: IntMatrix, perm: Sequence[int]) -> IntMatrix:
    if sorted(perm) != list(range(M.cols)):
        raise IndexError("not a permutation of the columns")
    return IntMatrix.of(_arr(M)[:, list(perm)])


def transpose(M: IntMatrix) -> IntMatrix:
    return IntMatrix.of(_arr(M).T)


def negate_row(M: IntMatrix, i: int) -> IntMatrix:
    _check_index(i, M.rows)
    a = _arr(M)
    a[i] *= -1
    return IntMatrix.of(a)


def negate_col(M: IntMatrix, j: int) -> IntMatrix:
    _check_index(j, M.cols)
    a = _arr(M)
    a[:, j] *= -1
    return IntMatrix.of(a)


def append_row(M: IntMatrix, at: int | None = None, value: int = 1) -> IntMatrix:
    """Append a zero row, or a row whose only nonzero is ``value`` (+-1) in column ``at``."""
    row = np.zeros((1, M.cols), dtype=np.int64)
    if at is not None:
        _check_index(at, M.cols)
        if value not in (-1, 1):
            raise ValueError("singleton entry must be +-1")
        row[0, at] = value
    return IntMatrix.of(np.vstack([_arr(M), row]))


def append_col(M: IntMatrix, at: int | None = None, value: int = 1) -> IntMatrix:
    """Append a zero column, or a column whose only nonzero is ``value`` in row ``at``."""
    return transpose(append_row(transpose(M), at, value))


def repeat_row(M: IntMatrix, i: int) -> IntMatrix:
    _check_index(i, M.rows)
    a = _arr(M)
    return IntMatrix.of(np.vstack([a, a[i:i + 1]]))


def repeat_col(M: IntMatrix, j: int) -> IntMatrix:
    _check_index(j, M.cols)
    a = _arr(M)
    return IntMatrix.of(np.hstack([a, a[:, j:j + 1]]))


# TU on its own, yet its 2-fold I-sum has a 6x6 minor of determinant -2.
ISUM_COUNTEREXAMPLE = IntMatrix(((0, 1, -1, 1),
                                 (1, 0, 1, 0),
                                 (1, 1, 0, 0)))
