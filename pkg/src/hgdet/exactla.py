"""Exact determinant and rank of integer and rational matrices.

Two determinant backends are provided and must always agree:

* ``det_bareiss``: fraction-free elimination on the integer-scaled matrix,
  in sparse storage with Markowitz-style pivoting.  Intermediate entries are
  minors of the input, so every division is exact and no rationals appear.
* ``det_multimodular``: the determinant modulo a batch of 31-bit primes,
  recombined by the Chinese remainder theorem.  The prime batch is sized so
  that its product exceeds twice the Hadamard bound, plus one safety prime
  whose residue must match the reconstruction.

Rank is computed over the rationals by the same fraction-free elimination.
"""

from __future__ import annotations

import heapq
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import isqrt, lcm
from typing import Mapping, Sequence, Union

import numpy as np

from ._kernels import det_mod_p

Rational = Union[int, Fraction]

#: Row count at and above which backend "auto" switches from fraction-free
#: elimination to the multimodular backend.  Override per call or rebind.
DEFAULT_BACKEND_THRESHOLD = 400

# Number of lowest-count candidate columns examined per pivot step.
_PIVOT_CANDIDATES = 4

_PRIME_CEILING = 1 << 31


class ReconstructionError(RuntimeError):
    """Internal error: the CRT safety prime disagreed with the reconstruction."""


class ExactMatrix:
    """Sparse exact matrix with int or Fraction entries (zeros omitted)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], Rational] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Rational] = {}
        if entries:
            for (i, j), v in entries.items():
                if not 0 <= i < rows or not 0 <= j < cols:
                    raise ValueError(f"entry ({i}, {j}) outside {rows}x{cols}")
                if v:
                    self.entries[(i, j)] = v

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Rational]]) -> "ExactMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(rows, cols, entries)

    def to_dense(self) -> list[list[Rational]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           {(j, i): v for (i, j), v in self.entries.items()})

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matmul")
        by_row: dict[int, list[tuple[int, Rational]]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        acc: dict[tuple[int, int], Rational] = {}
        for (i, k), v in self.entries.items():
            for j, w in by_row.get(k, ()):
                key = (i, j)
                acc[key] = acc.get(key, 0) + v * w
        return ExactMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def integer_form(self) -> tuple[dict[tuple[int, int], int], int]:
        """Clear denominators row by row.

        Returns (integer entries, divisor) with divisor the product of the
        per-row scale factors, so det(self) == det(integer matrix) / divisor
        and the rank is unchanged.
        """
        row_scale = [1] * self.rows
        for (i, _), v in self.entries.items():
            if isinstance(v, Fraction) and v.denominator != 1:
                row_scale[i] = lcm(row_scale[i], v.denominator)
        ints: dict[tuple[int, int], int] = {}
        for (i, j), v in self.entries.items():
            if isinstance(v, Fraction):
                scaled = v * row_scale[i]
                ints[(i, j)] = scaled.numerator
            else:
                ints[(i, j)] = v * row_scale[i]
        divisor = 1
        for s in row_scale:
            divisor *= s
        return ints, divisor

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExactMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation k -> seq[k] via cycle decomposition."""
    n = len(seq)
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        k = start
        while not seen[k]:
            seen[k] = True
            k = seq[k]
    return 1 if (n - cycles) % 2 == 0 else -1


def _eliminate(int_entries: Mapping[tuple[int, int], int], nrows: int, ncols: int,
               want_det: bool) -> tuple[int, int]:
    """Sparse fraction-free elimination.

    Returns (rank, det) where det is meaningful only when want_det is set and
    the matrix is square; a rank-deficient square matrix reports det 0.

    Pivots are chosen Markowitz-style: among the lowest-population columns
    the entry minimizing (row_count - 1) * (col_count - 1), ties broken by
    lowest (row, col).  Rows that do not meet a pivot column are rescaled
    lazily: by the minor identity their true value at step k equals the
    stored value times pivot_k / pivot_t, where t is the step at which the
    row last participated, and that division is exact.
    """
    rows: dict[int, dict[int, int]] = {}
    for (i, j), v in int_entries.items():
        if v:
            rows.setdefault(i, {})[j] = v
    cols: dict[int, set[int]] = {}
    for i, ri in rows.items():
        for j in ri:
            cols.setdefault(j, set()).add(i)

    if want_det and (len(rows) < nrows or len(cols) < ncols):
        return len(rows), 0

    heap: list[tuple[int, int]] = [(len(s), j) for j, s in cols.items()]
    heapq.heapify(heap)
    pivots = [1]
    last = dict.fromkeys(rows, 0)
    pivot_rows: list[int] = []
    pivot_cols: list[int] = []
    rank = 0

    def materialize(i: int, target: int) -> None:
        t = last[i]
        if t == target:
            return
        num, den = pivots[target], pivots[t]
        if num != den:
            ri = rows[i]
            for j in ri:
                ri[j] = ri[j] * num // den
        last[i] = target

    def push_col(j: int) -> None:
        s = cols.get(j)
        if s:
            heapq.heappush(heap, (len(s), j))

    while True:
        candidates: list[tuple[int, int]] = []
        while heap and len(candidates) < _PIVOT_CANDIDATES:
            cnt, j = heapq.heappop(heap)
            s = cols.get(j)
            if s is None:
                continue
            if len(s) != cnt:
                heapq.heappush(heap, (len(s), j))
                continue
            candidates.append((cnt, j))
        for item in candidates:
            heapq.heappush(heap, item)
        if not candidates:
            break

        best = None
        for cnt, j in candidates:
            i = min(cols[j], key=lambda row: (len(rows[row]), row))
            key = ((len(rows[i]) - 1) * (cnt - 1), i, j)
            if best is None or key < best:
                best = key
        assert best is not None
        _, pr, pc = best

        prev = pivots[rank]
        materialize(pr, rank)
        rank += 1
        prow = rows.pop(pr)
        del last[pr]
        piv = prow[pc]
        pivots.append(piv)
        pivot_rows.append(pr)
        pivot_cols.append(pc)
        for j in prow:
            s = cols[j]
            s.discard(pr)
            if s:
                push_col(j)
            else:
                del cols[j]
                if want_det and j != pc and rank < min(nrows, ncols):
                    if len(rows) > 0 and j not in pivot_cols:
                        return rank, 0

        victims = sorted(cols.pop(pc, ()))
        for i in victims:
            materialize(i, rank - 1)
            ri = rows[i]
            b = ri.pop(pc)
            for j in set(ri) | set(prow):
                if j == pc:
                    continue
                a = ri.get(j, 0)
                w = prow.get(j, 0)
                val = (a * piv - b * w) // prev
                if val:
                    if not a:
                        cols.setdefault(j, set()).add(i)
                    ri[j] = val
                elif a:
                    del ri[j]
                    s = cols[j]
                    s.discard(i)
                    if s:
                        push_col(j)
                    else:
                        del cols[j]
                        if want_det:
                            return rank, 0
                if a or val:
                    push_col(j)
            last[i] = rank
            if not ri:
                del rows[i]
                del last[i]
                if want_det:
                    return rank, 0

    if not want_det:
        return rank, 0
    if rank < nrows:
        return rank, 0
    det = _permutation_sign(pivot_rows) * _permutation_sign(pivot_cols) * pivots[-1]
    return rank, det


def rank_exact(matrix: ExactMatrix) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    ints, _ = matrix.integer_form()
    rank, _ = _eliminate(ints, matrix.rows, matrix.cols, want_det=False)
    return rank


def det_bareiss(matrix: ExactMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if matrix.rows != matrix.cols:
        raise ValueError(f"determinant of non-square {matrix!r}")
    if matrix.rows == 0:
        return Fraction(1)
    ints, divisor = matrix.integer_form()
    _, det = _eliminate(ints, matrix.rows, matrix.cols, want_det=True)
    return Fraction(det, divisor)


# --- multimodular backend ---------------------------------------------------

_prime_cache: list[int] = []
_prime_lock = threading.Lock()


def _extend_primes(count: int) -> None:
    limit = isqrt(_PRIME_CEILING) + 1
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p:limit:p] = bytearray(len(range(p * p, limit, p)))
    small = [p for p in range(2, limit) if sieve[p]]
    candidate = _prime_cache[-1] - 2 if _prime_cache else _PRIME_CEILING - 1
    while len(_prime_cache) < count:
        is_prime = True
        for p in small:
            if p * p > candidate:
                break
            if candidate % p == 0:
                is_prime = False
                break
        if is_prime:
            _prime_cache.append(candidate)
        candidate -= 2


def modular_primes(count: int) -> list[int]:
    """The first ``count`` primes descending from just below 2**31."""
    with _prime_lock:
        if len(_prime_cache) < count:
            _extend_primes(count)
        return _prime_cache[:count]


def crt_combine(residues: Sequence[int], primes: Sequence[int]) -> int:
    """Solve x = residues[i] (mod primes[i]); result in [0, prod primes)."""
    x = 0
    modulus = 1
    for r, p in zip(residues, primes):
        t = ((r - x) * pow(modulus, -1, p)) % p
        x += modulus * t
        modulus *= p
    return x


def hadamard_bound(int_entries: Mapping[tuple[int, int], int], n: int) -> int:
    """Integer upper bound for |det| of an n x n integer matrix."""
    row_sq = [0] * n
    col_sq = [0] * n
    for (i, j), v in int_entries.items():
        vv = v * v
        row_sq[i] += vv
        col_sq[j] += vv
    prod_r = 1
    for s in row_sq:
        prod_r *= s
    prod_c = 1
    for s in col_sq:
        prod_c *= s
    b2 = min(prod_r, prod_c)
    if b2 == 0:
        return 0
    return isqrt(b2) + 1


def _residue_mod_p(int_entries: Mapping[tuple[int, int], int], n: int, p: int) -> int:
    a = np.zeros((n, n), dtype=np.int64)
    for (i, j), v in int_entries.items():
        a[i, j] = v % p
    return det_mod_p(a, p)


def det_multimodular(matrix: ExactMatrix, threads: int = 1) -> Fraction:
    """Exact determinant by CRT over 31-bit primes with a Hadamard certificate.

    The batch of primes is the smallest whose product exceeds twice the
    Hadamard bound, plus one safety prime.  A mismatch between the safety
    residue and the reconstructed value raises ReconstructionError.
    """
    if matrix.rows != matrix.cols:
        raise ValueError(f"determinant of non-square {matrix!r}")
    n = matrix.rows
    if n == 0:
        return Fraction(1)
    ints, divisor = matrix.integer_form()
    bound = hadamard_bound(ints, n)
    if bound == 0:
        return Fraction(0)

    target = 2 * bound
    primes: list[int] = []
    product = 1
    k = 0
    while product <= target:
        k += 16
        primes = modular_primes(k)
        product = 1
        for p in primes:
            product *= p
            if product > target:
                primes = primes[:primes.index(p) + 1]
                break
    base = primes
    safety = modular_primes(len(base) + 1)[-1]

    def residue(p: int) -> int:
        return _residue_mod_p(ints, n, p)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            residues = list(pool.map(residue, base + [safety]))
    else:
        residues = [residue(p) for p in base + [safety]]

    x = crt_combine(residues[:-1], base)
    modulus = 1
    for p in base:
        modulus *= p
    if x > modulus // 2:
        x -= modulus
    if x % safety != residues[-1]:
        raise ReconstructionError(
            f"safety prime {safety} disagrees with reconstruction")
    return Fraction(x, divisor)


def det_exact(matrix: ExactMatrix, backend: str = "auto", threads: int = 1,
              threshold: int | None = None) -> Fraction:
    """Determinant with backend selection.

    backend "auto" uses fraction-free elimination below ``threshold`` rows
    (default DEFAULT_BACKEND_THRESHOLD) and the multimodular backend at or
    above it.
    """
    if backend == "bareiss":
        return det_bareiss(matrix)
    if backend == "multimodular":
        return det_multimodular(matrix, threads=threads)
    if backend == "auto":
        cut = DEFAULT_BACKEND_THRESHOLD if threshold is None else threshold
        if matrix.rows < cut:
            return det_bareiss(matrix)
        return det_multimodular(matrix, threads=threads)
    raise ValueError(f"unknown backend {backend!r}")
