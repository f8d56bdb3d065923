"""Known determinant values of the canonical witness, kept as a regression
reference for the tabulation command and the acceptance suite."""

from __future__ import annotations

from math import comb

#: (r, d) -> previously computed value of the subset determinant on the
#: canonical witness.  Every known value is +-1.
KNOWN_WITNESS_DETS: dict[tuple[int, int], int] = {}

for _d, _v in zip(range(2, 11), [-1, 1, 1, 1, -1, 1, 1, 1, -1]):
    KNOWN_WITNESS_DETS[(2, _d)] = _v
for _d, _v in zip(range(2, 11), [-1, -1, 1, 1, 1, 1, 1, 1, -1]):
    KNOWN_WITNESS_DETS[(3, _d)] = _v
for _d, _v in zip(range(2, 10), [1, -1, 1, 1, 1, -1, 1, 1]):
    KNOWN_WITNESS_DETS[(4, _d)] = _v
for _d, _v in zip(range(2, 6), [-1, -1, 1, 1]):
    KNOWN_WITNESS_DETS[(5, _d)] = _v
for _d, _v in zip(range(2, 4), [1, -1]):
    KNOWN_WITNESS_DETS[(6, _d)] = _v
KNOWN_WITNESS_DETS[(7, 2)] = 1
KNOWN_WITNESS_DETS[(8, 2)] = 1

del _d, _v


def system_dimension(r: int, d: int) -> int:
    """Size of the square system matrix: d * C(rd-1, r-1)."""
    return d * comb(r * d - 1, r - 1)


def table_cells(max_dim: int) -> list[tuple[int, int]]:
    """Grid cells (r, d) over the known-values range whose system dimension
    does not exceed ``max_dim``, in row-major order."""
    out = []
    for r in range(2, 9):
        for d in range(2, 11):
            if system_dimension(r, d) <= max_dim:
                out.append((r, d))
    return out
