"""Homogenized max-plus cone whose points are the nearest ultrametrics.

Coordinate 0 is the homogenizing variable ``xi``; coordinates ``1..m`` are
the pairs ``(1,2), (1,3), ..., (n-1,n)``.  Rows come in three blocks:

* for each triple ``i<j<k`` and each of its three pairs, the pair is bounded
  by the max of the other two (ultrametric inequality);
* ``xi + d_ij <= delta_ij + q`` for each pair;
* ``delta_ij - q <= xi + d_ij`` for each pair.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .tropical import BOTTOM, TropMatrix, fmt_scalar, leq, trop_mat_vec
from .trees import DissimilarityMap, Ultrametric, UltrametricError, pair_list


class NotInConeError(ValueError):
    def __init__(self, message: str, row: Optional[int] = None):
        super().__init__(message)
        self.row = row


@dataclass(frozen=True)
class PairIndexer:
    n: int

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return pair_list(self.n)

    @property
    def dim(self) -> int:
        return self.n * (self.n - 1) // 2 + 1

    def position(self, i: int, j: int) -> int:
        """Cone coordinate of the 0-based pair ``{i, j}``."""
        if i == j:
            raise ValueError("a pair needs two distinct items")
        i, j = min(i, j), max(i, j)
        # count pairs (a, b) preceding (i, j) lexicographically
        return i * self.n - i * (i + 1) // 2 + (j - i - 1) + 1

    def pair_at(self, pos: int) -> tuple[int, int]:
        return self.pairs[pos - 1]

    def label(self, pos: int) -> str:
        if pos == 0:
            return "xi"
        i, j = self.pair_at(pos)
        if self.n > 9:
            return f"d_{i + 1},{j + 1}"
        return f"d_{i + 1}{j + 1}"

    def labels(self) -> list[str]:
        return [self.label(k) for k in range(self.dim)]


@dataclass(frozen=True)
class TropicalSystem:
    A: TropMatrix
    B: TropMatrix
    indexer: PairIndexer
    q: Fraction
    d: DissimilarityMap

    @property
    def n_triple_rows(self) -> int:
        n = self.indexer.n
        return n * (n - 1) * (n - 2) // 2

    def block_of(self, row: int) -> str:
        m = self.indexer.dim - 1
        t = self.n_triple_rows
        if row < t:
            return "ultrametric"
        if row < t + m:
            return "upper"
        return "lower"

    def describe_row(self, row: int) -> str:
        """Human-readable inequality for a 0-based row index."""
        ix = self.indexer
        block = self.block_of(row)
        if block == "ultrametric":
            a = [ix.label(k) for k, x in enumerate(self.A.row(row)) if x is not BOTTOM]
            b = [ix.label(k) for k, x in enumerate(self.B.row(row)) if x is not BOTTOM]
            return f"{a[0]} <= max({', '.join(b)})"
        m = ix.dim - 1
        t = self.n_triple_rows
        if block == "upper":
            pos = row - t + 1
            i, j = ix.pair_at(pos)
            return f"xi + {self.d[i, j]} <= {ix.label(pos)} + {self.q}"
        pos = row - t - m + 1
        i, j = ix.pair_at(pos)
        return f"{ix.label(pos)} - {self.q} <= xi + {self.d[i, j]}"


def build_exterior(d: DissimilarityMap, q) -> TropicalSystem:
    q = Fraction(q)
    if q < 0:
        raise ValueError("q must be nonnegative")
    n = d.n
    if n < 2:
        raise ValueError("need at least two items")
    if n < 3:
        warnings.warn("fewer than three items: the ultrametric block is empty", stacklevel=2)
    ix = PairIndexer(n)
    dim = ix.dim
    zero = Fraction(0)

    def row(entries: dict) -> list:
        r = [BOTTOM] * dim
        for k, v in entries.items():
            r[k] = v
        return r

    A_rows, B_rows = [], []
    for i, j, k in combinations(range(n), 3):
        ij, ik, jk = ix.position(i, j), ix.position(i, k), ix.position(j, k)
        for target, others in ((ij, (ik, jk)), (ik, (ij, jk)), (jk, (ij, ik))):
            A_rows.append(row({target: zero}))
            B_rows.append(row({others[0]: zero, others[1]: zero}))
    for pos, (i, j) in enumerate(ix.pairs, start=1):
        A_rows.append(row({0: d[i, j]}))
        B_rows.append(row({pos: q}))
    for pos, (i, j) in enumerate(ix.pairs, start=1):
        A_rows.append(row({pos: -q}))
        B_rows.append(row({0: d[i, j]}))
    return TropicalSystem(TropMatrix(tuple(A_rows)), TropMatrix(tuple(B_rows)), ix, q, d)


def homogenize(delta: DissimilarityMap) -> tuple:
    """Cone vector ``(0, delta_12, delta_13, ...)``."""
    return (Fraction(0),) + delta.vector()


def normalize(v: Sequence, indexer: Optional[PairIndexer] = None) -> Ultrametric:
    """Shift so ``xi = 0``, drop ``xi`` and reshape into an ultrametric."""
    if v[0] is BOTTOM:
        raise NotInConeError("the xi coordinate is bottom; the vector does not normalize")
    if any(x is BOTTOM for x in v):
        raise NotInConeError("a pair coordinate is bottom")
    shift = v[0]
    values = [x - shift for x in v[1:]]
    n = indexer.n if indexer is not None else None
    try:
        d = DissimilarityMap.from_vector(values, n)
        return Ultrametric(d.entries)
    except UltrametricError as exc:
        raise NotInConeError(f"normalized vector is not an ultrametric: {exc}") from None


def check_membership(v: Sequence, system: TropicalSystem) -> tuple[bool, Optional[int]]:
    """``A v <= B v`` entrywise; on failure the first violated 0-based row."""
    if len(v) != system.indexer.dim:
        raise ValueError(f"vector has {len(v)} entries, cone has {system.indexer.dim} coordinates")
    av = trop_mat_vec(system.A, v)
    bv = trop_mat_vec(system.B, v)
    for k, (a, b) in enumerate(zip(av, bv)):
        if not leq(a, b):
            return False, k
    return True, None


def system_to_csv(system: TropicalSystem) -> str:
    labels = system.indexer.labels()
    header = ["row", "block"] + [f"A.{x}" for x in labels] + [f"B.{x}" for x in labels]
    lines = [",".join(header)]
    for k in range(system.A.rows):
        cells = [str(k + 1), system.block_of(k)]
        cells += [fmt_scalar(x) for x in system.A.row(k)]
        cells += [fmt_scalar(x) for x in system.B.row(k)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def system_to_dict(system: TropicalSystem) -> dict:
    return {
        "n": system.indexer.n,
        "q": str(system.q),
        "shape": list(system.A.shape),
        "columns": system.indexer.labels(),
        "A": [[fmt_scalar(x) for x in r] for r in system.A.entries],
        "B": [[fmt_scalar(x) for x in r] for r in system.B.entries],
        "blocks": [system.block_of(k) for k in range(system.A.rows)],
    }
