"""Text formats: matrix input, JSON reports, ray CSV and Newick batches.

Indices are 0-based in the library and 1-based everywhere in this module's
output.  Rationals are written with ``str(Fraction)``, e.g. ``29/2``.
"""
from __future__ import annotations

import os
import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import datasets
from .cone import PairIndexer
from .hypergraph import SCCDecomposition
from .trees import (
    DissimilarityError,
    DissimilarityMap,
    Ultrametric,
    to_newick,
    tree_from_ultrametric,
)
from .validation import check_dissimilarity

_SPLIT = re.compile(r"[,\s]+")


def num(x) -> str:
    return str(Fraction(x))


def parse_matrix_text(text: str) -> list[list[str]]:
    """Rows of tokens; blank lines and ``#`` comments are skipped."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append([t for t in _SPLIT.split(line) if t])
    return rows


def _header_labels(rows: list[list[str]]):
    """Split off a header row of non-numeric labels, if present."""
    if not rows:
        return rows, None
    try:
        [Fraction(t) for t in rows[0]]
        return rows, None
    except (ValueError, ZeroDivisionError):
        return rows[1:], rows[0]


def read_dissimilarity(source: str) -> DissimilarityMap:
    """Load a built-in dataset by name, or a matrix file."""
    if source in datasets.NAMES:
        return datasets.load(source)
    if not os.path.exists(source):
        raise DissimilarityError(f"no such file or dataset: {source!r} (datasets: {', '.join(datasets.NAMES)})")
    with open(source) as fh:
        rows, labels = _header_labels(parse_matrix_text(fh.read()))
    return check_dissimilarity(rows, labels)


def parse_candidate(source: str, n: int) -> Ultrametric:
    """A candidate from a matrix file, or inline as a pair vector ``"4,6,6"``.

    Inline matrices may separate rows with ``;``.
    """
    if os.path.exists(source):
        with open(source) as fh:
            rows = parse_matrix_text(fh.read())
    else:
        rows = [[t for t in _SPLIT.split(r.strip()) if t] for r in source.split(";") if r.strip()]
    if len(rows) == 1:
        m = DissimilarityMap.from_vector(rows[0], n)
    else:
        m = DissimilarityMap(tuple(tuple(Fraction(t) for t in r) for r in rows))
    if m.n != n:
        raise DissimilarityError(f"candidate has {m.n} items, instance has {n}")
    return Ultrametric(m.entries)


def matrix_rows(m: DissimilarityMap) -> list[list[str]]:
    return [[num(x) for x in row] for row in m.entries]


def matrix_to_csv(m: DissimilarityMap) -> str:
    return "\n".join(",".join(r) for r in matrix_rows(m)) + "\n"


def ultrametric_to_dict(delta: Ultrametric, labels=None) -> dict:
    return {
        "vector": [num(x) for x in delta.vector()],
        "matrix": matrix_rows(delta),
        "newick": to_newick(tree_from_ultrametric(delta), labels),
    }


def certificate_to_dict(dec: SCCDecomposition, indexer: PairIndexer) -> dict:
    comps = [[indexer.label(u) for u in sorted(c)] for c in dec.components]
    order = sorted((a, b) for a, b in dec.order if a != b)
    return {
        "components": comps,
        "order": [[comps[a], comps[b]] for a, b in order],
        "greatest": None if dec.greatest is None else [indexer.label(u) for u in sorted(dec.greatest)],
    }


def rays_to_csv(vectors: Sequence[Sequence], n: int) -> str:
    """One column per ray, one row per pair in lexicographic order."""
    ix = PairIndexer(n)
    header = ["pair"] + [f"ray_{k + 1}" for k in range(len(vectors))]
    lines = [",".join(header)]
    for pos in range(1, ix.dim):
        lines.append(",".join([ix.label(pos)] + [num(v[pos - 1]) for v in vectors]))
    return "\n".join(lines) + "\n"


def read_rays_csv(text: str) -> list[tuple]:
    rows = [r.split(",") for r in text.strip().splitlines()]
    body = [r[1:] for r in rows[1:]]
    if not body:
        return []
    return [tuple(Fraction(r[k]) for r in body) for k in range(len(body[0]))]


def newick_batch(ultrametrics: Iterable[Ultrametric], labels: Optional[Sequence[str]] = None,
                 branch_lengths: bool = False) -> str:
    return "".join(to_newick(tree_from_ultrametric(u), labels, branch_lengths) + "\n" for u in ultrametrics)
