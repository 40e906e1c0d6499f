"""Grow an instance by one item without changing a candidate's extremality.

The new item sits at distance ``r + q + eps`` from everything, where ``r``
is the root weight of the candidate; the candidate itself is extended with
``r + eps``.  Applied to a non-extreme Bernstein candidate this turns an
``n``-item counterexample into an ``n+1``-item one.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .nearest import nearest_ultrametric
from .trees import DissimilarityMap, Ultrametric, as_ultrametric, linf_distance


@dataclass(frozen=True)
class ExtensionResult:
    d_ext: DissimilarityMap
    delta_ext: Ultrametric
    epsilon: Fraction
    r: Fraction
    q: Fraction


def root_weight(delta: DissimilarityMap) -> Fraction:
    """Largest off-diagonal entry, i.e. the weight at the root of the tree."""
    if delta.n < 2:
        raise ValueError("need at least two items")
    return max(delta.vector())


def _append(m: DissimilarityMap, value: Fraction, cls=DissimilarityMap, label=None):
    n = m.n
    rows = [list(r) + [value] for r in m.entries]
    rows.append([value] * n + [Fraction(0)])
    labels = None
    if m.labels is not None:
        labels = m.labels + (label or str(n + 1),)
    return cls(tuple(map(tuple, rows)), labels)


def extend_instance(d: DissimilarityMap, delta: DissimilarityMap, epsilon=1) -> ExtensionResult:
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError(f"epsilon must be positive, got {eps}")
    delta = as_ultrametric(delta)
    if delta.n != d.n:
        raise ValueError(f"size mismatch: candidate has {delta.n} items, instance {d.n}")
    q = nearest_ultrametric(d).q
    dist = linf_distance(delta, d)
    if dist != q:
        raise ValueError(f"candidate is at distance {dist}, not the optimal {q}")
    r = root_weight(delta)
    d_ext = _append(d, r + q + eps)
    delta_ext = _append(delta, r + eps, Ultrametric)
    return ExtensionResult(d_ext, delta_ext, eps, r, q)


def build_counterexample(n_target: int, epsilon=1) -> tuple[DissimilarityMap, Ultrametric]:
    """Instance on ``n_target`` items plus a Bernstein candidate that is not extreme.

    Seeds from the four-item instance shipped as ``paper-n4``; its witness
    is the lexicographically smaller of the two non-extreme candidates there.
    """
    if n_target < 4:
        raise ValueError("counterexamples start at four items")
    from .datasets import load
    from .extremes import enumerate_extremes

    d = load("paper-n4")
    report = enumerate_extremes(d, oracle=False)
    delta = report.satisfying_nonextremes[0].ultrametric
    while d.n < n_target:
        ext = extend_instance(d, delta, epsilon)
        d, delta = ext.d_ext, ext.delta_ext
    return d, delta
