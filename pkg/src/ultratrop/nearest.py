"""One l-infinity nearest ultrametric via the minimum spanning tree.

The subdominant map ``d*`` takes, for every pair, the heaviest edge on the
MST path between them.  Shifting ``d*`` up by half its largest deviation
from ``d`` gives an optimal ultrametric, and that half-deviation is the
optimal distance ``q``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .trees import DissimilarityMap, Ultrametric, linf_distance


@dataclass(frozen=True)
class NearestResult:
    delta_star: Ultrametric
    q: Fraction
    d_star: Ultrametric
    mst_edges: tuple  # ((i, j, weight), ...) 0-based


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def min_spanning_tree(d: DissimilarityMap, edge_order=None) -> list[tuple[int, int, Fraction]]:
    """Kruskal on the complete graph; ties broken by the pair ``(i, j)``.

    ``edge_order`` optionally overrides the tie-break with a list of pairs;
    edges are still processed by weight first.
    """
    if d.n < 2:
        raise ValueError("need at least two items")
    pairs = d.pairs() if edge_order is None else list(edge_order)
    rank = {p: k for k, p in enumerate(pairs)}
    edges = sorted(pairs, key=lambda p: (d[p], rank[p]))
    ds = _DisjointSet(d.n)
    out = []
    for i, j in edges:
        if ds.union(i, j):
            out.append((i, j, d[i, j]))
            if len(out) == d.n - 1:
                break
    return out


def bottleneck_map(d: DissimilarityMap, edge_order=None) -> Ultrametric:
    """Heaviest edge on the MST path between every pair."""
    n = d.n
    adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(n)]
    for i, j, w in min_spanning_tree(d, edge_order):
        adj[i].append((j, w))
        adj[j].append((i, w))
    grid = [[Fraction(0)] * n for _ in range(n)]
    for s in range(n):
        stack = [(s, None)]
        seen = {s}
        while stack:
            u, heaviest = stack.pop()
            if heaviest is not None:
                grid[s][u] = heaviest
            for v, w in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append((v, w if heaviest is None else max(heaviest, w)))
    return Ultrametric(tuple(map(tuple, grid)), d.labels)


def nearest_ultrametric(d: DissimilarityMap) -> NearestResult:
    if d.n < 2:
        raise ValueError("need at least two items")
    edges = min_spanning_tree(d)
    d_star = bottleneck_map(d)
    q = linf_distance(d_star, d) / 2
    n = d.n
    grid = [[d_star[i, j] + q if i != j else Fraction(0) for j in range(n)] for i in range(n)]
    delta = Ultrametric(tuple(map(tuple, grid)), d.labels)
    return NearestResult(delta, q, d_star, tuple(edges))
