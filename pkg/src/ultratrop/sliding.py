"""Candidate generation by sliding internal nodes down.

Starting from the MST-based nearest ultrametric, every internal node of
every binary resolution of the current topology is lowered as far as it
can go while the ultrametric stays nearest.  The closure of these moves is
the candidate pool; candidates with at most one mobile node form the
Bernstein set, which contains every extreme ray.

Mobility is a property of a node in a specific resolution.  Two
quantifiers turn it into a count for an ultrametric:

``"all-resolutions"`` (default)
    the number of distinct mobile nodes (by leaf cluster) across all
    resolutions of the topology;
``"per-resolution"``
    the largest number of mobile nodes found in any single resolution.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Optional

from .nearest import nearest_ultrametric
from .trees import (
    DissimilarityMap,
    Node,
    Ultrametric,
    WeightedRootedTree,
    leaf_set,
    linf_distance,
    min_leaf,
    to_newick,
    tree_from_ultrametric,
    ultrametric_from_tree,
)

QUANTIFIERS = ("all-resolutions", "per-resolution")


class ImmobileNodeError(ValueError):
    pass


@lru_cache(maxsize=None)
def _binary_shapes(k: int) -> tuple:
    """Every rooted binary tree on leaves ``0..k-1`` as nested pairs, once each."""
    def build(items: tuple) -> list:
        if len(items) == 1:
            return [items[0]]
        first, rest = items[0], items[1:]
        out = []
        # the side holding `first` is canonical, so each split is seen once
        for mask in range(2 ** len(rest) - 1):
            left = (first,) + tuple(x for b, x in enumerate(rest) if mask >> b & 1)
            right = tuple(x for b, x in enumerate(rest) if not mask >> b & 1)
            for a in build(left):
                for c in build(right):
                    out.append((a, c))
        return out

    return tuple(build(tuple(range(k))))


def _resolve_node(node: Node) -> list[Node]:
    child_options = [_resolve_node(c) if isinstance(c, Node) else [c] for c in node.children]
    out = []
    for kids in product(*child_options):
        if len(kids) == 2:
            out.append(Node(node.weight, tuple(sorted(kids, key=min_leaf))))
            continue
        for shape in _binary_shapes(len(kids)):
            out.append(_realize(shape, kids, node.weight))
    return out


def _realize(shape, kids, weight) -> Node:
    if isinstance(shape, int):
        return kids[shape]
    a, b = (_realize(s, kids, weight) for s in shape)
    return Node(weight, tuple(sorted((a, b), key=min_leaf)))


def resolutions(tree: WeightedRootedTree) -> list[WeightedRootedTree]:
    """All binary refinements; new nodes inherit the weight of the node they refine."""
    seen = {}
    for root in _resolve_node(tree.root):
        key = frozenset((v.leaves, v.weight) for v in root.internal_nodes())
        seen.setdefault(key, root)
    return [WeightedRootedTree(r, tree.n, strict=False) for r in seen.values()]


def slide_floor(tree: WeightedRootedTree, cluster, d: DissimilarityMap, q) -> Fraction:
    """Lowest weight the node can take with every other weight fixed.

    It cannot drop below any internal descendant, nor below ``d_ij - q`` for
    a leaf pair whose lowest common ancestor it is.
    """
    v = tree.node(cluster)
    q = Fraction(q)
    bounds = [y.weight for y in tree.descendants(cluster)]
    parts = [leaf_set(c) for c in v.children]
    for a, b in combinations(parts, 2):
        for i in a:
            for j in b:
                bounds.append(d[i, j] - q)
    return max(bounds)


def is_mobile(tree: WeightedRootedTree, cluster, d: DissimilarityMap, q) -> bool:
    return slide_floor(tree, cluster, d, q) < tree.node(cluster).weight


@dataclass(frozen=True)
class CandidateState:
    ultrametric: Ultrametric
    tree: WeightedRootedTree
    mobile_nodes: frozenset  # clusters mobile in at least one resolution
    per_resolution: tuple  # mobile-node count in each resolution
    provenance: tuple = ()  # ((resolution newick, slid cluster 1-based, new weight), ...)

    def mobile_count(self, quantifier: str = "all-resolutions") -> int:
        if quantifier == "all-resolutions":
            return len(self.mobile_nodes)
        if quantifier == "per-resolution":
            return max(self.per_resolution)
        raise ValueError(f"unknown quantifier {quantifier!r}; expected one of {QUANTIFIERS}")

    def vector(self) -> tuple:
        return self.ultrametric.vector()


def _moves(tree: WeightedRootedTree, d: DissimilarityMap, q: Fraction):
    """Yield ``(resolution, cluster, floor)`` for every mobile node of every resolution."""
    for res in resolutions(tree):
        for v in res.internal_nodes():
            floor = slide_floor(res, v.leaves, d, q)
            if floor < v.weight:
                yield res, v.leaves, floor


def analyze(delta: Ultrametric, d: DissimilarityMap, q, provenance: tuple = ()) -> CandidateState:
    q = Fraction(q)
    tree = tree_from_ultrametric(delta)
    mobile = set()
    counts = []
    for res in resolutions(tree):
        k = 0
        for v in res.internal_nodes():
            if slide_floor(res, v.leaves, d, q) < v.weight:
                mobile.add(v.leaves)
                k += 1
        counts.append(k)
    return CandidateState(delta, tree, frozenset(mobile), tuple(counts), provenance)


def slide_all_the_way_down(state: CandidateState, cluster, d: DissimilarityMap, q,
                           resolution: Optional[WeightedRootedTree] = None) -> CandidateState:
    """Drop one node to its floor and re-derive the (possibly merged) topology.

    ``resolution`` selects the binary refinement the node lives in; it
    defaults to the candidate's own tree.
    """
    q = Fraction(q)
    cluster = frozenset(cluster)
    tree = resolution if resolution is not None else state.tree
    if cluster not in tree.by_cluster:
        raise ValueError(f"no internal node over {sorted(i + 1 for i in cluster)} in this tree")
    floor = slide_floor(tree, cluster, d, q)
    if not floor < tree.node(cluster).weight:
        raise ImmobileNodeError(f"node over {sorted(i + 1 for i in cluster)} is already at its floor {floor}")
    delta = ultrametric_from_tree(tree.with_weight(cluster, floor), state.ultrametric.labels)
    step = (to_newick(tree), tuple(sorted(i + 1 for i in cluster)), floor)
    return analyze(delta, d, q, state.provenance + (step,))


@dataclass
class CandidateSet:
    d: DissimilarityMap
    q: Fraction
    delta_star: Ultrametric
    all: list  # CandidateState, discovery order
    quantifier: str = "all-resolutions"
    warnings: list = field(default_factory=list)

    @property
    def bernstein(self) -> list:
        return self.filtered(self.quantifier)

    def filtered(self, quantifier: str) -> list:
        return [s for s in self.all if s.mobile_count(quantifier) <= 1]

    def counts(self) -> dict:
        return {qf: len(self.filtered(qf)) for qf in QUANTIFIERS}


def bernstein_candidates(d: DissimilarityMap, quantifier: str = "all-resolutions") -> CandidateSet:
    """Breadth-first closure of slide moves from the MST-based nearest ultrametric."""
    if quantifier not in QUANTIFIERS:
        raise ValueError(f"unknown quantifier {quantifier!r}; expected one of {QUANTIFIERS}")
    if d.n < 3:
        raise ValueError("candidate generation needs at least three items")
    res = nearest_ultrametric(d)
    q = res.q
    start = analyze(res.delta_star, d, q)
    states = {start.ultrametric: start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for resolution, cluster, floor in _moves(state.tree, d, q):
            delta = ultrametric_from_tree(resolution.with_weight(cluster, floor), d.labels)
            if delta == state.ultrametric or delta in states:
                continue
            step = (to_newick(resolution), tuple(sorted(i + 1 for i in cluster)), floor)
            new = analyze(delta, d, q, state.provenance + (step,))
            states[delta] = new
            queue.append(new)
    out = CandidateSet(d, q, res.delta_star, list(states.values()), quantifier)
    for s in out.all:
        dist = linf_distance(s.ultrametric, d)
        if dist != q:
            raise AssertionError(f"candidate drifted to distance {dist} != {q}")
        bad = s.ultrametric.nonpositive_pairs
        if bad:
            out.warnings.append(f"candidate {list(map(str, s.vector()))} has nonpositive entries at {bad}")
    return out
