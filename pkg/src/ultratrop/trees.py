"""Dissimilarity maps, ultrametrics and their node-weighted rooted trees."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterator, Optional, Sequence, Union

from .tropical import scalar


class DissimilarityError(ValueError):
    """Raised for malformed dissimilarity input; ``cell`` is 1-based."""

    def __init__(self, message: str, cell: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.cell = cell


class UltrametricError(ValueError):
    def __init__(self, message: str, triple: Optional[tuple[int, int, int]] = None):
        super().__init__(message)
        self.triple = triple


def pair_list(n: int) -> list[tuple[int, int]]:
    """0-based unordered pairs in lexicographic order."""
    return list(combinations(range(n), 2))


@dataclass(frozen=True)
class DissimilarityMap:
    """Symmetric zero-diagonal matrix of exact rationals.

    Construction only normalises entries to ``Fraction`` and checks shape,
    symmetry and the diagonal.  Positivity of the off-diagonal is an input
    requirement enforced by :func:`validate_dissimilarity`; ultrametrics
    produced by sliding may legitimately reach zero or below.
    """

    entries: tuple
    labels: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise DissimilarityError(f"matrix is not square: row {i + 1} has {len(row)} entries, expected {n}")
        for i in range(n):
            if rows[i][i] != 0:
                raise DissimilarityError(f"nonzero diagonal at ({i + 1},{i + 1})", (i + 1, i + 1))
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise DissimilarityError(f"asymmetry at ({i + 1},{j + 1}): {rows[i][j]} != {rows[j][i]}",
                                             (i + 1, j + 1))
        object.__setattr__(self, "entries", rows)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != n:
                raise DissimilarityError(f"{len(labels)} labels for {n} items")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def pairs(self) -> list[tuple[int, int]]:
        return pair_list(self.n)

    def vector(self) -> tuple[Fraction, ...]:
        """Off-diagonal entries in lexicographic pair order."""
        return tuple(self.entries[i][j] for i, j in self.pairs())

    @classmethod
    def from_vector(cls, values: Sequence, n: Optional[int] = None, labels=None):
        values = [Fraction(v) for v in values]
        if n is None:
            n = _n_from_pair_count(len(values))
        if len(values) != n * (n - 1) // 2:
            raise DissimilarityError(f"{len(values)} values cannot fill the pairs of {n} items")
        grid = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(pair_list(n), values):
            grid[i][j] = grid[j][i] = v
        return cls(tuple(map(tuple, grid)), labels)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i + 1)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


def _n_from_pair_count(m: int) -> int:
    n = 1
    while n * (n - 1) // 2 < m:
        n += 1
    if n * (n - 1) // 2 != m:
        raise DissimilarityError(f"{m} is not a triangular number of pairs")
    return n


def validate_dissimilarity(raw, labels=None) -> DissimilarityMap:
    """Validate raw input as a dissimilarity map with positive off-diagonal.

    Diagnostics name the first violated cell, 1-based.
    """
    if isinstance(raw, DissimilarityMap):
        rows = raw.entries
        labels = labels if labels is not None else raw.labels
    else:
        try:
            rows = [list(r) for r in raw]
        except TypeError:
            raise DissimilarityError("input is not a matrix") from None
    n = len(rows)
    if n == 0:
        raise DissimilarityError("empty matrix")
    parsed = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise DissimilarityError(f"matrix is not square: row {i + 1} has {len(row)} entries, expected {n}")
        out = []
        for j, x in enumerate(row):
            try:
                v = scalar(x)
            except (ValueError, TypeError, ZeroDivisionError):
                raise DissimilarityError(f"unparseable entry {x!r} at ({i + 1},{j + 1})", (i + 1, j + 1)) from None
            if not isinstance(v, Fraction):
                raise DissimilarityError(f"non-finite entry at ({i + 1},{j + 1})", (i + 1, j + 1))
            out.append(v)
        parsed.append(out)
    dm = DissimilarityMap(tuple(map(tuple, parsed)), labels)
    for i, j in dm.pairs():
        if dm[i, j] <= 0:
            raise DissimilarityError(f"nonpositive off-diagonal entry {dm[i, j]} at ({i + 1},{j + 1})",
                                     (i + 1, j + 1))
    return dm


def is_ultrametric(d: DissimilarityMap) -> tuple[bool, Optional[tuple[int, int, int]]]:
    """Check ``d_ik <= max(d_ij, d_jk)`` for every triple.

    On failure the witness ``(i, j, k)`` is 1-based with ``d_ik`` the strict
    maximum of the triple.
    """
    e = d.entries
    for a, b, c in combinations(range(d.n), 3):
        for i, j, k in ((a, c, b), (a, b, c), (b, a, c)):
            # i,k is the side being tested; j is the pivot
            if e[i][k] > max(e[i][j], e[j][k]):
                return False, tuple(sorted((i + 1, j + 1, k + 1)))
    return True, None


def max_attained_twice(d: DissimilarityMap) -> bool:
    """Second formulation: every triple's maximum occurs at least twice."""
    e = d.entries
    for i, j, k in combinations(range(d.n), 3):
        vals = sorted((e[i][j], e[i][k], e[j][k]))
        if vals[1] != vals[2]:
            return False
    return True


class Ultrametric(DissimilarityMap):
    """A dissimilarity map satisfying the strengthened triangle inequality."""

    def __post_init__(self):
        super().__post_init__()
        ok, triple = is_ultrametric(self)
        if not ok:
            raise UltrametricError(f"not an ultrametric: triple {triple} violates the strengthened triangle "
                                   f"inequality", triple)

    @property
    def nonpositive_pairs(self) -> list[tuple[int, int]]:
        """1-based pairs with entries <= 0 (can arise from sliding)."""
        return [(i + 1, j + 1) for i, j in self.pairs() if self[i, j] <= 0]


def as_ultrametric(d: DissimilarityMap) -> Ultrametric:
    if isinstance(d, Ultrametric):
        return d
    return Ultrametric(d.entries, d.labels)


def linf_distance(d1: DissimilarityMap, d2: DissimilarityMap) -> Fraction:
    if d1.n != d2.n:
        raise ValueError(f"size mismatch: {d1.n} != {d2.n}")
    return max((abs(d1[i, j] - d2[i, j]) for i, j in d1.pairs()), default=Fraction(0))


# --------------------------------------------------------------------------
# trees
# --------------------------------------------------------------------------

Child = Union["Node", int]


@dataclass(frozen=True)
class Node:
    """Internal node: a weight and a tuple of children (Nodes or 0-based leaves)."""

    weight: Fraction
    children: tuple

    @cached_property
    def leaves(self) -> frozenset:
        out: set[int] = set()
        for c in self.children:
            out |= leaf_set(c)
        return frozenset(out)

    def internal_nodes(self) -> Iterator["Node"]:
        yield self
        for c in self.children:
            if isinstance(c, Node):
                yield from c.internal_nodes()


def leaf_set(c: Child) -> frozenset:
    return c.leaves if isinstance(c, Node) else frozenset((c,))


def min_leaf(c: Child) -> int:
    return min(c.leaves) if isinstance(c, Node) else c


@dataclass(frozen=True)
class WeightedRootedTree:
    """Rooted tree on leaves ``0..n-1`` with weights on internal nodes.

    Internal nodes are identified by their leaf cluster (a frozenset), which
    is unique within a tree.  ``strict`` trees require weights to increase
    strictly toward the root and every internal node to have at least two
    children; resolutions built during sliding relax this to non-strict
    monotone weights.
    """

    root: Node
    n: int
    strict: bool = True

    def __post_init__(self):
        if self.root.leaves != frozenset(range(self.n)):
            raise ValueError("tree leaves must be exactly 0..n-1")
        seen: list[int] = []
        for node in self.root.internal_nodes():
            if len(node.children) < 2:
                raise ValueError(f"internal node over {sorted(node.leaves)} has fewer than two children")
            for c in node.children:
                if isinstance(c, Node):
                    if self.strict and not c.weight < node.weight:
                        raise ValueError("weights must strictly increase toward the root")
                    if not c.weight <= node.weight:
                        raise ValueError("child weight exceeds parent weight")
                else:
                    seen.append(c)
        if sorted(seen) != list(range(self.n)):
            raise ValueError("every leaf label must appear exactly once")

    def internal_nodes(self) -> list[Node]:
        return list(self.root.internal_nodes())

    @cached_property
    def by_cluster(self) -> dict[frozenset, Node]:
        return {v.leaves: v for v in self.root.internal_nodes()}

    def node(self, cluster) -> Node:
        return self.by_cluster[frozenset(cluster)]

    def weights(self) -> dict[frozenset, Fraction]:
        return {c: v.weight for c, v in self.by_cluster.items()}

    def descendants(self, cluster) -> list[Node]:
        """Internal descendants of the node with this cluster."""
        return [v for v in self.node(cluster).internal_nodes()][1:]

    def is_binary(self) -> bool:
        return all(len(v.children) == 2 for v in self.root.internal_nodes())

    def with_weight(self, cluster, weight: Fraction) -> "WeightedRootedTree":
        cluster = frozenset(cluster)

        def rebuild(v: Node) -> Node:
            kids = tuple(rebuild(c) if isinstance(c, Node) else c for c in v.children)
            w = Fraction(weight) if v.leaves == cluster else v.weight
            return Node(w, kids)

        return WeightedRootedTree(rebuild(self.root), self.n, strict=False)


def _sorted_children(children) -> tuple:
    return tuple(sorted(children, key=min_leaf))


def tree_from_ultrametric(delta: DissimilarityMap) -> WeightedRootedTree:
    """Unique strictly-weighted tree inducing ``delta``.

    Top down: the node weight is the largest entry among its items, and the
    children are the classes of the relation ``delta_ij < weight``, which is
    an equivalence for ultrametrics.  Equal thresholds collapse into one node.
    """
    ok, triple = is_ultrametric(delta)
    if not ok:
        raise UltrametricError(f"not an ultrametric: triple {triple}", triple)
    if delta.n < 2:
        raise ValueError("need at least two items to build a tree")
    e = delta.entries

    def build(items: list[int]) -> Child:
        if len(items) == 1:
            return items[0]
        w = max(e[i][j] for i, j in combinations(items, 2))
        classes: list[list[int]] = []
        for x in items:
            for cls in classes:
                if e[cls[0]][x] < w:
                    cls.append(x)
                    break
            else:
                classes.append([x])
        return Node(w, _sorted_children(build(c) for c in classes))

    root = build(list(range(delta.n)))
    return WeightedRootedTree(root, delta.n)


def ultrametric_from_tree(tree: WeightedRootedTree, labels=None) -> Ultrametric:
    """``delta_ij`` is the weight of the lowest common ancestor of leaves i and j."""
    n = tree.n
    grid = [[Fraction(0)] * n for _ in range(n)]
    for v in tree.root.internal_nodes():
        parts = [leaf_set(c) for c in v.children]
        for a, b in combinations(parts, 2):
            for i in a:
                for j in b:
                    grid[i][j] = grid[j][i] = v.weight
    return Ultrametric(tuple(map(tuple, grid)), labels)


def canonical_tree(root: Node) -> Node:
    """Children sorted by smallest leaf, recursively."""
    kids = [canonical_tree(c) if isinstance(c, Node) else c for c in root.children]
    return Node(root.weight, _sorted_children(kids))


def to_newick(tree: WeightedRootedTree, labels: Optional[Sequence[str]] = None,
              branch_lengths: bool = False) -> str:
    """Newick string with internal-node weights as node labels.

    Children are ordered by their smallest leaf.  With ``branch_lengths``,
    each edge also carries ``(parent weight - child weight) / 2`` where leaves
    sit at weight 0.
    """

    def name(i: int) -> str:
        return labels[i] if labels else str(i + 1)

    def emit(c: Child, parent_w: Optional[Fraction]) -> str:
        if isinstance(c, Node):
            body = "(" + ",".join(emit(k, c.weight) for k in _sorted_children(c.children)) + ")" + str(c.weight)
            own = c.weight
        else:
            body = name(c)
            own = Fraction(0)
        if branch_lengths and parent_w is not None:
            body += ":" + str((parent_w - own) / 2)
        return body

    return emit(tree.root, None) + ";"
