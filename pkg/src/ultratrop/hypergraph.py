"""Tangent directed hypergraphs and the greatest-SCC extremality test."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cone import NotInConeError, TropicalSystem, check_membership
from .tropical import BOTTOM, trop_dot


@dataclass(frozen=True)
class DirectedHypergraph:
    n_nodes: int
    arcs: tuple  # ((tail frozenset, head frozenset), ...)
    labels: Optional[tuple] = None

    def __post_init__(self):
        for tail, head in self.arcs:
            if not tail or not head:
                raise ValueError("hyperarc tails and heads must be nonempty")
            if not (tail | head) <= frozenset(range(self.n_nodes)):
                raise ValueError("hyperarc references an unknown node")

    def label(self, u: int) -> str:
        return self.labels[u] if self.labels else str(u)

    @property
    def multi_tail_arcs(self) -> list:
        return [a for a in self.arcs if len(a[0]) > 1]


@dataclass(frozen=True)
class SCCDecomposition:
    components: tuple  # tuple of frozensets, ordered by smallest node
    order: frozenset  # pairs (a, b) of component indices with C_a <= C_b
    greatest: Optional[frozenset]

    def component_of(self, u: int) -> int:
        for k, c in enumerate(self.components):
            if u in c:
                return k
        raise KeyError(u)

    def leq(self, a: int, b: int) -> bool:
        return (a, b) in self.order


def tangent_hypergraph(system: TropicalSystem, v: Sequence) -> DirectedHypergraph:
    """One hyperarc ``(argmax B_k v, argmax A_k v)`` per active row ``k``."""
    ok, row = check_membership(v, system)
    if not ok:
        raise NotInConeError(f"vector violates row {row + 1}: {system.describe_row(row)}", row)
    arcs = []
    for a_row, b_row in zip(system.A.entries, system.B.entries):
        av, head = trop_dot(a_row, v)
        bv, tail = trop_dot(b_row, v)
        if av is BOTTOM or bv is BOTTOM or av != bv:
            continue
        arcs.append((tail, head))
    return DirectedHypergraph(system.indexer.dim, tuple(arcs), tuple(system.indexer.labels()))


def reachable_from(H: DirectedHypergraph, u: int) -> frozenset:
    """Least set containing ``u`` and closed under firing hyperarcs."""
    if not 0 <= u < H.n_nodes:
        raise ValueError(f"unknown node {u}")
    reached = {u}
    pending = list(H.arcs)
    changed = True
    while changed:
        changed = False
        rest = []
        for tail, head in pending:
            if tail <= reached:
                if not head <= reached:
                    reached |= head
                    changed = True
            else:
                rest.append((tail, head))
        pending = rest
    return frozenset(reached)


def scc_decomposition(H: DirectedHypergraph) -> SCCDecomposition:
    reach = [reachable_from(H, u) for u in range(H.n_nodes)]
    comps: list[frozenset] = []
    assigned: dict[int, int] = {}
    for u in range(H.n_nodes):
        if u in assigned:
            continue
        c = frozenset(w for w in reach[u] if u in reach[w])
        for w in c:
            assigned[w] = len(comps)
        comps.append(c)
    order = set()
    for a, ca in enumerate(comps):
        rep = min(ca)
        for b, cb in enumerate(comps):
            if min(cb) in reach[rep]:
                order.add((a, b))
    greatest = None
    for b, cb in enumerate(comps):
        if all((a, b) in order for a in range(len(comps))):
            greatest = cb
            break
    return SCCDecomposition(tuple(comps), frozenset(order), greatest)


def is_extreme(system: TropicalSystem, v: Sequence) -> tuple[bool, SCCDecomposition]:
    """Extremality of ``v`` in the cone: its SCC order must have a greatest element."""
    dec = scc_decomposition(tangent_hypergraph(system, v))
    return dec.greatest is not None, dec


def to_dot(H: DirectedHypergraph, sccs: Optional[SCCDecomposition] = None, name: str = "tangent") -> str:
    """Graphviz rendering; multi-node tails go through an AND junction."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    if sccs is not None:
        for k, comp in enumerate(sccs.components):
            style = "filled" if comp == sccs.greatest else "dashed"
            lines.append(f"  subgraph cluster_{k} {{")
            lines.append(f"    style={style}; color=gray80;")
            for u in sorted(comp):
                lines.append(f'    n{u} [label="{H.label(u)}"];')
            lines.append("  }")
    else:
        for u in range(H.n_nodes):
            lines.append(f'  n{u} [label="{H.label(u)}"];')
    for k, (tail, head) in enumerate(H.arcs):
        if len(tail) == 1:
            (t,) = tail
            for h in sorted(head):
                lines.append(f"  n{t} -> n{h};")
        else:
            lines.append(f'  and{k} [shape=point label=""];')
            for t in sorted(tail):
                lines.append(f"  n{t} -> and{k} [arrowhead=none];")
            for h in sorted(head):
                lines.append(f"  and{k} -> n{h};")
    lines.append("}")
    return "\n".join(lines) + "\n"
