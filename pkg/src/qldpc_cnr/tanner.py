"""Tanner-graph analysis: computation trees, qubit separation, information
measurement, and the shipped trapping-set fixtures of the built-in code.

Computation trees are positional: the same graph node may occur at several
tree positions, as message passing revisits nodes along non-reversing
walks. One tree level corresponds to one complete decoder iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .gf2 import SparseBinaryMatrix


class TrappingSetKind(str, Enum):
    CTS = "cts"
    QTS = "qts"


class TannerGraph:
    """Bipartite adjacency view of a parity-check matrix."""

    def __init__(self, H: SparseBinaryMatrix):
        self.H = H
        self.qubit_count = H.cols
        self.check_count = H.rows
        self.check_neighbors = [np.asarray(s, dtype=np.int64) for s in H.row_support]
        self.qubit_neighbors = [np.asarray(s, dtype=np.int64) for s in H.col_support]
        self.d_v = int(max((len(s) for s in self.qubit_neighbors), default=0))
        self.d_c = int(max((len(s) for s in self.check_neighbors), default=0))


@dataclass
class CTNode:
    kind: str            # "qubit" | "check"
    index: int
    parent: int          # position of the parent node within the tree, -1 for root
    level: int           # completed-iteration level this node belongs to


@dataclass
class ComputationTree:
    """Breadth-first materialization of the unrolled message-passing tree."""

    root_kind: str
    root_index: int
    depth: int
    nodes: list[CTNode] = field(repr=False)

    def level_nodes(self, level: int, kind: str | None = None) -> list[CTNode]:
        return [nd for nd in self.nodes
                if nd.level == level and (kind is None or nd.kind == kind)]

    def children(self, position: int) -> list[int]:
        return [i for i, nd in enumerate(self.nodes) if nd.parent == position]


def build_ct(g: TannerGraph, root_kind: str, root_index: int, depth: int,
             max_nodes: int = 200_000) -> ComputationTree:
    """Unroll ``depth`` complete iterations from the root with parent-edge
    exclusion. Rooted at a qubit, each level adds a check layer then a qubit
    layer (and symmetrically for a check root)."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if root_kind not in ("qubit", "check"):
        raise ValueError("root_kind must be 'qubit' or 'check'")
    limit = g.qubit_count if root_kind == "qubit" else g.check_count
    if not (0 <= root_index < limit):
        raise IndexError(f"{root_kind} index {root_index} out of range")
    nodes = [CTNode(root_kind, root_index, parent=-1, level=0)]
    frontier = [0]
    kind = root_kind
    for half_level in range(2 * depth):
        level = half_level // 2 + 1
        next_kind = "check" if kind == "qubit" else "qubit"
        nxt: list[int] = []
        for pos in frontier:
            node = nodes[pos]
            neigh = (g.qubit_neighbors[node.index] if node.kind == "qubit"
                     else g.check_neighbors[node.index])
            parent_index = nodes[node.parent].index if node.parent >= 0 else -1
            for nb in neigh:
                if int(nb) == parent_index:
                    continue
                nodes.append(CTNode(next_kind, int(nb), parent=pos, level=level))
                nxt.append(len(nodes) - 1)
                if len(nodes) > max_nodes:
                    raise MemoryError("computation tree exceeded node budget")
        frontier = nxt
        kind = next_kind
    return ComputationTree(root_kind=root_kind, root_index=root_index,
                           depth=depth, nodes=nodes)


def leaf_checks(g: TannerGraph, root_check: int) -> list[int]:
    """Checks one level below a root check: neighbors of its qubits, root
    excluded, deduplicated."""
    if not (0 <= root_check < g.check_count):
        raise IndexError(f"check index {root_check} out of range")
    out: set[int] = set()
    for q in g.check_neighbors[root_check]:
        for c in g.qubit_neighbors[q]:
            if int(c) != root_check:
                out.add(int(c))
    return sorted(out)


@dataclass
class IMTable:
    """Information-measurement values: per-check totals plus the qubit side
    table they were summed from."""

    check_values: dict[int, int]
    qubit_values: dict[int, int]

    def max_checks(self) -> list[int]:
        if not self.check_values:
            return []
        best = max(self.check_values.values())
        return sorted(c for c, v in self.check_values.items() if v == best)


def find_ims(g: TannerGraph, unsat, checks) -> IMTable:
    """Qubit value = its count of unsatisfied neighbors; check value = sum of
    its qubits' values. ``checks`` must not repeat a node."""
    checks = [int(c) for c in checks]
    if len(set(checks)) != len(checks):
        raise ValueError("duplicate check in list")
    unsat_set = set(int(c) for c in unsat)
    im_q: dict[int, int] = {}
    im_c: dict[int, int] = {}
    for c in checks:
        total = 0
        for q in g.check_neighbors[c]:
            q = int(q)
            if q not in im_q:
                im_q[q] = sum(1 for cq in g.qubit_neighbors[q] if int(cq) in unsat_set)
            total += im_q[q]
        im_c[c] = total
    return IMTable(check_values=im_c, qubit_values=im_q)


@dataclass(frozen=True)
class TrappingSetSpec:
    """A known harmful configuration: its qubits, odd-degree checks, and for
    the quantum kind the isomorphic partition halves."""

    kind: TrappingSetKind
    label: tuple[int, int]
    qubits: frozenset[int]
    odd_checks: frozenset[int]
    partition: tuple[frozenset[int], frozenset[int]] | None = None

    def subset_for(self, qubit: int) -> frozenset[int]:
        """The trapped subset relevant to ``qubit``: all qubits for a CTS,
        the qubit's own partition half for a QTS."""
        if self.kind is TrappingSetKind.CTS:
            return self.qubits
        if self.partition is None:
            raise ValueError("QTS spec lacks a partition")
        for half in self.partition:
            if qubit in half:
                return half
        raise ValueError(f"qubit {qubit} not in either partition half")


def _neighbors_set(g: TannerGraph, qubits) -> set[int]:
    out: set[int] = set()
    for q in qubits:
        out.update(int(c) for c in g.qubit_neighbors[q])
    return out


def validate_qts(g: TannerGraph, spec: TrappingSetSpec) -> bool:
    """Check the defining symmetry: both halves see the same check set and
    the induced subgraph has no odd-degree checks."""
    if spec.kind is not TrappingSetKind.QTS or spec.partition is None:
        return False
    va, vb = spec.partition
    if len(va) != len(vb) or va | vb != spec.qubits:
        return False
    if _neighbors_set(g, va) != _neighbors_set(g, vb):
        return False
    for c in _neighbors_set(g, spec.qubits):
        deg = sum(1 for q in g.check_neighbors[c] if int(q) in spec.qubits)
        if deg % 2:
            return False
    return True


def qubit_separation(g: TannerGraph, v: int, trapped: TrappingSetSpec,
                     k_max: int) -> int:
    """Largest K <= k_max such that some check adjacent to ``v`` with exactly
    one trapped-subset neighbor has no trapped-subset qubit among its
    descendants within K levels. Returns 0 when no such check exists.

    The walk explores directed qubit/check edges without immediate
    backtracking, which covers every positional tree path.
    """
    if v not in trapped.qubits:
        raise ValueError(f"qubit {v} is not part of the trapping set")
    subset = trapped.subset_for(v)
    others = set(subset) - {v}
    best = 0
    for c in g.qubit_neighbors[v]:
        c = int(c)
        if sum(1 for q in g.check_neighbors[c] if int(q) in subset) != 1:
            continue
        frontier = {(c, int(q)) for q in g.check_neighbors[c] if int(q) != v}
        hit_level = None
        for level in range(1, k_max + 1):
            if any(q in others for _, q in frontier):
                hit_level = level
                break
            nxt: set[tuple[int, int]] = set()
            for prev_check, q in frontier:
                for c2 in g.qubit_neighbors[q]:
                    c2 = int(c2)
                    if c2 == prev_check:
                        continue
                    for q2 in g.check_neighbors[c2]:
                        q2 = int(q2)
                        if q2 != q:
                            nxt.add((c2, q2))
            frontier = nxt
        sep = k_max if hit_level is None else hit_level - 1
        best = max(best, sep)
    return best


def limiting_checks(g: TannerGraph, v: int, trapped: TrappingSetSpec) -> set[int]:
    """Level-2 checks of T(v) reached through opposite-partition qubits; for
    a d_v-regular code there are exactly d_v(d_v - 1) of them."""
    if trapped.kind is not TrappingSetKind.QTS or trapped.partition is None:
        raise ValueError("limiting checks are defined for quantum trapping sets")
    va, vb = trapped.partition
    opposite = vb if v in va else va if v in vb else None
    if opposite is None:
        raise ValueError(f"qubit {v} not in either partition half")
    out: set[int] = set()
    for c in g.qubit_neighbors[v]:
        c = int(c)
        for u in g.check_neighbors[c]:
            u = int(u)
            if u in opposite:
                out.update(int(c2) for c2 in g.qubit_neighbors[u] if int(c2) != c)
    return out


# -- shipped fixtures for the built-in [[882, 24]] code ----------------------

def cts_fixture() -> TrappingSetSpec:
    """The (3,3) classical-type trapping set of the built-in code's Z graph.

    Its computed syndrome has support {0, 2, 12}; checks {1, 6, 7} are the
    mis-satisfied ones.
    """
    return TrappingSetSpec(kind=TrappingSetKind.CTS, label=(3, 3),
                           qubits=frozenset({0, 1, 6}),
                           odd_checks=frozenset({0, 2, 12}))


def qts_fixture() -> TrappingSetSpec:
    """The (6,0) quantum trapping set of the built-in code's Z graph."""
    va = frozenset({0, 351, 405})
    vb = frozenset({477, 478, 483})
    return TrappingSetSpec(kind=TrappingSetKind.QTS, label=(6, 0),
                           qubits=va | vb, odd_checks=frozenset(),
                           partition=(va, vb))


FIXTURES = {"cts-3-3": cts_fixture, "qts-6-0": qts_fixture}
