"""Fusion graphs, embedding irreps, component structure and the McKay check."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .characters import CharacterTable
from .double import DrinfeldDouble, ModularData
from .errors import GraphError, TheoremViolation
from .fusion import FusionData


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values(), key=lambda g: g[0])


@dataclass
class FusionGraph:
    irreps: tuple[int, ...]  # 0-based; more than one for a composite (summed) graph
    adjacency: np.ndarray
    weak_components: list[list[int]] = field(init=False)

    def __post_init__(self):
        uf = UnionFind(len(self.adjacency))
        for j, k in np.argwhere(self.adjacency > 0):
            uf.union(int(j), int(k))
        self.weak_components = uf.groups()

    @property
    def oriented(self) -> bool:
        return not np.array_equal(self.adjacency, self.adjacency.T)

    @property
    def irrep_index(self) -> int:
        return self.irreps[0]


def fusion_graph(md: ModularData, fd: FusionData, irreps: int | Sequence[int]) -> FusionGraph:
    """Graph with N_ij^k edges j -> k; a sequence of irreps gives the summed graph."""
    idx = (irreps,) if isinstance(irreps, (int, np.integer)) else tuple(irreps)
    if not idx or min(idx) < 0 or max(idx) >= fd.rank:
        raise GraphError(f"irrep index out of range: {[i + 1 for i in idx]}")
    adjacency = sum(fd.matrix(md, int(i)) for i in idx)
    return FusionGraph(tuple(int(i) for i in idx), np.asarray(adjacency, dtype=np.int64))


# --- embedding representations -------------------------------------------------


@dataclass
class EmbeddingSelection:
    target: str
    candidates: list[tuple[int, ...]]  # each a tuple of classical irrep indices (pairs are composite)
    composite: bool
    note: str = ""

    def labels(self) -> list[str]:
        return ["+".join(str(i + 1) for i in c) for c in self.candidates]


def _is_cyclic(t: CharacterTable) -> bool:
    g = t.group
    return bool(g.element_orders.max() == g.order)


def embedding_irreps(t: CharacterTable, target: str) -> EmbeddingSelection:
    """Faithful 2-dim quaternionic (SU2) or faithful 3-dim (SU3) irreps of G.

    Cyclic groups have no such irrep; their 2-dim embedding is the sum of a
    faithful linear character and its conjugate, returned as one composite candidate.
    """
    g = t.group
    if g.order == 1:
        return EmbeddingSelection(target, [(0,)], False, "trivial group")
    faithful = [r for r in range(t.size) if t.is_faithful(r)]
    if target == "SU2" and _is_cyclic(t):
        linear = [r for r in faithful if t.degrees[r] == 1]
        if not linear:
            raise GraphError("no embedding irrep: cyclic group without faithful character")
        rho = linear[0]
        rho_bar = int(t.conjugate_irrep()[rho])
        return EmbeddingSelection(target, [tuple(sorted((rho, rho_bar)))], True, "composite embedding")
    if target == "SU2":
        picks = [r for r in faithful if t.degrees[r] == 2 and t.fs_indicators[r] == -1]
    elif target == "SU3":
        picks = [r for r in faithful if t.degrees[r] == 3]
    else:
        raise GraphError(f"unknown embedding target {target!r}")
    note = "" if picks else "no embedding irrep"
    return EmbeddingSelection(target, [(r,) for r in picks], False, note)


# --- connectivity -------------------------------------------------------------


@dataclass
class ConnectivityResult:
    class_number: int
    component_counts: dict[str, int]
    blocks_match: dict[str, bool]

    @property
    def holds(self) -> bool:
        return bool(self.component_counts) and all(
            c == self.class_number for c in self.component_counts.values()
        ) and all(self.blocks_match.values())


def connectivity_conjecture(
    dd: DrinfeldDouble, md: ModularData, fd: FusionData, sel: EmbeddingSelection
) -> ConnectivityResult:
    """Weak components of each embedding graph, and whether each is one class block."""
    blocks = sorted(
        [list(range(dd.block_slice(k).start, dd.block_slice(k).stop)) for k in range(dd.group.class_number)],
        key=lambda b: b[0],
    )
    counts, match = {}, {}
    for cand in sel.candidates:
        graph = fusion_graph(md, fd, cand)
        label = "+".join(str(i + 1) for i in cand)
        counts[label] = len(graph.weak_components)
        match[label] = graph.weak_components == blocks
    return ConnectivityResult(dd.group.class_number, counts, match)


# --- McKay --------------------------------------------------------------------


def affine_diagram(kind: str, n: int) -> np.ndarray:
    """Adjacency matrix of the affine diagram X_n^(1) (n + 1 vertices)."""
    size = n + 1
    a = np.zeros((size, size), dtype=np.int64)

    def link(i, j, m=1):
        a[i, j] += m
        a[j, i] += m

    if kind == "A":
        if n == 1:
            link(0, 1, 2)
        else:
            for i in range(size):
                link(i, (i + 1) % size)
    elif kind == "D":
        if n < 4:
            raise GraphError("affine D needs n >= 4")
        # spine 2 .. n-2, leaves 0, 1 on one end and n-1, n on the other
        spine = list(range(2, n - 1))
        for i, j in zip(spine, spine[1:]):
            link(i, j)
        link(0, 2)
        link(1, 2)
        link(n - 2, n - 1)
        link(n - 2, n)
    elif kind == "E":
        arms = {6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}.get(n)
        if arms is None:
            raise GraphError("affine E needs n in {6, 7, 8}")
        nxt = 1
        for length in arms:
            prev = 0
            for _ in range(length):
                link(prev, nxt)
                prev = nxt
                nxt += 1
    else:
        raise GraphError(f"unknown diagram type {kind!r}")
    return a


def isomorphic(a: np.ndarray, b: np.ndarray) -> bool:
    """Exact multigraph isomorphism by backtracking with degree pruning."""
    n = len(a)
    if len(b) != n:
        return False
    deg_a, deg_b = a.sum(axis=1) + np.diag(a), b.sum(axis=1) + np.diag(b)
    if sorted(deg_a) != sorted(deg_b):
        return False
    order = sorted(range(n), key=lambda v: -deg_a[v])
    mapping = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        for w in range(n):
            if used[w] or deg_b[w] != deg_a[v]:
                continue
            if any(a[v, order[q]] != b[w, mapping[order[q]]] for q in range(pos)) or a[v, v] != b[w, w]:
                continue
            mapping[v], used[w] = w, True
            if extend(pos + 1):
                return True
            mapping[v], used[w] = -1, False
        return False

    return extend(0)


def _candidate_diagrams(size: int) -> list[tuple[str, np.ndarray]]:
    out = []
    if size >= 2:
        out.append((f"A{size - 1}", affine_diagram("A", size - 1)))
    if size >= 5:
        out.append((f"D{size - 1}", affine_diagram("D", size - 1)))
    if size - 1 in (6, 7, 8):
        out.append((f"E{size - 1}", affine_diagram("E", size - 1)))
    return out


def mckay_check(dd: DrinfeldDouble, md: ModularData, fd: FusionData, sel: EmbeddingSelection) -> str:
    """Affine ADE type of the classical block of the first embedding graph."""
    if not sel.candidates:
        raise TheoremViolation("McKay failure: no embedding representation")
    graph = fusion_graph(md, fd, sel.candidates[0])
    block = dd.block_slice(0)
    adj = graph.adjacency[block, block]
    if not np.array_equal(adj, adj.T):
        adj = adj + adj.T
    for label, diagram in _candidate_diagrams(len(adj)):
        if isomorphic(adj, diagram):
            return label
    if dd.group.order == 1:
        return "none"
    raise TheoremViolation("McKay failure: classical graph is not an affine ADE diagram")


# --- DOT ----------------------------------------------------------------------


def vertex_labels(dd: DrinfeldDouble) -> list[str]:
    return [f"({x.class_index + 1}:{x.centralizer_irrep + 1})" for x in dd.irreps]


def dot_export(graph: FusionGraph, labels: Sequence[str], name: str = "fusion") -> str:
    adj = graph.adjacency
    lines = [f'digraph "{name}" {{']
    for lab in labels:
        lines.append(f'  "{lab}";')
    if graph.oriented:
        for j, k in np.argwhere(adj > 0):
            for _ in range(int(adj[j, k])):
                lines.append(f'  "{labels[j]}" -> "{labels[k]}";')
    else:
        for j, k in np.argwhere(np.triu(adj) > 0):
            for _ in range(int(adj[j, k])):
                lines.append(f'  "{labels[j]}" -> "{labels[k]}" [dir=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r'^\s*"([^"]+)";\s*$')
_EDGE = re.compile(r'^\s*"([^"]+)"\s*->\s*"([^"]+)"\s*(\[dir=none\])?;\s*$')


def parse_dot(text: str) -> tuple[list[str], np.ndarray]:
    """Inverse of ``dot_export``: vertex labels and adjacency matrix."""
    labels: list[str] = []
    edges: list[tuple[str, str, bool]] = []
    for line in text.splitlines():
        if m := _EDGE.match(line):
            edges.append((m.group(1), m.group(2), bool(m.group(3))))
        elif m := _NODE.match(line):
            labels.append(m.group(1))
    pos = {lab: i for i, lab in enumerate(labels)}
    adj = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for a, b, undirected in edges:
        i, j = pos[a], pos[b]
        adj[i, j] += 1
        if undirected and i != j:
            adj[j, i] += 1
    return labels, adj
