"""The poset D_P, its U-chains, and the chain-union partition lambda(D_P)."""

from __future__ import annotations

import enum
import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import NamedTuple

from .errors import DomainError, ResourceLimitError
from .partitions import Partition, count_parts_of_size

__all__ = [
    "Vertex",
    "EdgeFamily",
    "Edge",
    "PosetDP",
    "UChain",
    "build_dp",
    "comparable",
    "u_cardinality",
    "u_chain",
    "max_u_chains",
    "greene_kleitman_lambda",
    "chain_union_sizes_bruteforce",
    "to_dot",
    "to_json",
]


class Vertex(NamedTuple):
    """Position ``u`` in the ``k``-th row of length ``p``; all 1-based."""

    u: int
    p: int
    k: int

    def __str__(self) -> str:
        return f"({self.u},{self.p},{self.k})"


class EdgeFamily(enum.Enum):
    DOWN = "down"
    UPSHIFT = "upshift"
    WITHIN_GROUP = "within_group"
    ISOLATED = "isolated"


class Edge(NamedTuple):
    src: Vertex
    dst: Vertex
    family: EdgeFamily


@dataclass(frozen=True)
class PosetDP:
    partition: Partition
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def index(self) -> dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for e in self.edges:
            out[self.index[e.src]].append(self.index[e.dst])
        return tuple(tuple(s) for s in out)

    @cached_property
    def topological_order(self) -> tuple[int, ...] | None:
        """Kahn order of vertex indices, or None if the graph has a cycle."""
        indeg = [0] * len(self.vertices)
        for succ in self.successors:
            for j in succ:
                indeg[j] += 1
        queue = deque(i for i, d in enumerate(indeg) if d == 0)
        order = []
        while queue:
            i = queue.popleft()
            order.append(i)
            for j in self.successors[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        return tuple(order) if len(order) == len(self.vertices) else None

    @property
    def is_acyclic(self) -> bool:
        return self.topological_order is not None

    @cached_property
    def reach(self) -> tuple[int, ...]:
        """Bitmask per vertex of everything reachable from it, itself included."""
        order = self.topological_order
        if order is None:
            raise DomainError("reachability requested on a cyclic graph")
        masks = [1 << i for i in range(len(self.vertices))]
        for i in reversed(order):
            for j in self.successors[i]:
                masks[i] |= masks[j]
        return tuple(masks)

    def below(self, a: Vertex, b: Vertex) -> bool:
        """True when there is a directed path from ``a`` to ``b``."""
        return bool(self.reach[self.index[a]] >> self.index[b] & 1)

    def family_counts(self) -> dict[EdgeFamily, int]:
        counts = Counter(e.family for e in self.edges)
        return {f: counts.get(f, 0) for f in EdgeFamily}


@dataclass(frozen=True)
class UChain:
    p: int
    vertices: frozenset[Vertex] = field(repr=False)

    @property
    def cardinality(self) -> int:
        return len(self.vertices)


def _groups(P: Partition) -> list[tuple[int, int]]:
    return P.multiplicities()


def _is_isolated(groups: list[tuple[int, int]], i: int) -> bool:
    # Boundary convention: a virtual part of size +inf above, 0 below.
    above = groups[i - 1][0] if i > 0 else None
    below = groups[i + 1][0] if i + 1 < len(groups) else 0
    p = groups[i][0]
    return (above is None or above - p > 1) and p - below > 1


def build_dp(P: Partition) -> PosetDP:
    """Construct D_P with its four edge families."""
    if not P:
        raise DomainError("D_P is undefined for the empty partition")
    groups = _groups(P)
    vertices = tuple(Vertex(u, p, k) for p, m in groups for k in range(1, m + 1) for u in range(1, p + 1))
    edges: list[Edge] = []
    for i, (p, m) in enumerate(groups):
        for k in range(2, m + 1):
            for u in range(1, p + 1):
                edges.append(Edge(Vertex(u, p, k), Vertex(u, p, k - 1), EdgeFamily.WITHIN_GROUP))
        if _is_isolated(groups, i):
            for u in range(1, p):
                edges.append(Edge(Vertex(u, p, 1), Vertex(u + 1, p, m), EdgeFamily.ISOLATED))
        if i + 1 < len(groups):
            q, mq = groups[i + 1]
            for u in range(1, q + 1):
                edges.append(Edge(Vertex(u, p, 1), Vertex(u, q, mq), EdgeFamily.DOWN))
                edges.append(Edge(Vertex(u, q, 1), Vertex(u + p - q, p, m), EdgeFamily.UPSHIFT))
    return PosetDP(P, vertices, tuple(edges))


def comparable(D: PosetDP, a: Vertex, b: Vertex) -> bool:
    for v in (a, b):
        if v not in D.index:
            raise DomainError(f"vertex {v} is not in D_{D.partition}")
    return D.below(a, b) or D.below(b, a)


def u_cardinality(P: Partition, p: int) -> int:
    """Closed-form size of the U-chain U_P(p)."""
    counts = Counter(P)
    if counts[p] == 0:
        raise DomainError(f"{P} has no part of size {p}")
    longer = sum(m for part, m in counts.items() if part > p)
    return p * counts[p] + (p - 1) * counts[p - 1] + 2 * longer


def u_chain(P: Partition, p: int) -> UChain:
    """U_P(p) as an explicit vertex set of D_P."""
    if count_parts_of_size(P, p) == 0:
        raise DomainError(f"{P} has no part of size {p}")
    chosen = set()
    for q, m in _groups(P):
        for k in range(1, m + 1):
            if q in (p, p - 1):
                chosen.update(Vertex(u, q, k) for u in range(1, q + 1))
            elif q > p:
                chosen.update((Vertex(1, q, k), Vertex(q, q, k)))
    return UChain(p, frozenset(chosen))


def max_u_chains(P: Partition) -> tuple[frozenset[int], int]:
    """Part sizes whose U-chains have maximum cardinality, with that cardinality."""
    if not P:
        raise DomainError("no U-chains in the empty partition")
    values = {p: u_cardinality(P, p) for p in set(P)}
    best = max(values.values())
    return frozenset(p for p, v in values.items() if v == best), best


def _chain_union_sizes(D: PosetDP) -> list[int]:
    """c_k for k = 1, 2, ... until every vertex is covered.

    Successive shortest paths on the split-vertex network of the transitive
    closure; each unit of flow is one chain and vertices carry gain -1.
    """
    nv = len(D.vertices)
    source, sink = 2 * nv, 2 * nv + 1
    graph: list[list[list[int]]] = [[] for _ in range(2 * nv + 2)]

    def add(a, b, cap, cost):
        graph[a].append([b, cap, cost, len(graph[b])])
        graph[b].append([a, 0, -cost, len(graph[a]) - 1])

    reach = D.reach
    for i in range(nv):
        add(source, 2 * i, 1 << 30, 0)
        add(2 * i, 2 * i + 1, 1, -1)
        add(2 * i + 1, sink, 1 << 30, 0)
        for j in range(nv):
            if j != i and reach[i] >> j & 1:
                add(2 * i + 1, 2 * j, 1 << 30, 0)

    sizes: list[int] = []
    total = 0
    while total < nv:
        dist = [None] * len(graph)
        prev: list[tuple[int, int] | None] = [None] * len(graph)
        dist[source] = 0
        queue = deque([source])
        in_queue = [False] * len(graph)
        in_queue[source] = True
        while queue:
            a = queue.popleft()
            in_queue[a] = False
            for idx, (b, cap, cost, _) in enumerate(graph[a]):
                if cap > 0 and (dist[b] is None or dist[a] + cost < dist[b]):
                    dist[b] = dist[a] + cost
                    prev[b] = (a, idx)
                    if not in_queue[b]:
                        queue.append(b)
                        in_queue[b] = True
        # Shortest path cost is -(new vertices covered); never positive.
        gain = -dist[sink]
        node = sink
        while node != source:
            a, idx = prev[node]
            edge = graph[a][idx]
            edge[1] -= 1
            graph[node][edge[3]][1] += 1
            node = a
        total += gain
        sizes.append(total)
    return sizes


def greene_kleitman_lambda(D: PosetDP, max_vertices: int = 64) -> Partition:
    """Gansner's partition: consecutive differences of maximal k-chain unions."""
    if len(D.vertices) > max_vertices:
        raise ResourceLimitError(f"D_P has {len(D.vertices)} vertices, bound is {max_vertices}")
    sizes = _chain_union_sizes(D)
    return Partition(b - a for a, b in zip([0] + sizes, sizes))


def chain_union_sizes_bruteforce(D: PosetDP, max_vertices: int = 20) -> list[int]:
    """c_k by enumerating maximal chains and all k-subsets of them."""
    if len(D.vertices) > max_vertices:
        raise ResourceLimitError(f"brute force limited to {max_vertices} vertices")
    reach = D.reach
    nv = len(D.vertices)
    # Cover relations of the order, then all maximal chains via DFS.
    strict = [reach[i] & ~(1 << i) for i in range(nv)]
    covers = [
        [j for j in range(nv) if strict[i] >> j & 1 and not any(strict[m] >> j & 1 for m in range(nv) if strict[i] >> m & 1)]
        for i in range(nv)
    ]
    minimal = [i for i in range(nv) if not any(strict[j] >> i & 1 for j in range(nv))]
    chains: list[int] = []

    def walk(i, mask):
        mask |= 1 << i
        if not covers[i]:
            chains.append(mask)
        for j in covers[i]:
            walk(j, mask)

    for i in minimal:
        walk(i, 0)
    chains = list(set(chains))
    sizes = []
    k = 1
    while not sizes or sizes[-1] < nv:
        best = 0
        for combo in combinations(chains, min(k, len(chains))):
            acc = 0
            for c in combo:
                acc |= c
            best = max(best, bin(acc).count("1"))
        sizes.append(best)
        k += 1
    return sizes


_DOT_STYLE = {
    EdgeFamily.DOWN: "dashed",
    EdgeFamily.UPSHIFT: "dotted",
    EdgeFamily.WITHIN_GROUP: "solid",
    # Graphviz has no dash-dot pattern; a bold dashed line stands in for it.
    EdgeFamily.ISOLATED: "dashed, penwidth=2",
}


def to_dot(D: PosetDP, highlight: UChain | None = None) -> str:
    """Render D_P as a DOT digraph; vertices of ``highlight`` are drawn boxed."""
    boxed = highlight.vertices if highlight is not None else frozenset()
    lines = [f'digraph "D_{D.partition.to_text()}" {{', "  node [shape=point];"]
    rows: dict[tuple[int, int], list[Vertex]] = {}
    for v in D.vertices:
        rows.setdefault((v.p, v.k), []).append(v)
        attrs = [f'xlabel="{v}"']
        if v in boxed:
            attrs.append("shape=box")
        lines.append(f'  "{v}" [{", ".join(attrs)}];')
    for row in rows.values():
        lines.append("  { rank=same; " + " ".join(f'"{v}";' for v in row) + " }")
    for e in D.edges:
        lines.append(f'  "{e.src}" -> "{e.dst}" [style={_DOT_STYLE[e.family]}, comment="{e.family.value}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(D: PosetDP, highlight: UChain | None = None) -> str:
    doc = {
        "schema": "commjordan.poset/1",
        "partition": list(D.partition),
        "vertices": [list(v) for v in D.vertices],
        "edges": [{"from": list(e.src), "to": list(e.dst), "family": e.family.value} for e in D.edges],
    }
    if highlight is not None:
        doc["highlight"] = {"p": highlight.p, "vertices": sorted(list(v) for v in highlight.vertices)}
    return json.dumps(doc, sort_keys=True)
