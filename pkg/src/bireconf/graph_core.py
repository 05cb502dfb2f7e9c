"""Undirected simple graphs, bipartite graphs and the structural constructions.

Vertices are the integers ``0..n-1``. Vertex sets (configurations) are
``frozenset[int]``; internally most routines work on integer bitmasks, which
keeps the exhaustive suites fast enough to run at desk scale.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path

from .errors import OutOfRange, ParseError, SelfLoop

Config = frozenset[int]
Edge = tuple[int, int]


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> Config:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def config_key(s: Iterable[int]) -> tuple[int, ...]:
    """Canonical encoding of a vertex set: its sorted id tuple."""
    return tuple(sorted(s))


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise OutOfRange(f"vertex count must be nonnegative, got {self.n}")
        for u, v in self.edges:
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise OutOfRange(f"edge ({u}, {v}) is not canonical or out of range for n={self.n}")

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of every vertex."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def _cc_cache(self) -> dict[int, tuple[int, ...]]:
        return {}

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> Config:
        return from_mask(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def induced_edges(self, s: Iterable[int]) -> frozenset[Edge]:
        """E(S): the edges of G with both endpoints in ``s``."""
        mask = to_mask(s)
        return frozenset((u, v) for u, v in self.edges if mask >> u & 1 and mask >> v & 1)

    def check_config(self, s: Iterable[int]) -> Config:
        s = frozenset(s)
        for v in s:
            if not (0 <= v < self.n):
                raise OutOfRange(f"vertex {v} out of range for n={self.n}")
        return s

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.sorted_edges)})"


@dataclass(frozen=True)
class BipGraph:
    graph: Graph
    side_a: Config
    side_b: Config

    def __post_init__(self):
        if self.side_a & self.side_b:
            raise ValueError("sides overlap")
        if self.side_a | self.side_b != frozenset(range(self.graph.n)):
            raise ValueError("sides do not cover the vertex set")
        for u, v in self.graph.edges:
            if (u in self.side_a) == (v in self.side_a):
                raise ValueError(f"edge ({u}, {v}) lies inside one side")


@dataclass(frozen=True)
class OriginalVertex:
    id: int

    def __str__(self) -> str:
        return f"v:{self.id}"


@dataclass(frozen=True)
class EdgeVertex:
    u: int
    v: int

    @property
    def pair(self) -> Edge:
        return (self.u, self.v)

    def __str__(self) -> str:
        return f"e:{self.u},{self.v}"


VertexOrigin = OriginalVertex | EdgeVertex


def build_graph(n: int, edge_list: Iterable[Iterable[int]]) -> Graph:
    if n < 0:
        raise OutOfRange(f"vertex count must be nonnegative, got {n}")
    edges = set()
    for pair in edge_list:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        edges.add((u, v) if u < v else (v, u))
    return Graph(n, frozenset(edges))


def complement(g: Graph) -> Graph:
    return Graph(g.n, frozenset(e for e in combinations(range(g.n), 2) if e not in g.edges))


def bipartite_complement(h: BipGraph) -> BipGraph:
    edges = set()
    for a in h.side_a:
        for b in h.side_b:
            e = (a, b) if a < b else (b, a)
            if e not in h.graph.edges:
                edges.add(e)
    return BipGraph(Graph(h.graph.n, frozenset(edges)), h.side_a, h.side_b)


def build_H(g: Graph) -> tuple[BipGraph, dict[int, VertexOrigin]]:
    """Bipartite complement of the incidence graph of ``g``.

    Side A reuses the ids of ``g``; the edge of ``g`` at position ``i`` in
    lexicographic order becomes vertex ``n + i`` of side B. A vertex and an
    edge-vertex are adjacent exactly when the vertex is not an endpoint.
    """
    n = g.n
    origin: dict[int, VertexOrigin] = {v: OriginalVertex(v) for v in range(n)}
    edges = []
    for i, (x, y) in enumerate(g.sorted_edges):
        hid = n + i
        origin[hid] = EdgeVertex(x, y)
        edges.extend((v, hid) for v in range(n) if v != x and v != y)
    total = n + g.m
    h = BipGraph(
        Graph(total, frozenset(edges)),
        frozenset(range(n)),
        frozenset(range(n, total)),
    )
    return h, origin


def edge_vertex_ids(origin: dict[int, VertexOrigin]) -> dict[Edge, int]:
    """Inverse of the E-side part of an origin map."""
    return {o.pair: hid for hid, o in origin.items() if isinstance(o, EdgeVertex)}


_CC_CACHE_LIMIT = 1 << 20


def components_of_mask(g: Graph, mask: int) -> tuple[int, ...]:
    """Connected components of ``g[mask]`` as bitmasks, ordered by lowest vertex."""
    cache = g._cc_cache
    hit = cache.get(mask)
    if hit is not None:
        return hit
    if len(cache) >= _CC_CACHE_LIMIT:
        cache.clear()
    adj = g.adj
    comps = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = adj[low.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    comps = tuple(comps)
    cache[mask] = comps
    return comps


def is_connected_mask(g: Graph, mask: int) -> bool:
    if not mask:
        return True
    comps = components_of_mask(g, mask)
    return len(comps) == 1


def connected_components(g: Graph, s: Iterable[int]) -> frozenset[Config]:
    """cc_G(S): the vertex sets of the connected components of ``g[s]``."""
    s = g.check_config(s)
    return frozenset(from_mask(c) for c in components_of_mask(g, to_mask(s)))


def find_bipartition(g: Graph) -> tuple[Config, Config] | None:
    """2-colouring of ``g``; the lowest id of every component goes to side A."""
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in iter_bits(g.adj[u]):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    a = frozenset(v for v in range(g.n) if color[v] == 0)
    b = frozenset(v for v in range(g.n) if color[v] == 1)
    return a, b


def as_bipartite(g: Graph) -> BipGraph | None:
    parts = find_bipartition(g)
    if parts is None:
        return None
    return BipGraph(g, *parts)


# -- text format -----------------------------------------------------------

def parse_graph(text: str, source: str | None = None) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment line."""
    lines = [
        (i, line.strip())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise ParseError("missing header line `n m`", source=source)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"malformed graph header {header!r}, expected `n m`", lineno, source)
    n, m = int(parts[0]), int(parts[1])
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header declares {m} edges but {len(body)} edge lines follow", lineno, source)
    pairs = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"malformed edge line {line!r}, expected `u v`", lineno, source)
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise ParseError(f"edge ({u}, {v}) out of range for n={n}", lineno, source)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno, source)
        pairs.append((u, v))
    return build_graph(n, pairs)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    path = Path(path)
    return parse_graph(path.read_text(), source=str(path))
