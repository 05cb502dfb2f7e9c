"""Instance transformations between the three reconfiguration problems.

* ``pad_clr`` pads a clique instance with isolated vertices until
  ``n - k - 1 == C(k, 2)``.
* ``reduce_clr_to_bbr`` maps a clique instance to a balanced-biclique
  instance on the bipartite complement ``H`` of the incidence graph.
* ``reduce_bbr_to_ccr`` maps a balanced-biclique instance on a bipartite
  graph to a two-component instance on its (co-bipartite) complement.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from math import comb

from .errors import NotBipartite, PreconditionViolated, SideViolation, Unpaddable
from .explorer import Instance
from .graph_core import (
    BipGraph,
    Config,
    Edge,
    Graph,
    VertexOrigin,
    build_H,
    complement,
    edge_vertex_ids,
    find_bipartition,
    to_mask,
)
from .properties import Biclique, Clique, MoveRule, MSet


@dataclass(frozen=True)
class ReductionCert:
    source: Instance
    produced: Instance
    origin: dict[int, VertexOrigin]
    removed_start: int
    removed_target: int

    @property
    def h(self) -> BipGraph:
        n = self.source.graph.n
        return BipGraph(
            self.produced.graph,
            frozenset(range(n)),
            frozenset(range(n, self.produced.graph.n)),
        )

    @property
    def edge_ids(self) -> dict[Edge, int]:
        return edge_vertex_ids(self.origin)


def explicit_biclique(h: BipGraph, vside: Iterable[int], eside: Iterable[int]) -> bool:
    """True iff every vertex of ``vside`` is adjacent in ``h`` to every vertex of ``eside``."""
    vside, eside = frozenset(vside), frozenset(eside)
    if not vside <= h.side_a:
        raise SideViolation(f"vertices {sorted(vside - h.side_a)} are not on side A")
    if not eside <= h.side_b:
        raise SideViolation(f"vertices {sorted(eside - h.side_b)} are not on side B")
    vmask = to_mask(vside)
    adj = h.graph.adj
    return all(adj[e] & vmask == vmask for e in eside)


def full_biclique(g: Graph, edge_ids: dict[Edge, int], clique: Iterable[int]) -> Config:
    """``(V \\ K) | E(K)`` in ``H``: the locked biclique of a clique ``K``."""
    clique = frozenset(clique)
    vside = frozenset(range(g.n)) - clique
    return vside | frozenset(edge_ids[e] for e in g.induced_edges(clique))


def unlock_vertex(g: Graph, clique: Iterable[int]) -> int:
    """The V-side vertex removed to unlock: lowest id outside the clique."""
    return min(frozenset(range(g.n)) - frozenset(clique))


def unlocked_biclique(g: Graph, edge_ids: dict[Edge, int], clique: Iterable[int], w: int | None = None) -> Config:
    clique = frozenset(clique)
    if w is None:
        w = unlock_vertex(g, clique)
    return full_biclique(g, edge_ids, clique) - {w}


def _require_clique_tj(inst: Instance) -> int:
    if not isinstance(inst.spec, Clique):
        raise PreconditionViolated(f"expected a clique instance, got property {inst.spec}")
    if inst.rule is not MoveRule.TJ:
        raise PreconditionViolated(f"expected rule tj, got {inst.rule}")
    return inst.spec.k


def pad_clr(inst: Instance) -> Instance:
    k = _require_clique_tj(inst)
    n = inst.graph.n
    slack = comb(k, 2) - (n - k - 1)
    if slack < 0:
        raise Unpaddable(f"n-k-1 > C(k,2) (n={n}, k={k}): cannot pad")
    graph = Graph(n + slack, inst.graph.edges)
    return Instance(graph, inst.spec, inst.rule, inst.start, inst.target)


def reduce_clr_to_bbr(inst: Instance) -> ReductionCert:
    k = _require_clique_tj(inst)
    g = inst.graph
    n = g.n
    if n - k - 1 != comb(k, 2):
        raise PreconditionViolated(f"n-k-1 != C(k,2) (n={n}, k={k})")
    # H is connected, hence moves are side preserving, only under these
    if n < 5 or find_bipartition(g) is not None:
        raise PreconditionViolated(f"source graph must be non-bipartite with n >= 5 (n={n}, k={k})")
    h, origin = build_H(g)
    ids = edge_vertex_ids(origin)
    w_start = unlock_vertex(g, inst.start)
    w_target = unlock_vertex(g, inst.target)
    p = n - k - 1
    produced = Instance(
        h.graph,
        Biclique(p, p),
        MoveRule.TJ,
        unlocked_biclique(g, ids, inst.start, w_start),
        unlocked_biclique(g, ids, inst.target, w_target),
    )
    return ReductionCert(inst, produced, origin, w_start, w_target)


def reduce_bbr_to_ccr(inst: Instance, rule: MoveRule = MoveRule.CS) -> Instance:
    spec = inst.spec
    if not isinstance(spec, Biclique) or spec.p != spec.q:
        raise PreconditionViolated(f"expected a balanced biclique instance, got property {spec}")
    if inst.rule is not MoveRule.TJ:
        raise PreconditionViolated(f"expected rule tj, got {inst.rule}")
    if rule is MoveRule.TJ:
        raise PreconditionViolated("target rule must be cj, cs or cs1")
    if find_bipartition(inst.graph) is None:
        raise NotBipartite("graph is not bipartite")
    return Instance(complement(inst.graph), MSet((spec.p, spec.p)), rule, inst.start, inst.target)
