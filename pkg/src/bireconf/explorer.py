"""Exhaustive reconfiguration-graph oracle.

The reconfiguration graph has one node per configuration satisfying the
property and one edge per legal move. Edges are generated on demand; BFS
gives the reachability decision together with a shortest witness.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import CapExceeded, PropertyViolated
from .graph_core import (
    Config,
    Graph,
    config_key,
    from_mask,
    is_connected_mask,
    iter_bits,
    to_mask,
)
from .properties import (
    Biclique,
    Clique,
    MoveRule,
    PropertySpec,
    move_masks,
    satisfies_mask,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 1 << 22

Sequence = list[Config]


@dataclass(frozen=True)
class Instance:
    graph: Graph
    spec: PropertySpec
    rule: MoveRule
    start: Config
    target: Config

    def __post_init__(self):
        object.__setattr__(self, "start", self.graph.check_config(self.start))
        object.__setattr__(self, "target", self.graph.check_config(self.target))
        for label, s in (("start", self.start), ("target", self.target)):
            if not satisfies_mask(self.graph, self.spec, to_mask(s)):
                raise PropertyViolated(f"{label} {list(config_key(s))} is not a {self.spec}")


def estimate_states(g: Graph, spec: PropertySpec) -> int:
    """Size of the candidate space the oracle may have to touch."""
    return comb(g.n, spec.size)


def _check_cap(g: Graph, spec: PropertySpec, cap: int) -> None:
    estimate = estimate_states(g, spec)
    if estimate > cap:
        raise CapExceeded(estimate, cap)


def _cliques(g: Graph, k: int) -> list[int]:
    adj = g.adj
    found = []

    def extend(mask: int, size: int, cand: int) -> None:
        if size == k:
            found.append(mask)
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            extend(mask | low, size + 1, cand & adj[v])

    extend(0, 0, (1 << g.n) - 1)
    return found


def _independent_sets(g: Graph, k: int, allowed: int) -> list[int]:
    adj = g.adj
    found = []

    def extend(mask: int, size: int, cand: int) -> None:
        if size == k:
            found.append(mask)
            return
        if cand.bit_count() < k - size:
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            extend(mask | low, size + 1, cand & ~adj[v])

    extend(0, 0, allowed)
    return found


def _bicliques(g: Graph, spec: Biclique) -> set[int]:
    big, small = spec.shape
    adj = g.adj
    full = (1 << g.n) - 1
    found = set()
    for x in _independent_sets(g, big, full):
        common = full
        for v in iter_bits(x):
            common &= adj[v]
        if common.bit_count() < small:
            continue
        for y in _independent_sets(g, small, common):
            found.add(x | y)
    return found


def _msets(g: Graph, sizes: tuple[int, ...]) -> set[int]:
    adj = g.adj
    connected = {
        s: [to_mask(c) for c in combinations(range(g.n), s) if is_connected_mask(g, to_mask(c))]
        for s in set(sizes)
    }
    order = sorted(sizes, reverse=True)
    found = set()

    def closed(mask: int) -> int:
        out = mask
        for v in iter_bits(mask):
            out |= adj[v]
        return out

    def place(i: int, used: int, blocked: int, last: int) -> None:
        if i == len(order):
            found.add(used)
            return
        pool = connected[order[i]]
        # equal sizes are placed in increasing pool order to skip permutations
        begin = last + 1 if i > 0 and order[i] == order[i - 1] else 0
        for j in range(begin, len(pool)):
            c = pool[j]
            if c & blocked:
                continue
            place(i + 1, used | c, blocked | closed(c), j)

    place(0, 0, 0, -1)
    return found


def enumerate_configs(g: Graph, spec: PropertySpec, cap: int = DEFAULT_CAP) -> list[Config]:
    """Every configuration of ``g`` satisfying ``spec``, sorted."""
    return [from_mask(m) for m in _config_masks(g, spec, cap)]


def _config_masks(g: Graph, spec: PropertySpec, cap: int) -> list[int]:
    _check_cap(g, spec, cap)
    if isinstance(spec, Clique):
        masks = _cliques(g, spec.k)
    elif isinstance(spec, Biclique):
        masks = _bicliques(g, spec)
    else:
        masks = _msets(g, spec.sizes)
    return sorted(masks, key=lambda m: config_key(from_mask(m)))


def _bfs(g: Graph, spec: PropertySpec, rule: MoveRule, start: int, cap: int, goal: int | None = None):
    parent = {start: None}
    dist = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if s == goal:
            break
        nbrs = sorted(move_masks(g, rule, spec, s), key=lambda m: config_key(from_mask(m)))
        for t in nbrs:
            if t not in parent:
                parent[t] = s
                dist[t] = dist[s] + 1
                if len(parent) > cap:
                    raise CapExceeded(len(parent), cap, "visited states")
                queue.append(t)
    return parent, dist


def reachable(inst: Instance, cap: int = DEFAULT_CAP) -> tuple[bool, Sequence | None]:
    """Decide reachability; on success also return a shortest witness sequence."""
    g = inst.graph
    _check_cap(g, inst.spec, cap)
    start, goal = to_mask(inst.start), to_mask(inst.target)
    parent, _ = _bfs(g, inst.spec, inst.rule, start, cap, goal)
    if goal not in parent:
        log.debug("target unreachable after visiting %d states", len(parent))
        return False, None
    path = []
    cur = goal
    while cur is not None:
        path.append(from_mask(cur))
        cur = parent[cur]
    path.reverse()
    return True, path


def distances(inst: Instance, cap: int = DEFAULT_CAP) -> dict[tuple[int, ...], int]:
    """BFS layer of every configuration reachable from ``inst.start``."""
    _check_cap(inst.graph, inst.spec, cap)
    _, dist = _bfs(inst.graph, inst.spec, inst.rule, to_mask(inst.start), cap)
    return {config_key(from_mask(m)): d for m, d in dist.items()}


def reachability_classes(g: Graph, spec: PropertySpec, rule: MoveRule, cap: int = DEFAULT_CAP) -> list[list[Config]]:
    """Connected components of the reconfiguration graph, each sorted, ordered by first member."""
    masks = _config_masks(g, spec, cap)
    label: dict[int, int] = {}
    classes = []
    for m in masks:
        if m in label:
            continue
        idx = len(classes)
        label[m] = idx
        members = [m]
        queue = deque([m])
        while queue:
            s = queue.popleft()
            for t in move_masks(g, rule, spec, s):
                if t not in label:
                    label[t] = idx
                    members.append(t)
                    queue.append(t)
        classes.append(sorted((from_mask(x) for x in members), key=config_key))
    return classes
