"""Exhaustive desk-scale checks of the structural facts behind the reductions.

Every suite returns a :class:`SuiteResult` with the number of cases checked
and the counterexamples found (capped at a handful). The ``selftest``
subcommand and the acceptance tests both drive these functions.
"""

from __future__ import annotations

import random
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import comb

from .errors import CapExceeded
from .explorer import (
    DEFAULT_CAP,
    Instance,
    _config_masks,
    reachability_classes,
    reachable,
)
from .graph_core import (
    BipGraph,
    Graph,
    build_graph,
    build_H,
    complement,
    config_key,
    edge_vertex_ids,
    from_mask,
)
from .properties import (
    Biclique,
    Clique,
    MoveRule,
    MSet,
    _biclique_shape_mask,
    _multiset_mask,
    move_ok_mask,
    side_preserving_moves,
)
from .reductions import (
    explicit_biclique,
    full_biclique,
    pad_clr,
    reduce_clr_to_bbr,
    unlock_vertex,
)
from .translate import lift_clique_sequence, project_biclique_sequence, verify_sequence

MAX_KEPT = 5


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    failures: int = 0
    skipped: str | None = None
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def fail(self, example) -> None:
        self.failures += 1
        if len(self.counterexamples) < MAX_KEPT:
            self.counterexamples.append(example)

    def summary(self) -> str:
        if self.skipped:
            return f"{self.name}: SKIPPED ({self.skipped})"
        status = "PASS" if self.ok else f"FAIL ({self.failures} counterexamples)"
        extra = "".join(f", {k}={v}" for k, v in self.counts.items())
        return f"{self.name}: {status}, {self.checked} checked{extra}"


# -- graph families ----------------------------------------------------------

def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices, by edge subsets."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if bits >> i & 1))


def bipartite_graph(a: int, b: int, bits: int) -> BipGraph:
    pairs = list(product(range(a), range(a, a + b)))
    edges = frozenset(p for i, p in enumerate(pairs) if bits >> i & 1)
    return BipGraph(Graph(a + b, edges), frozenset(range(a)), frozenset(range(a, a + b)))


def bipartite_family(
    max_side: int = 4, max_product: int = 12, samples_above: int = 200, seed: int = 0
) -> Iterator[BipGraph]:
    """Bipartite graphs with sides ``A = 0..a-1`` and ``B = a..a+b-1``.

    All edge subsets of ``A x B`` when ``a * b <= max_product``; a seeded
    sample of ``samples_above`` subsets otherwise.
    """
    rng = random.Random(seed)
    for a in range(1, max_side + 1):
        for b in range(1, max_side + 1):
            cells = a * b
            if cells <= max_product:
                for bits in range(1 << cells):
                    yield bipartite_graph(a, b, bits)
            else:
                for _ in range(samples_above):
                    yield bipartite_graph(a, b, rng.getrandbits(cells))


def _bip_canonical(h: BipGraph) -> tuple:
    a = sorted(h.side_a)
    b = sorted(h.side_b)
    adj = h.graph.adj
    rows = [[adj[x] >> y & 1 for y in b] for x in a]
    best = None
    for perm in permutations(range(len(b))):
        key = tuple(sorted(tuple(r[j] for j in perm) for r in rows))
        if best is None or key < best:
            best = key
    return (len(a), len(b), best)


def bipartite_classes(family) -> list[BipGraph]:
    """One representative per isomorphism class (side-respecting) of ``family``."""
    seen = set()
    out = []
    for h in family:
        key = _bip_canonical(h)
        if key not in seen:
            seen.add(key)
            out.append(h)
    return out


# -- suites ------------------------------------------------------------------

def explicit_biclique_suite(exhaustive_n=(4, 5), sampled_n=(6,), sample_graphs: int = 300, sample_f: int = 64, seed: int = 0) -> SuiteResult:
    """``(V \\ U) | F`` is a biclique of H iff ``F`` is a subset of ``E(U)``.

    For ``exhaustive_n`` every graph, every U and every F is checked. For
    ``sampled_n`` a seeded sample of graphs is taken, with every U and up to
    ``sample_f`` edge subsets F per graph (always including ``E(U)``).
    """
    res = SuiteResult("explicit biclique <-> F in E(U)")
    rng = random.Random(seed)
    graphs_per_n = Counter()

    def check(g: Graph, subsets_of_e) -> None:
        h, origin = build_H(g)
        ids = edge_vertex_ids(origin)
        vertices = frozenset(range(g.n))
        for umask in range(1 << g.n):
            u = from_mask(umask)
            inside = g.induced_edges(u)
            for f in subsets_of_e(g, inside):
                got = explicit_biclique(h, vertices - u, (ids[e] for e in f))
                want = f <= inside
                res.checked += 1
                if got != want:
                    res.fail((g, sorted(u), sorted(f)))

    def every_f(g: Graph, inside):
        edges = g.sorted_edges
        for bits in range(1 << len(edges)):
            yield frozenset(e for i, e in enumerate(edges) if bits >> i & 1)

    def some_f(g: Graph, inside):
        edges = g.sorted_edges
        if 1 << len(edges) <= sample_f:
            yield from every_f(g, inside)
            return
        yield inside
        for _ in range(sample_f - 1):
            bits = rng.getrandbits(len(edges))
            yield frozenset(e for i, e in enumerate(edges) if bits >> i & 1)

    for n in exhaustive_n:
        for g in all_graphs(n):
            graphs_per_n[n] += 1
            check(g, every_f)
    pairs_by_n = {n: list(combinations(range(n), 2)) for n in sampled_n}
    for n in sampled_n:
        pairs = pairs_by_n[n]
        for _ in range(sample_graphs):
            bits = rng.getrandbits(len(pairs))
            g = Graph(n, frozenset(p for i, p in enumerate(pairs) if bits >> i & 1))
            graphs_per_n[n] += 1
            check(g, some_f)
    res.counts = {f"graphs(n={n})": c for n, c in sorted(graphs_per_n.items())}
    return res


def biclique_mset_suite(family) -> SuiteResult:
    """(p,q)-bicliques of a bipartite G are exactly the {{p,q}}-sets of its complement."""
    res = SuiteResult("biclique <-> {{p,q}}-set of complement")
    graphs = 0
    for h in family:
        graphs += 1
        g = h.graph
        gbar = complement(g)
        for mask in range(1, 1 << g.n):
            shape = _biclique_shape_mask(g, mask)
            sizes = _multiset_mask(gbar, mask)
            as_pair = (sizes[1], sizes[0]) if len(sizes) == 2 else None
            res.checked += 1
            if shape != as_pair:
                res.fail((g, sorted(from_mask(mask)), shape, sizes))
    res.counts = {"graphs": graphs}
    return res


def tj_cs1_suite(family, cap: int = DEFAULT_CAP) -> SuiteResult:
    """TJ-moves between (p,p)-bicliques of G are exactly CS1-moves in the complement."""
    res = SuiteResult("TJ <-> CS1 moves")
    graphs = 0
    for h in family:
        graphs += 1
        g = h.graph
        gbar = complement(g)
        for p in range(1, min(len(h.side_a), len(h.side_b)) + 1):
            configs = _config_masks(g, Biclique(p, p), cap)
            for s, t in product(configs, repeat=2):
                tj = move_ok_mask(g, MoveRule.TJ, s, t)
                cs1 = move_ok_mask(gbar, MoveRule.CS1, s, t)
                res.checked += 1
                if tj != cs1:
                    res.fail((g, p, sorted(from_mask(s)), sorted(from_mask(t)), tj, cs1))
    res.counts = {"graphs": graphs}
    return res


def cj_is_cs_suite(family, cap: int = DEFAULT_CAP) -> SuiteResult:
    """On co-bipartite graphs every CJ-move between {{p,p}}-sets is a CS-move."""
    res = SuiteResult("CJ=>CS on co-bipartite")
    cj_moves = 0
    for h in family:
        gbar = complement(h.graph)
        for p in range(1, min(len(h.side_a), len(h.side_b)) + 1):
            configs = _config_masks(gbar, MSet((p, p)), cap)
            for s, t in product(configs, repeat=2):
                if not move_ok_mask(gbar, MoveRule.CJ, s, t):
                    continue
                cj_moves += 1
                res.checked += 1
                if not move_ok_mask(gbar, MoveRule.CS, s, t):
                    res.fail((gbar, p, sorted(from_mask(s)), sorted(from_mask(t))))
    res.counts = {"cj_moves": cj_moves}
    return res


def _partition(classes) -> set[frozenset]:
    return {frozenset(config_key(s) for s in cls) for cls in classes}


def two_component_specs(n: int) -> list[MSet]:
    specs = [MSet((a,)) for a in range(1, n + 1)]
    specs += [MSet((a, b)) for a in range(1, n + 1) for b in range(a, n + 1) if a + b <= n]
    return specs


def cs_cs1_suite(graphs, cap: int = DEFAULT_CAP) -> SuiteResult:
    """CS-reachability equals CS1-reachability for every M with at most two parts.

    Reachability is compared as the partition of all M-sets into
    reconfiguration-graph components, which covers every (start, target) pair.
    """
    res = SuiteResult("CS<=>CS1 reachability")
    instances = 0
    n_graphs = 0
    for g in graphs:
        n_graphs += 1
        for spec in two_component_specs(g.n):
            cs = reachability_classes(g, spec, MoveRule.CS, cap)
            cs1 = reachability_classes(g, spec, MoveRule.CS1, cap)
            size = sum(len(c) for c in cs)
            instances += size * size
            res.checked += 1
            if _partition(cs) != _partition(cs1):
                res.fail((g, spec))
    res.counts = {"graphs": n_graphs, "instances": instances}
    return res


def bbr_ccr_chain_suite(family, cap: int = DEFAULT_CAP) -> SuiteResult:
    """TJ on G, CS1/CS/CJ on the complement: identical reachability for (p,p)-bicliques."""
    res = SuiteResult("TJ<=>CS1<=>CS<=>CJ chain")
    instances = 0
    for h in family:
        g = h.graph
        gbar = complement(g)
        for p in range(1, min(len(h.side_a), len(h.side_b)) + 1):
            tj = _partition(reachability_classes(g, Biclique(p, p), MoveRule.TJ, cap))
            size = sum(len(c) for c in tj)
            instances += size * size
            res.checked += 1
            for rule in (MoveRule.CS1, MoveRule.CS, MoveRule.CJ):
                if _partition(reachability_classes(gbar, MSet((p, p)), rule, cap)) != tj:
                    res.fail((g, p, rule))
    res.counts = {"instances": instances}
    return res


def pad_suite(max_n: int = 6, ks=(2, 3), cap: int = DEFAULT_CAP) -> SuiteResult:
    """Padding with isolated vertices preserves every clique reachability answer."""
    res = SuiteResult("pad_clr preservation")
    instances = 0
    for k in ks:
        for n in range(k, max_n + 1):
            if n - k - 1 > comb(k, 2):
                continue
            for g in all_graphs(n):
                cliques = _config_masks(g, Clique(k), cap)
                if not cliques:
                    continue
                first = from_mask(cliques[0])
                padded = pad_clr(Instance(g, Clique(k), MoveRule.TJ, first, first)).graph
                before = _partition(reachability_classes(g, Clique(k), MoveRule.TJ, cap))
                after = _partition(reachability_classes(padded, Clique(k), MoveRule.TJ, cap))
                instances += len(cliques) ** 2
                res.checked += 1
                if before != after:
                    res.fail((g, k))
    res.counts = {"instances": instances}
    return res


# -- clique/biclique reduction ---------------------------------------------------

def random_clr_instances(count: int, seed: int = 0, n: int = 7, k: int = 3) -> list[Instance]:
    """Seeded random clique instances with ``n - k - 1 == C(k, 2)``.

    Edge densities are spread out so that both reachable and unreachable
    instances occur; every graph has at least two k-cliques and start != target.
    """
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    out = []
    while len(out) < count:
        density = rng.uniform(0.3, 0.6)
        g = build_graph(n, [p for p in pairs if rng.random() < density])
        cliques = [from_mask(m) for m in _config_masks(g, Clique(k), DEFAULT_CAP)]
        if len(cliques) < 2:
            continue
        start, target = rng.sample(cliques, 2)
        out.append(Instance(g, Clique(k), MoveRule.TJ, start, target))
    return out


@dataclass
class ReductionReport:
    instances: int = 0
    yes: int = 0
    mismatches: list = field(default_factory=list)
    lift_failures: list = field(default_factory=list)
    project_failures: list = field(default_factory=list)
    max_lift_ratio: float = 0.0


def reduction_suite(instances, cap: int = DEFAULT_CAP) -> ReductionReport:
    """Oracle answers agree across ``reduce_clr_to_bbr``; witnesses translate both ways."""
    rep = ReductionReport()
    for inst in instances:
        rep.instances += 1
        cert = reduce_clr_to_bbr(inst)
        src_ok, src_wit = reachable(inst, cap)
        dst_ok, dst_wit = reachable(cert.produced, cap)
        if src_ok != dst_ok:
            rep.mismatches.append((inst, src_ok, dst_ok))
            continue
        if not src_ok:
            continue
        rep.yes += 1
        lifted, _ = lift_clique_sequence(cert, src_wit)
        moves = len(src_wit) - 1
        k = inst.spec.k
        bound = 1 + moves * (k + 1)
        if verify_sequence(cert.produced, lifted) is not None or len(lifted) > bound:
            rep.lift_failures.append((inst, src_wit, lifted))
        rep.max_lift_ratio = max(rep.max_lift_ratio, len(lifted) / bound)
        projected = project_biclique_sequence(cert, dst_wit)
        if verify_sequence(inst, projected) is not None:
            rep.project_failures.append((inst, dst_wit, projected))
    return rep


def locked_suite(graphs, k: int = 3, cap: int = DEFAULT_CAP) -> SuiteResult:
    """Full bicliques ``(V \\ U) | E(U)`` are locked; dropping one V-side vertex unlocks them.

    Locked means no TJ-move to a biclique with the same side sizes. Unlocked
    is required whenever U has a TJ-neighbouring k-clique.
    """
    res = SuiteResult("locked/unlocked bicliques")
    unlocked_checked = 0
    for g in graphs:
        h, origin = build_H(g)
        ids = edge_vertex_ids(origin)
        p = comb(k, 2)
        cliques = _config_masks(g, Clique(k), cap)
        for umask in cliques:
            u = from_mask(umask)
            s_hat = full_biclique(g, ids, u)
            res.checked += 1
            locked = side_preserving_moves(h, MoveRule.TJ, Biclique(g.n - k, p), s_hat)
            if locked:
                res.fail(("locked", g, sorted(u), locked))
            has_neighbour = any(move_ok_mask(g, MoveRule.TJ, umask, other) for other in cliques)
            if has_neighbour:
                unlocked_checked += 1
                s = s_hat - {unlock_vertex(g, u)}
                if not side_preserving_moves(h, MoveRule.TJ, Biclique(g.n - k - 1, p), s):
                    res.fail(("unlocked", g, sorted(u)))
    res.counts = {"unlock_checks": unlocked_checked}
    return res


def selftest_suites(cap: int = DEFAULT_CAP, full: bool = False):
    """Yield (name, thunk) pairs for the selftest subcommand."""
    max_product = 12 if full else 9
    family = list(bipartite_family(max_product=max_product, samples_above=200 if full else 20))
    classes = bipartite_classes(family)

    yield "explicit_biclique", lambda: explicit_biclique_suite(sampled_n=(6,) if full else (), sample_graphs=300)
    yield "biclique_mset", lambda: biclique_mset_suite(family)
    yield "tj_cs1", lambda: tj_cs1_suite(family, cap)
    yield "cj_cs", lambda: cj_is_cs_suite(family, cap)
    yield "cs_cs1", lambda: cs_cs1_suite([complement(h.graph) for h in classes], cap)
    yield "chain", lambda: bbr_ccr_chain_suite(classes, cap)
    yield "pad", lambda: pad_suite(max_n=6 if full else 5, cap=cap)


def run_suite(thunk) -> SuiteResult:
    try:
        return thunk()
    except CapExceeded as exc:
        return SuiteResult("?", skipped=f"cap exceeded: {exc}")

