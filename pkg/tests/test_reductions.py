from math import comb

import pytest

from bireconf.errors import (
    NotBipartite,
    PreconditionViolated,
    SideViolation,
    Unpaddable,
)
from bireconf.explorer import Instance, reachable
from bireconf.graph_core import build_graph, build_H, complement, find_bipartition
from bireconf.properties import Biclique, Clique, MoveRule, MSet, satisfies
from bireconf.reductions import (
    explicit_biclique,
    pad_clr,
    reduce_bbr_to_ccr,
    reduce_clr_to_bbr,
)
from bireconf.suites import (
    explicit_biclique_suite,
    locked_suite,
    pad_suite,
    random_clr_instances,
)


def clr(g, k, start, target):
    return Instance(g, Clique(k), MoveRule.TJ, frozenset(start), frozenset(target))


def test_explicit_biclique_in_H_of_triangle(triangle):
    h, _ = build_H(triangle)  # edge-vertices: 3 = e01, 4 = e02, 5 = e12
    assert explicit_biclique(h, {0}, {5})
    assert explicit_biclique(h, set(), {3, 4, 5})
    assert not explicit_biclique(h, {0}, {3})
    with pytest.raises(SideViolation):
        explicit_biclique(h, {3}, {5})
    with pytest.raises(SideViolation):
        explicit_biclique(h, {0}, {1})


@pytest.mark.parametrize("n, added", [(5, 2), (7, 0), (4, 3)])
def test_pad_clr_sizes(n, added):
    g = build_graph(n, [(0, 1), (0, 2), (1, 2)])
    padded = pad_clr(clr(g, 3, {0, 1, 2}, {0, 1, 2}))
    assert padded.graph.n == n + added == comb(3, 2) + 3 + 1
    assert padded.graph.edges == g.edges
    assert padded.start == {0, 1, 2} and padded.target == {0, 1, 2}


def test_pad_clr_rejects():
    g = build_graph(10, [(0, 1), (0, 2), (1, 2)])
    with pytest.raises(Unpaddable):
        pad_clr(clr(g, 3, {0, 1, 2}, {0, 1, 2}))
    with pytest.raises(PreconditionViolated):
        pad_clr(Instance(g, Clique(3), MoveRule.CJ, {0, 1, 2}, {0, 1, 2}))


def test_reduce_clr_to_bbr_example(k4_plus3):
    cert = reduce_clr_to_bbr(clr(k4_plus3, 3, {0, 1, 2}, {1, 2, 3}))
    # edge-vertices in lexicographic order: e01=7 e02=8 e03=9 e12=10 e13=11 e23=12
    assert cert.produced.spec == Biclique(3, 3)
    assert cert.removed_start == 3 and cert.removed_target == 0
    assert cert.produced.start == {4, 5, 6, 7, 8, 10}
    assert cert.produced.target == {4, 5, 6, 10, 11, 12}
    assert satisfies(cert.produced.graph, Biclique(3, 3), cert.produced.start)
    assert cert.produced.graph.n == 13


def test_reduce_same_clique_gives_same_biclique(k4_plus3):
    cert = reduce_clr_to_bbr(clr(k4_plus3, 3, {1, 2, 3}, {1, 2, 3}))
    assert cert.produced.start == cert.produced.target


def test_reduce_clr_preconditions():
    g = build_graph(5, [(0, 1), (0, 2), (1, 2)])
    with pytest.raises(PreconditionViolated, match=r"n-k-1 != C\(k,2\)"):
        reduce_clr_to_bbr(clr(g, 3, {0, 1, 2}, {0, 1, 2}))
    # k = 2 satisfies the size equation at n = 4 but H need not be connected
    g = build_graph(4, [(0, 1), (1, 2)])
    with pytest.raises(PreconditionViolated):
        reduce_clr_to_bbr(clr(g, 2, {0, 1}, {1, 2}))


def test_reduce_bbr_to_ccr_k22(k22):
    inst = Instance(k22.graph, Biclique(2, 2), MoveRule.TJ, range(4), range(4))
    for rule in (MoveRule.CJ, MoveRule.CS):
        out = reduce_bbr_to_ccr(inst, rule)
        assert out.rule is rule
        assert out.spec == MSet((2, 2))
        assert out.graph.edges == {(0, 1), (2, 3)}
        assert out.start == inst.start and out.target == inst.target
        assert find_bipartition(complement(out.graph)) is not None


def test_reduce_bbr_to_ccr_rejects(triangle, k22):
    with pytest.raises(NotBipartite):
        g = build_graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4)])
        reduce_bbr_to_ccr(Instance(g, Biclique(1, 1), MoveRule.TJ, {0, 3}, {0, 4}))
    with pytest.raises(PreconditionViolated):
        star = build_graph(3, [(0, 1), (0, 2)])
        reduce_bbr_to_ccr(Instance(star, Biclique(1, 2), MoveRule.TJ, {0, 1, 2}, {0, 1, 2}))
    inst = Instance(k22.graph, Biclique(2, 2), MoveRule.TJ, range(4), range(4))
    with pytest.raises(PreconditionViolated):
        reduce_bbr_to_ccr(inst, MoveRule.TJ)


@pytest.mark.parametrize(
    "edges, s, t, want",
    [
        # K_{2,3}: swap one vertex of the 3-side
        ([(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)], {0, 1, 2, 3}, {0, 1, 2, 4}, True),
        # two disjoint K_{2,2}: each is the only (2,2)-biclique of its component
        ([(0, 4), (0, 5), (1, 4), (1, 5), (2, 6), (2, 7), (3, 6), (3, 7)], {0, 1, 4, 5}, {2, 3, 6, 7}, False),
    ],
)
def test_reduce_bbr_to_ccr_preserves_answers(edges, s, t, want):
    g = build_graph(max(max(e) for e in edges) + 1, edges)
    src = Instance(g, Biclique(2, 2), MoveRule.TJ, s, t)
    assert reachable(src)[0] is want
    for rule in (MoveRule.CJ, MoveRule.CS, MoveRule.CS1):
        assert reachable(reduce_bbr_to_ccr(src, rule))[0] is want


def test_explicit_biclique_suite_small():
    res = explicit_biclique_suite(exhaustive_n=(4,), sampled_n=(5,), sample_graphs=20, sample_f=16)
    assert res.ok and res.checked > 10_000


def test_pad_preserves_answers_small():
    res = pad_suite(max_n=5)
    assert res.ok and res.checked > 0


def test_reduction_preserves_answers_sample():
    for inst in random_clr_instances(15, seed=7):
        cert = reduce_clr_to_bbr(inst)
        assert reachable(inst)[0] == reachable(cert.produced)[0]


def test_locked_and_unlocked(k4_plus3):
    graphs = [k4_plus3] + [i.graph for i in random_clr_instances(10, seed=3)]
    res = locked_suite(graphs)
    assert res.ok, res.counterexamples
    assert res.counts["unlock_checks"] > 0
