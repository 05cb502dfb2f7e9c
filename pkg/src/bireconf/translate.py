"""Sequence verification and translation across the clique/biclique reduction."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidSourceSequence
from .explorer import Instance, Sequence
from .graph_core import Config, config_key, to_mask
from .properties import move_ok_mask, satisfies_mask
from .reductions import ReductionCert, unlock_vertex, unlocked_biclique


@dataclass(frozen=True)
class Violation:
    index: int
    reason: str

    def __str__(self) -> str:
        return f"index {self.index}: {self.reason}"


def verify_sequence(inst: Instance, seq: Sequence) -> Violation | None:
    """Return ``None`` if ``seq`` is a valid sequence for ``inst``, else the first violation."""
    if not seq:
        return Violation(0, "empty sequence")
    g = inst.graph
    for i, s in enumerate(seq):
        if any(not (0 <= v < g.n) for v in s):
            return Violation(i, f"{list(config_key(s))} has vertices outside 0..{g.n - 1}")
        if i == 0 and frozenset(s) != inst.start:
            return Violation(0, f"sequence starts at {list(config_key(s))}, expected {list(config_key(inst.start))}")
        mask = to_mask(s)
        if not satisfies_mask(g, inst.spec, mask):
            return Violation(i, f"{list(config_key(s))} is not a {inst.spec}")
        if i > 0 and not move_ok_mask(g, inst.rule, to_mask(seq[i - 1]), mask):
            return Violation(i, f"step {list(config_key(seq[i - 1]))} -> {list(config_key(s))} is not a {inst.rule} move")
    if frozenset(seq[-1]) != inst.target:
        return Violation(len(seq) - 1, f"sequence ends at {list(config_key(seq[-1]))}, expected {list(config_key(inst.target))}")
    return None


@dataclass
class LiftStep:
    """How one clique move ``K_i -> K_{i+1}`` was simulated in H."""

    index: int
    u: int
    v: int
    w_from: int
    w_to: int
    after_first: Config
    micro_moves: list[Config] = field(default_factory=list)


@dataclass
class TranslationTrace:
    steps: list[LiftStep] = field(default_factory=list)

    def format(self) -> str:
        return "".join(
            f"{s.index} {s.u} {s.v} {s.w_from} {s.w_to} micro_moves={len(s.micro_moves)}\n" for s in self.steps
        )


def lift_clique_sequence(cert: ReductionCert, clique_seq: Sequence) -> tuple[Sequence, TranslationTrace]:
    """Turn a TJ-sequence of k-cliques into a TJ-sequence of (p,p)-bicliques of H."""
    bad = verify_sequence(cert.source, clique_seq)
    if bad is not None:
        raise InvalidSourceSequence(bad.reason, bad.index)
    g = cert.source.graph
    ids = cert.edge_ids
    last = len(clique_seq) - 1
    cliques = [frozenset(k) for k in clique_seq]

    def w(i: int) -> int:
        if i == 0:
            return cert.removed_start
        if i == last:
            return cert.removed_target
        return unlock_vertex(g, cliques[i])

    out: Sequence = [unlocked_biclique(g, ids, cliques[0], w(0))]
    trace = TranslationTrace()
    for i in range(last):
        k_now, k_next = cliques[i], cliques[i + 1]
        (u,) = k_now - k_next
        (v,) = k_next - k_now
        w_from, w_to = w(i), w(i + 1)
        cur = out[-1]
        micro = []
        if w_from != v:
            cur = cur - {v} | {w_from}
            micro.append(cur)
        after_first = cur
        for x in sorted((k_now | k_next) - {u, v}):
            old = ids[(min(u, x), max(u, x))]
            new = ids[(min(v, x), max(v, x))]
            cur = cur - {old} | {new}
            micro.append(cur)
        if w_to != u:
            cur = cur - {w_to} | {u}
            micro.append(cur)
        out.extend(micro)
        trace.steps.append(LiftStep(i, u, v, w_from, w_to, after_first, micro))
    return out, trace


def project_biclique_sequence(cert: ReductionCert, biclique_seq: Sequence) -> Sequence:
    """Turn a TJ-sequence of (p,p)-bicliques of H into a TJ-sequence of k-cliques."""
    bad = verify_sequence(cert.produced, biclique_seq)
    if bad is not None:
        raise InvalidSourceSequence(bad.reason, bad.index)
    everything = frozenset(range(cert.source.graph.n))
    missing = [everything - frozenset(s) for s in biclique_seq]
    cliques = [cert.source.start]
    for i in range(len(missing) - 1):
        if missing[i + 1] == missing[i]:
            cliques.append(cliques[-1])
        else:
            cliques.append(missing[i] & missing[i + 1])
    cliques.append(cert.source.target)
    out: Sequence = [cliques[0]]
    for k in cliques[1:]:
        if k != out[-1]:
            out.append(k)
    bad = verify_sequence(cert.source, out)
    if bad is not None:
        raise AssertionError(f"projection produced an invalid clique sequence: {bad}")
    return out
