"""Configuration predicates and move rules.

A property is one of ``Clique(k)``, ``Biclique(p, q)`` or ``MSet(sizes)``;
a move rule is one of TJ (token jumping), CJ (component jumping), CS
(component sliding) and CS1 (component sliding by one vertex).
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

from .errors import ParseError, PropertyViolated
from .graph_core import (
    BipGraph,
    Config,
    Graph,
    components_of_mask,
    config_key,
    from_mask,
    is_connected_mask,
    iter_bits,
    to_mask,
)


@dataclass(frozen=True)
class Clique:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"clique size must be >= 1, got {self.k}")

    @property
    def size(self) -> int:
        return self.k

    def __str__(self) -> str:
        return f"clique {self.k}"


@dataclass(frozen=True)
class Biclique:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"biclique sides must be >= 1, got ({self.p}, {self.q})")

    @property
    def size(self) -> int:
        return self.p + self.q

    @property
    def shape(self) -> tuple[int, int]:
        return (max(self.p, self.q), min(self.p, self.q))

    def __str__(self) -> str:
        return f"biclique {self.p} {self.q}"


@dataclass(frozen=True)
class MSet:
    """Multiset of component orders, stored sorted ascending."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise ValueError(f"M must be a non-empty multiset of positive integers, got {self.sizes}")
        object.__setattr__(self, "sizes", tuple(sorted(self.sizes)))

    @property
    def size(self) -> int:
        return sum(self.sizes)

    def __str__(self) -> str:
        return "mset " + " ".join(map(str, self.sizes))


PropertySpec = Clique | Biclique | MSet


class MoveRule(str, enum.Enum):
    TJ = "tj"
    CJ = "cj"
    CS = "cs"
    CS1 = "cs1"

    def __str__(self) -> str:
        return self.value


def parse_property(text: str) -> PropertySpec:
    parts = text.split()
    try:
        kind, args = parts[0].lower(), [int(x) for x in parts[1:]]
        if kind == "clique" and len(args) == 1:
            return Clique(args[0])
        if kind == "biclique" and len(args) == 2:
            return Biclique(args[0], args[1])
        if kind == "mset" and args:
            return MSet(tuple(args))
    except (IndexError, ValueError) as exc:
        raise ParseError(f"bad property {text!r}: {exc}") from None
    raise ParseError(f"bad property {text!r}; expected `clique k`, `biclique p q` or `mset s1 s2 ...`")


def parse_rule(text: str) -> MoveRule:
    try:
        return MoveRule(text.strip().lower())
    except ValueError:
        raise ParseError(f"unknown move rule {text!r}; expected tj, cj, cs or cs1") from None


# -- predicates --------------------------------------------------------------

def _clique_mask(g: Graph, mask: int) -> bool:
    adj = g.adj
    for v in iter_bits(mask):
        if (mask & ~(1 << v)) & ~adj[v]:
            return False
    return True


def _biclique_shape_mask(g: Graph, mask: int) -> tuple[int, int] | None:
    if mask & (mask - 1) == 0:
        return None
    adj = g.adj
    v0 = (mask & -mask).bit_length() - 1
    other = adj[v0] & mask
    if not other:
        return None
    side = mask & ~other
    for x in iter_bits(side):
        if adj[x] & mask != other:
            return None
    for y in iter_bits(other):
        if adj[y] & mask != side:
            return None
    p, q = side.bit_count(), other.bit_count()
    return (p, q) if p >= q else (q, p)


def _multiset_mask(g: Graph, mask: int) -> tuple[int, ...]:
    return tuple(sorted(c.bit_count() for c in components_of_mask(g, mask)))


def satisfies_mask(g: Graph, spec: PropertySpec, mask: int) -> bool:
    if isinstance(spec, Clique):
        return mask.bit_count() == spec.k and _clique_mask(g, mask)
    if isinstance(spec, Biclique):
        return mask.bit_count() == spec.size and _biclique_shape_mask(g, mask) == spec.shape
    return mask.bit_count() == spec.size and _multiset_mask(g, mask) == spec.sizes


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    return _clique_mask(g, to_mask(g.check_config(s)))


def biclique_shape(g: Graph, s: Iterable[int]) -> tuple[int, int] | None:
    """Side sizes ``(p, q)`` with ``p >= q`` if ``g[s]`` is a complete bipartite graph.

    Edgeless induced subgraphs and single vertices give ``None``: their split
    into two sides is not determined.
    """
    return _biclique_shape_mask(g, to_mask(g.check_config(s)))


def component_multiset(g: Graph, s: Iterable[int]) -> tuple[int, ...]:
    """mu_G(S) as a sorted tuple of component orders."""
    return _multiset_mask(g, to_mask(g.check_config(s)))


def satisfies(g: Graph, spec: PropertySpec, s: Iterable[int]) -> bool:
    return satisfies_mask(g, spec, to_mask(g.check_config(s)))


# -- moves -------------------------------------------------------------------

def move_ok_mask(g: Graph, rule: MoveRule, smask: int, tmask: int) -> bool:
    """Move test on two configurations already known to satisfy the property."""
    if rule is MoveRule.TJ:
        out, into = smask & ~tmask, tmask & ~smask
        return out.bit_count() == 1 and into.bit_count() == 1
    if smask == tmask:
        return False
    cs = set(components_of_mask(g, smask))
    ct = set(components_of_mask(g, tmask))
    gone, new = cs - ct, ct - cs
    if len(gone) != 1 or len(new) != 1:
        return False
    if rule is MoveRule.CJ:
        return True
    (x,), (y,) = gone, new
    if not is_connected_mask(g, x | y):
        return False
    if rule is MoveRule.CS:
        return True
    return (x & ~y).bit_count() == 1 and (y & ~x).bit_count() == 1


def is_move(g: Graph, rule: MoveRule, spec: PropertySpec, s: Iterable[int], t: Iterable[int]) -> bool:
    smask, tmask = to_mask(g.check_config(s)), to_mask(g.check_config(t))
    for label, mask in (("s", smask), ("t", tmask)):
        if not satisfies_mask(g, spec, mask):
            raise PropertyViolated(f"{label} = {config_key(from_mask(mask))} is not a {spec}")
    return move_ok_mask(g, rule, smask, tmask)


def move_masks(g: Graph, rule: MoveRule, spec: PropertySpec, smask: int) -> list[int]:
    """Neighbour masks of ``smask``, unsorted; ``smask`` must satisfy ``spec``."""
    out = []
    full = (1 << g.n) - 1
    if rule is MoveRule.TJ:
        outside = full & ~smask
        for x in iter_bits(smask):
            base = smask & ~(1 << x)
            for y in iter_bits(outside):
                t = base | (1 << y)
                if satisfies_mask(g, spec, t):
                    out.append(t)
        return out
    seen = set()
    adj = g.adj
    for comp in components_of_mask(g, smask):
        rest = smask & ~comp
        # the new component may not touch the components that stay
        free = full & ~rest
        for v in iter_bits(rest):
            free &= ~adj[v]
        if rule is MoveRule.CS1:
            candidates = (
                comp & ~(1 << x) | (1 << y)
                for x in iter_bits(comp)
                for y in iter_bits(free & ~comp)
            )
        else:
            candidates = (to_mask(c) for c in combinations(iter_bits(free), comp.bit_count()))
        for y in candidates:
            if y == comp or not is_connected_mask(g, y):
                continue
            t = rest | y
            if t in seen or not satisfies_mask(g, spec, t):
                continue
            if move_ok_mask(g, rule, smask, t):
                seen.add(t)
                out.append(t)
    return out


def enumerate_moves(g: Graph, rule: MoveRule, spec: PropertySpec, s: Iterable[int]) -> list[Config]:
    """All configurations one legal move away from ``s``, in sorted order."""
    s = g.check_config(s)
    smask = to_mask(s)
    if not satisfies_mask(g, spec, smask):
        raise PropertyViolated(f"{config_key(s)} is not a {spec}")
    return sorted((from_mask(t) for t in move_masks(g, rule, spec, smask)), key=config_key)


def side_preserving_moves(h: BipGraph, rule: MoveRule, spec: PropertySpec, s: Iterable[int]) -> list[Config]:
    """Moves of ``s`` that keep the number of vertices on each side of ``h``."""
    s = frozenset(s)
    a = len(s & h.side_a)
    return [t for t in enumerate_moves(h.graph, rule, spec, s) if len(t & h.side_a) == a]
