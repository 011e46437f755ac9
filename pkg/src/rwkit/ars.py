"""Finite abstract reduction systems decided by exhaustive graph search."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional

from .errors import InputError, ParseError


class ClosureKind(enum.Enum):
    REFLEXIVE = "reflexive"
    SYMMETRIC = "symmetric"
    TRANSITIVE = "transitive"
    REFLEXIVE_TRANSITIVE = "reflexive-transitive"
    EQUIVALENCE = "equivalence"


@dataclass(frozen=True)
class FiniteARS:
    carrier: tuple[Hashable, ...]
    steps: frozenset[tuple[Hashable, Hashable]]

    def __post_init__(self):
        carrier = tuple(dict.fromkeys(self.carrier))
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "steps", frozenset(self.steps))
        if not carrier:
            raise InputError("carrier must be non-empty")
        members = set(carrier)
        for x, y in self.steps:
            if x not in members or y not in members:
                raise InputError(f"step ({x}, {y}) leaves the carrier")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[Hashable, Hashable]], elements: Iterable[Hashable] = ()) -> FiniteARS:
        edges = list(edges)
        carrier = list(elements)
        for x, y in edges:
            carrier += [x, y]
        return cls(tuple(carrier), frozenset(edges))

    def _adjacency(self) -> dict[Hashable, list[Hashable]]:
        rank = {x: i for i, x in enumerate(self.carrier)}
        adj: dict[Hashable, list[Hashable]] = {x: [] for x in self.carrier}
        for x, y in self.steps:
            adj[x].append(y)
        for x in adj:
            adj[x].sort(key=rank.__getitem__)
        return adj

    def _check(self, *xs):
        members = set(self.carrier)
        for x in xs:
            if x not in members:
                raise InputError(f"{x!r} is not an element of the carrier")


def _reach_from(adj, x) -> list:
    seen = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen[v] = None
                queue.append(v)
    return list(seen)


def _rtc_pairs(a: FiniteARS) -> frozenset:
    adj = a._adjacency()
    return frozenset((x, y) for x in a.carrier for y in _reach_from(adj, x))


def close(a: FiniteARS, kind: ClosureKind) -> FiniteARS:
    kind = ClosureKind(kind)
    if kind is ClosureKind.REFLEXIVE:
        return FiniteARS(a.carrier, a.steps | {(x, x) for x in a.carrier})
    if kind is ClosureKind.SYMMETRIC:
        return FiniteARS(a.carrier, a.steps | {(y, x) for x, y in a.steps})
    if kind is ClosureKind.REFLEXIVE_TRANSITIVE:
        return FiniteARS(a.carrier, _rtc_pairs(a))
    if kind is ClosureKind.TRANSITIVE:
        adj = a._adjacency()
        pairs = set()
        for x in a.carrier:
            for y in adj[x]:
                pairs.update((x, z) for z in _reach_from(adj, y))
        return FiniteARS(a.carrier, frozenset(pairs))
    return close(close(a, ClosureKind.SYMMETRIC), ClosureKind.REFLEXIVE_TRANSITIVE)


def joinable(a: FiniteARS, x: Hashable, y: Hashable) -> tuple[bool, Optional[Hashable]]:
    """Whether ``x`` and ``y`` have a common reduct; the witness is the first
    element reachable from ``x`` in breadth-first order that ``y`` also reaches."""
    a._check(x, y)
    adj = a._adjacency()
    from_y = set(_reach_from(adj, y))
    for z in _reach_from(adj, x):
        if z in from_y:
            return True, z
    return False, None


def _peaks(a: FiniteARS, one_step: bool):
    adj = a._adjacency()
    for x in a.carrier:
        succ = adj[x] if one_step else _reach_from(adj, x)
        for i, y in enumerate(succ):
            for z in succ[i + 1:]:
                yield x, y, z


def find_nonjoinable_peak(a: FiniteARS, one_step: bool = False) -> Optional[tuple]:
    """First peak ``(x, y, z)`` whose ends ``y``, ``z`` do not join, or None."""
    adj = a._adjacency()
    reach = {x: set(_reach_from(adj, x)) for x in a.carrier}
    for x, y, z in _peaks(a, one_step):
        if not reach[y] & reach[z]:
            return x, y, z
    return None


def confluent(a: FiniteARS) -> bool:
    return find_nonjoinable_peak(a, one_step=False) is None


def locally_confluent(a: FiniteARS) -> bool:
    return find_nonjoinable_peak(a, one_step=True) is None


def find_cycle(a: FiniteARS) -> Optional[list]:
    """Some cycle ``[x0, x1, ..., x0]`` of the step graph, or None."""
    adj = a._adjacency()
    color = {x: 0 for x in a.carrier}  # 0 new, 1 on stack, 2 done
    for root in a.carrier:
        if color[root]:
            continue
        path = [root]
        iters = [iter(adj[root])]
        color[root] = 1
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                color[path.pop()] = 2
                iters.pop()
            elif color[nxt] == 1:
                return path[path.index(nxt):] + [nxt]
            elif color[nxt] == 0:
                color[nxt] = 1
                path.append(nxt)
                iters.append(iter(adj[nxt]))
    return None


def noetherian(a: FiniteARS) -> bool:
    return find_cycle(a) is None


def parse_edges(text: str) -> FiniteARS:
    """Parse ``x -> y`` lines; a bare identifier declares an isolated element.

    Blank lines and ``;`` comments are ignored.
    """
    edges, elements = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            left, _, right = line.partition("->")
            x, y = left.strip(), right.strip()
            if not x or not y or len(x.split()) != 1 or len(y.split()) != 1:
                raise ParseError("expected 'x -> y'", lineno, 1)
            edges.append((x, y))
        elif len(line.split()) == 1:
            elements.append(line)
        else:
            raise ParseError("expected 'x -> y' or a single element", lineno, 1)
    if not edges and not elements:
        raise ParseError("empty reduction system", 1, 1)
    return FiniteARS.from_edges(edges, elements)
