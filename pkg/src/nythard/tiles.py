"""Tiles: move between tiles, deleting the features they share.

Tile indices are 0-based. A move to a tile sharing an undeleted feature is
a standard move; any other move is a teleport, forced only when the tile
being left has no features left.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from ._common import _Counter


class InvalidTiles(ValueError):
    pass


@dataclass(frozen=True)
class TilesInstance:
    features: tuple[str, ...]
    tiles: tuple[frozenset[str], ...]

    def __post_init__(self):
        if len(set(self.features)) != len(self.features):
            raise InvalidTiles("duplicate feature names")
        union = frozenset().union(*self.tiles) if self.tiles else frozenset()
        if union - set(self.features):
            raise InvalidTiles(f"tiles use unknown features {sorted(union - set(self.features))}")
        if set(self.features) - union:
            raise InvalidTiles(f"features {sorted(set(self.features) - union)} appear on no tile")


def make_tiles(tiles: Iterable[Iterable[str]], features: Iterable[str] | None = None) -> TilesInstance:
    tiles = tuple(frozenset(t) for t in tiles)
    if features is None:
        features = sorted(frozenset().union(*tiles)) if tiles else []
    return TilesInstance(tuple(features), tiles)


def feature_counts(inst: TilesInstance) -> Counter:
    return Counter(f for t in inst.tiles for f in t)


def is_solvable(inst: TilesInstance) -> bool:
    """Every feature must appear on an even number of tiles."""
    return all(n % 2 == 0 for n in feature_counts(inst).values())


@dataclass(frozen=True)
class MoveReport:
    all_deleted: bool
    unforced_teleports: int
    forced_teleports: int
    standard_moves: int
    max_combo: int

    @property
    def single_combo(self) -> bool:
        return self.all_deleted and self.unforced_teleports == 0


def verify_moves(inst: TilesInstance, moves: Sequence[int]) -> MoveReport:
    """Replay ``moves`` and classify every step.

    The combo grows by one per standard move, survives forced teleports and
    drops to zero on an unforced teleport. Raises ``ValueError`` on repeated
    consecutive indices or unknown tiles.
    """
    left = [set(t) for t in inst.tiles]
    parity = {f: n % 2 for f, n in feature_counts(inst).items()}
    for i in moves:
        if not 0 <= i < len(left):
            raise ValueError(f"unknown tile {i}")
    unforced = forced = standard = combo = best = 0
    for a, b in zip(moves, moves[1:]):
        if a == b:
            raise ValueError(f"tile {a} repeated consecutively")
        shared = left[a] & left[b]
        if shared:
            left[a] -= shared
            left[b] -= shared
            standard += 1
            combo += 1
            best = max(best, combo)
        elif left[a]:
            unforced += 1
            combo = 0
        else:
            forced += 1
        now = Counter(f for t in left for f in t)
        if any(now[f] % 2 != p for f, p in parity.items()):
            raise AssertionError("feature parity changed during a move")
    return MoveReport(not any(left), unforced, forced, standard, best)


def solve_greedy(inst: TilesInstance) -> tuple[int, ...] | None:
    """Single-combo solution, or ``None`` when some feature count is odd.

    Start on the lowest-index non-empty tile; always move to the lowest-index
    tile sharing an undeleted feature, and teleport (forced) to the
    lowest-index tile with features left once the current tile is empty.
    """
    if not is_solvable(inst):
        return None
    left = [set(t) for t in inst.tiles]
    holders: dict[str, set[int]] = {}
    for i, t in enumerate(left):
        for f in t:
            holders.setdefault(f, set()).add(i)
    alive = sorted(i for i, t in enumerate(left) if t)
    if not alive:
        return ()
    cur = alive[0]
    moves = [cur]
    while True:
        if left[cur]:
            nxt = min(j for f in left[cur] for j in holders[f] if j != cur)
            for f in left[cur] & left[nxt]:
                holders[f] -= {cur, nxt}
            shared = left[cur] & left[nxt]
            left[cur] -= shared
            left[nxt] -= shared
        else:
            rest = [i for i, t in enumerate(left) if t]
            if not rest:
                return tuple(moves)
            nxt = rest[0]
        moves.append(nxt)
        cur = nxt


def sharing_number(inst: TilesInstance) -> int:
    if len(inst.tiles) < 2:
        raise InvalidTiles("sharing number needs at least two tiles")
    return max(len(a & b) for a, b in combinations(inst.tiles, 2))


@dataclass(frozen=True)
class StructureGraph:
    """Bipartite tile/feature graph; tile vertices are ints, features are strings."""

    adjacency: dict

    def degree(self, v) -> int:
        return len(self.adjacency[v])


def structure_graph(inst: TilesInstance) -> StructureGraph:
    adj: dict = {i: sorted(t) for i, t in enumerate(inst.tiles)}
    for f in inst.features:
        adj[f] = [i for i, t in enumerate(inst.tiles) if f in t]
    return StructureGraph(adj)


def no_teleport_solvable(inst: TilesInstance) -> tuple[bool, tuple[int, ...] | None]:
    """Decide single-combo play with no teleports at all (sharing number 1 only).

    True iff the non-isolated part of the structure graph is connected, every
    feature has even degree and at most two tiles have odd degree. The moves
    are the tile vertices of an Eulerian trail.
    """
    if sharing_number(inst) != 1:
        raise InvalidTiles("the Eulerian test is only valid for sharing number 1")
    g = structure_graph(inst)
    if any(g.degree(f) % 2 for f in inst.features):
        return False, None
    odd = [i for i in range(len(inst.tiles)) if g.degree(i) % 2]
    if len(odd) > 2:
        return False, None
    live = [v for v in g.adjacency if g.degree(v)]
    seen = {live[0]}
    stack = [live[0]]
    while stack:
        for w in g.adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(live):
        return False, None

    start = odd[0] if odd else min(v for v in live if isinstance(v, int))
    trail = _hierholzer(g, start)
    moves = tuple(v for v in trail if isinstance(v, int))
    return True, moves


def _hierholzer(g: StructureGraph, start) -> list:
    used: set[tuple] = set()
    ptr = {v: 0 for v in g.adjacency}

    def key(a, b):
        return (a, b) if isinstance(a, int) else (b, a)

    stack, out = [start], []
    while stack:
        v = stack[-1]
        nbrs = g.adjacency[v]
        while ptr[v] < len(nbrs) and key(v, nbrs[ptr[v]]) in used:
            ptr[v] += 1
        if ptr[v] == len(nbrs):
            out.append(stack.pop())
        else:
            w = nbrs[ptr[v]]
            used.add(key(v, w))
            stack.append(w)
    return out[::-1]


def _brute(inst: TilesInstance, teleports: bool, budget: int | None) -> bool:
    counter = _Counter(budget, "tiles brute force")
    start = tuple(frozenset(t) for t in inst.tiles)
    if not any(start):
        return True
    seen = set()
    stack = [(i, start) for i in range(len(start))]
    while stack:
        cur, state = stack.pop()
        if (cur, state) in seen:
            continue
        seen.add((cur, state))
        counter.tick()
        if not any(state):
            return True
        for j in range(len(state)):
            if j == cur:
                continue
            shared = state[cur] & state[j]
            if shared:
                nxt = list(state)
                nxt[cur] = state[cur] - shared
                nxt[j] = state[j] - shared
                stack.append((j, tuple(nxt)))
            elif teleports:
                stack.append((j, state))
    return False


def brute_force_solvable(inst: TilesInstance, budget: int | None = None) -> bool:
    """Oracle: search every move sequence (teleports allowed) for a full deletion."""
    return _brute(inst, True, budget)


def brute_force_no_teleport(inst: TilesInstance, budget: int | None = None) -> bool:
    """Oracle: as :func:`brute_force_solvable` with standard moves only."""
    return _brute(inst, False, budget)


def all_instances(max_tiles: int, max_features: int, min_tiles: int = 1):
    """Every instance (as a multiset of tiles) with the given bounds, features named a, b, ..."""
    from itertools import combinations_with_replacement

    for nf in range(1, max_features + 1):
        names = [chr(ord("a") + i) for i in range(nf)]
        subsets = [frozenset(c) for r in range(nf + 1) for c in combinations(names, r)]
        for nt in range(min_tiles, max_tiles + 1):
            for tiles in combinations_with_replacement(range(len(subsets)), nt):
                chosen = [subsets[i] for i in tiles]
                if frozenset().union(*chosen) == frozenset(names):
                    yield TilesInstance(tuple(names), tuple(chosen))


def random_tiles(seed: int, max_tiles: int = 6, max_features: int = 5) -> TilesInstance:
    rng = random.Random(seed)
    nf = rng.randint(1, max_features)
    names = [chr(ord("a") + i) for i in range(nf)]
    nt = rng.randint(1, max_tiles)
    tiles = [frozenset(f for f in names if rng.random() < 0.5) for _ in range(nt)]
    used = frozenset().union(*tiles)
    features = tuple(f for f in names if f in used)
    return TilesInstance(features, tuple(tiles))
