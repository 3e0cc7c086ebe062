"""Pips: dominoes tile a board subject to region constraints.

Cells are ``(row, col)`` integer pairs, so sorting cells gives row-major
order. A placement is a list of ``(domino index, cell A, cell B, value at A,
value at B)`` records.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ._common import Verdict, _Counter

Cell = tuple[int, int]
Domino = tuple[int, int]

KINDS = ("eq", "neq", "sum", "lt", "gt")
_SUM_KINDS = ("sum", "lt", "gt")


class InvalidPips(ValueError):
    pass


class TooManySolutions(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"more than {limit} solutions")
        self.limit = limit


@dataclass(frozen=True)
class Constraint:
    region: frozenset[Cell]
    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidPips(f"unknown constraint kind {self.kind!r}")
        if (self.kind in _SUM_KINDS) != (self.n is not None):
            raise InvalidPips(f"{self.kind} constraint {'needs' if self.kind in _SUM_KINDS else 'takes no'} n")
        if self.n is not None and self.n < 0:
            raise InvalidPips("n must be non-negative")

    def holds(self, values: Sequence[int]) -> bool:
        if self.kind == "eq":
            return len(set(values)) <= 1
        if self.kind == "neq":
            return len(set(values)) == len(values)
        total = sum(values)
        if self.kind == "sum":
            return total == self.n
        if self.kind == "lt":
            return total < self.n
        return total > self.n


def eq(cells: Iterable[Cell]) -> Constraint:
    return Constraint(frozenset(cells), "eq")


def sum_eq(cells: Iterable[Cell], n: int) -> Constraint:
    return Constraint(frozenset(cells), "sum", n)


@dataclass(frozen=True)
class PipsPuzzle:
    cells: frozenset[Cell]
    dominoes: tuple[Domino, ...]
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        for d in self.dominoes:
            if len(d) != 2 or min(d) < 0:
                raise InvalidPips(f"bad domino {d!r}")
        seen: set[Cell] = set()
        for i, c in enumerate(self.constraints):
            if not c.region:
                raise InvalidPips(f"constraint {i} has an empty region")
            if not c.region <= self.cells:
                raise InvalidPips(f"constraint {i} covers cells outside the board")
            if c.region & seen:
                raise InvalidPips(f"constraint {i} overlaps an earlier region")
            seen |= c.region
            if not _connected(c.region):
                raise InvalidPips(f"constraint {i} region is not edge-connected")

    @property
    def area_matches(self) -> bool:
        return 2 * len(self.dominoes) == len(self.cells)


def make_pips(cells: Iterable[Cell], dominoes: Iterable[Sequence[int]],
              constraints: Iterable[Constraint] = ()) -> PipsPuzzle:
    return PipsPuzzle(
        frozenset((int(r), int(c)) for r, c in cells),
        tuple((int(a), int(b)) for a, b in dominoes),
        tuple(constraints),
    )


def rectangle(rows: int, cols: int, top: int = 0, left: int = 0) -> list[Cell]:
    return [(top + r, left + c) for r in range(rows) for c in range(cols)]


def _neighbors(cell: Cell) -> Iterator[Cell]:
    r, c = cell
    yield from ((r - 1, c), (r, c + 1), (r + 1, c), (r, c - 1))


def _connected(cells: frozenset[Cell]) -> bool:
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        for nb in _neighbors(stack.pop()):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


Placement = tuple[tuple[int, Cell, Cell, int, int], ...]


def verify_pips(puzzle: PipsPuzzle, placement: Iterable[Sequence]) -> Verdict:
    placement = [tuple(p) for p in placement]
    problems = []
    value: dict[Cell, int] = {}
    used = Counter()
    for rec in placement:
        idx, a, b, va, vb = rec
        a, b = tuple(a), tuple(b)
        if not 0 <= idx < len(puzzle.dominoes):
            raise IndexError(f"unknown domino {idx}")
        for cell in (a, b):
            if cell not in puzzle.cells:
                raise KeyError(f"unknown cell {cell}")
        used[idx] += 1
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
            problems.append(f"domino {idx} covers non-adjacent cells {a} and {b}")
        if sorted((va, vb)) != sorted(puzzle.dominoes[idx]):
            problems.append(f"domino {idx} shows {(va, vb)} but is {puzzle.dominoes[idx]}")
        for cell, v in ((a, va), (b, vb)):
            if cell in value:
                problems.append(f"cell {cell} covered twice")
            value[cell] = v
    for idx in range(len(puzzle.dominoes)):
        if used[idx] != 1:
            problems.append(f"domino {idx} used {used[idx]} times")
    missing = puzzle.cells - value.keys()
    if missing:
        problems.append(f"{len(missing)} cells uncovered, first {min(missing)}")
    for i, con in enumerate(puzzle.constraints):
        if con.region <= value.keys() and not con.holds([value[c] for c in sorted(con.region)]):
            label = con.kind if con.n is None else f"{con.kind} {con.n}"
            problems.append(f"constraint {i} ({label}) violated")
    return Verdict.of(problems)


class _Search:
    """Row-major backtracking shared by the solver and the enumerator."""

    def __init__(self, puzzle: PipsPuzzle, budget: int | None, prune_sums: bool = True):
        self.p = puzzle
        self.order = sorted(puzzle.cells)
        self.rank = {c: i for i, c in enumerate(self.order)}
        self.region_of: dict[Cell, int] = {}
        for i, con in enumerate(puzzle.constraints):
            for c in con.region:
                self.region_of[c] = i
        self.left_in_region = [len(c.region) for c in puzzle.constraints]
        self.partial_sum = [0] * len(puzzle.constraints)
        self.seen_vals: list[Counter] = [Counter() for _ in puzzle.constraints]
        self.value: dict[Cell, int] = {}
        # domino types in order of first appearance; each keeps its unused indices
        self.types: list[Domino] = []
        self.pool: dict[Domino, list[int]] = {}
        for i, d in enumerate(puzzle.dominoes):
            key = tuple(sorted(d))
            if key not in self.pool:
                self.types.append(tuple(d))
                self.pool[key] = []
            self.pool[key].append(i)
        for key in self.pool:
            self.pool[key].reverse()  # pop() hands out the lowest index first
        self.halves = Counter()
        for a, b in puzzle.dominoes:
            self.halves[a] += 1
            self.halves[b] += 1
        self.prune_sums = prune_sums
        self.counter = _Counter(budget, "pips search")
        self.stack: list[tuple[int, Cell, Cell, int, int]] = []
        self.cursor = 0

    # constraint bookkeeping -------------------------------------------------
    def _assign(self, cell: Cell, v: int) -> None:
        self.value[cell] = v
        self.halves[v] -= 1
        r = self.region_of.get(cell)
        if r is not None:
            self.left_in_region[r] -= 1
            self.partial_sum[r] += v
            self.seen_vals[r][v] += 1

    def _unassign(self, cell: Cell) -> None:
        v = self.value.pop(cell)
        self.halves[v] += 1
        r = self.region_of.get(cell)
        if r is not None:
            self.left_in_region[r] += 1
            self.partial_sum[r] -= v
            self.seen_vals[r][v] -= 1
            if not self.seen_vals[r][v]:
                del self.seen_vals[r][v]

    def _extreme(self, count: int, largest: bool) -> int:
        total = 0
        for v in sorted(self.halves, reverse=largest):
            take = min(count, self.halves[v])
            total += take * v
            count -= take
            if not count:
                break
        return total

    def _ok(self, r: int) -> bool:
        con = self.p.constraints[r]
        seen = self.seen_vals[r]
        if con.kind == "eq":
            return len(seen) <= 1
        if con.kind == "neq":
            return all(m == 1 for m in seen.values())
        s, left = self.partial_sum[r], self.left_in_region[r]
        if not left:
            return con.holds([s])
        if not self.prune_sums:
            return True
        lo = s + self._extreme(left, False)
        hi = s + self._extreme(left, True)
        if con.kind == "sum":
            return lo <= con.n <= hi
        if con.kind == "lt":
            return lo < con.n
        return hi > con.n

    # search -----------------------------------------------------------------
    def run(self) -> Iterator[Placement]:
        if not self.p.area_matches:
            return
        yield from self._rec()

    def _rec(self) -> Iterator[Placement]:
        while self.cursor < len(self.order) and self.order[self.cursor] in self.value:
            self.cursor += 1
        if self.cursor == len(self.order):
            yield tuple(sorted(self.stack))
            return
        saved = self.cursor
        cell = self.order[saved]
        r, c = cell
        for other in ((r, c + 1), (r + 1, c)):
            if other not in self.rank or other in self.value:
                continue
            for a, b in self.types:
                key = (a, b) if a <= b else (b, a)
                if not self.pool[key]:
                    continue
                for va, vb in ((a, b), (b, a)) if a != b else ((a, b),):
                    self.counter.tick()
                    idx = self.pool[key].pop()
                    self._assign(cell, va)
                    self._assign(other, vb)
                    regions = {self.region_of.get(cell), self.region_of.get(other)} - {None}
                    if all(self._ok(x) for x in regions):
                        self.stack.append((idx, cell, other, va, vb))
                        yield from self._rec()
                        self.stack.pop()
                    self._unassign(other)
                    self._unassign(cell)
                    self.pool[key].append(idx)
                    self.cursor = saved


def solve_pips(puzzle: PipsPuzzle, budget: int | None = None) -> Placement | None:
    """First placement in deterministic search order, or ``None`` if none exists.

    Raises :class:`BudgetExhausted` when the node budget runs out.
    """
    for sol in _Search(puzzle, budget).run():
        return sol
    return None


def enumerate_pips_solutions(puzzle: PipsPuzzle, limit: int = 1000,
                             budget: int | None = None, prune_sums: bool = True) -> list[Placement]:
    """All placements, up to ``limit``; identical dominoes are not permuted.

    Raises :class:`TooManySolutions` if there are more than ``limit``.
    """
    out = []
    for sol in _Search(puzzle, budget, prune_sums).run():
        if len(out) == limit:
            raise TooManySolutions(limit)
        out.append(sol)
    return out


def tiling_shapes(cells: Iterable[Cell], limit: int = 2) -> list[frozenset[frozenset[Cell]]]:
    """Domino tilings of a cell set, ignoring values.

    Raises :class:`TooManySolutions` past ``limit`` tilings.
    """
    cells = list(cells)
    if len(cells) % 2:
        return []
    puzzle = make_pips(cells, [(0, 0)] * (len(cells) // 2))
    return [
        frozenset(frozenset((a, b)) for _i, a, b, _va, _vb in sol)
        for sol in enumerate_pips_solutions(puzzle, limit)
    ]
