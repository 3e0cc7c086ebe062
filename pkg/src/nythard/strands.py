"""Strands: partition a grid of symbols into dictionary words.

A word occupies a simple path of cells, each adjacent to the next under king
moves (or edge moves only, with ``allow_diagonal=False``). Paths are
directed: a placement spells its word from the first cell to the last.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from ._common import Verdict, _Counter

Cell = tuple[int, int]
Word = tuple[str, ...]
Placement = tuple[int, tuple[Cell, ...]]

# neighbour order used everywhere: u, r, d, l, ur, dr, dl, ul
DIRECTIONS = {
    "u": (-1, 0),
    "r": (0, 1),
    "d": (1, 0),
    "l": (0, -1),
    "ur": (-1, 1),
    "dr": (1, 1),
    "dl": (1, -1),
    "ul": (-1, -1),
}
_STEP_NAME = {v: k for k, v in DIRECTIONS.items()}
_ORTHO = list(DIRECTIONS.values())[:4]
_KING = list(DIRECTIONS.values())


class InvalidStrands(ValueError):
    pass


def _word(entry) -> Word:
    return tuple(entry) if isinstance(entry, str) else tuple(str(s) for s in entry)


@dataclass(frozen=True)
class StrandsInstance:
    alphabet: tuple[str, ...]
    dictionary: tuple[Word, ...]
    grid: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if not self.grid or not self.grid[0]:
            raise InvalidStrands("grid must have at least one row and one column")
        width = len(self.grid[0])
        alpha = set(self.alphabet)
        for r, row in enumerate(self.grid):
            if len(row) != width:
                raise InvalidStrands(f"row {r} has {len(row)} cells, expected {width}")
            for sym in row:
                if sym not in alpha:
                    raise InvalidStrands(f"grid symbol {sym!r} is outside the alphabet")
        seen = set()
        for w in self.dictionary:
            if not w:
                raise InvalidStrands("empty dictionary word")
            if any(s not in alpha for s in w):
                raise InvalidStrands(f"dictionary word {''.join(w)!r} uses symbols outside the alphabet")
            if w in seen:
                raise InvalidStrands(f"duplicate dictionary word {''.join(w)!r}")
            seen.add(w)

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def cols(self) -> int:
        return len(self.grid[0])

    def cells(self) -> list[Cell]:
        return [(r, c) for r in range(self.rows) for c in range(self.cols)]

    def __getitem__(self, cell: Cell) -> str:
        return self.grid[cell[0]][cell[1]]


def make_strands(grid: Sequence, dictionary: Iterable, alphabet: Iterable[str] | None = None) -> StrandsInstance:
    """Build an instance; string rows and words are split into characters."""
    rows = tuple(_word(row) for row in grid)
    words = tuple(_word(w) for w in dictionary)
    if alphabet is None:
        alphabet = dict.fromkeys(s for part in (*rows, *words) for s in part)
    return StrandsInstance(tuple(alphabet), words, rows)


def _adjacent(a: Cell, b: Cell, allow_diagonal: bool) -> bool:
    dr, dc = abs(a[0] - b[0]), abs(a[1] - b[1])
    if allow_diagonal:
        return max(dr, dc) == 1
    return dr + dc == 1


def verify_partition(inst: StrandsInstance, partition: Iterable[Sequence], allow_diagonal: bool = True) -> Verdict:
    """Check disjointness, coverage, adjacency and spelling of every path."""
    problems = []
    owner: dict[Cell, int] = {}
    for i, (widx, path) in enumerate(partition):
        path = [tuple(c) for c in path]
        if not 0 <= widx < len(inst.dictionary):
            raise IndexError(f"unknown word index {widx}")
        for cell in path:
            if not (0 <= cell[0] < inst.rows and 0 <= cell[1] < inst.cols):
                raise IndexError(f"cell {cell} is outside the grid")
        if len(set(path)) != len(path):
            problems.append(f"path {i} repeats a cell")
        for a, b in zip(path, path[1:]):
            if not _adjacent(a, b, allow_diagonal):
                problems.append(f"path {i} jumps from {a} to {b}")
        spelled = tuple(inst[c] for c in path)
        if spelled != inst.dictionary[widx]:
            problems.append(f"path {i} spells {''.join(spelled)!r}, not word {widx}")
        for cell in set(path):
            if cell in owner:
                problems.append(f"cell {cell} lies on paths {owner[cell]} and {i}")
            owner[cell] = i
    missing = [c for c in inst.cells() if c not in owner]
    if missing:
        problems.append(f"{len(missing)} cells uncovered, first {missing[0]}")
    return Verdict.of(problems)


def enumerate_placements(inst: StrandsInstance, allow_diagonal: bool = True,
                         cells: Iterable[Cell] | None = None) -> list[Placement]:
    """Every simple path spelling a dictionary word.

    Ordered by word index, then start cell (row-major), then neighbour order
    u, r, d, l, ur, dr, dl, ul. With ``cells`` the paths stay inside that set.
    """
    allowed = set(inst.cells()) if cells is None else set(cells)
    steps = _KING if allow_diagonal else _ORTHO
    starts = sorted(allowed)
    out: list[Placement] = []
    for widx, word in enumerate(inst.dictionary):
        n = len(word)

        def extend(path: list[Cell], used: set[Cell]):
            if len(path) == n:
                out.append((widx, tuple(path)))
                return
            r, c = path[-1]
            want = word[len(path)]
            for dr, dc in steps:
                nxt = (r + dr, c + dc)
                if nxt in allowed and nxt not in used and inst[nxt] == want:
                    path.append(nxt)
                    used.add(nxt)
                    extend(path, used)
                    used.discard(nxt)
                    path.pop()

        for cell in starts:
            if inst[cell] == word[0]:
                extend([cell], {cell})
    return out


def placement_sets(inst: StrandsInstance, allow_diagonal: bool = True,
                   cells: Iterable[Cell] | None = None) -> list[Placement]:
    """One representative path per (word, cell set); enough for exact cover.

    Paths are grown one symbol at a time, keeping a single path for each
    (last cell, visited cells) state, which avoids enumerating the many
    orderings of the same cells.
    """
    allowed = sorted(set(inst.cells()) if cells is None else set(cells))
    index = {c: i for i, c in enumerate(allowed)}
    sym = [inst[c] for c in allowed]
    steps = _KING if allow_diagonal else _ORTHO
    nbrs = [
        [index[n] for n in ((r + dr, c + dc) for dr, dc in steps) if n in index]
        for r, c in allowed
    ]
    out: list[Placement] = []
    for widx, word in enumerate(inst.dictionary):
        frontier = {(i, 1 << i): (i,) for i in range(len(allowed)) if sym[i] == word[0]}
        for want in word[1:]:
            nxt: dict[tuple[int, int], tuple[int, ...]] = {}
            for (last, mask), path in frontier.items():
                for nb in nbrs[last]:
                    if sym[nb] == want and not mask >> nb & 1:
                        key = (nb, mask | 1 << nb)
                        if key not in nxt:
                            nxt[key] = path + (nb,)
            frontier = nxt
        by_mask: dict[int, tuple[int, ...]] = {}
        for (_last, mask), path in frontier.items():
            by_mask.setdefault(mask, path)
        for path in by_mask.values():
            out.append((widx, tuple(allowed[i] for i in path)))
    return out


class _ExactCover:
    """Algorithm X over dict-of-sets; columns are cells, rows are placements."""

    def __init__(self, cells: Sequence[Cell], rows: Sequence[Placement], mrv: bool, budget: int | None):
        self.order = sorted(cells)
        self.rows = rows
        self.X: dict[Cell, set[int]] = {c: set() for c in self.order}
        self.Y: dict[int, tuple[Cell, ...]] = {}
        for i, (_w, path) in enumerate(rows):
            self.Y[i] = path
            for c in path:
                self.X[c].add(i)
        self.empty = sum(1 for s in self.X.values() if not s)
        self.mrv = mrv
        self.counter = _Counter(budget, "strands search")
        self.chosen: list[int] = []

    def _select(self, r: int) -> list[set[int]]:
        cols = []
        for j in self.Y[r]:
            for i in self.X[j]:
                for k in self.Y[i]:
                    if k != j:
                        col = self.X[k]
                        col.discard(i)
                        if not col:
                            self.empty += 1
            cols.append(self.X.pop(j))
            if not cols[-1]:
                self.empty -= 1
        return cols

    def _deselect(self, r: int, cols: list[set[int]]) -> None:
        for j in reversed(self.Y[r]):
            self.X[j] = cols.pop()
            if not self.X[j]:
                self.empty += 1
            for i in self.X[j]:
                for k in self.Y[i]:
                    if k != j:
                        col = self.X[k]
                        if not col:
                            self.empty -= 1
                        col.add(i)

    def _pick(self, start: int) -> tuple[Cell, int]:
        if self.mrv:
            return min(self.X, key=lambda c: (len(self.X[c]), c)), start
        while self.order[start] not in self.X:
            start += 1
        return self.order[start], start

    def solutions(self) -> Iterator[list[Placement]]:
        yield from self._rec(0)

    def _rec(self, start: int) -> Iterator[list[Placement]]:
        if not self.X:
            yield [self.rows[i] for i in sorted(self.chosen)]
            return
        if self.empty:
            return
        col, start = self._pick(start)
        for r in sorted(self.X[col]):
            self.counter.tick()
            self.chosen.append(r)
            cols = self._select(r)
            yield from self._rec(start)
            self._deselect(r, cols)
            self.chosen.pop()


def iter_covers(inst: StrandsInstance, allow_diagonal: bool = True, cells: Iterable[Cell] | None = None,
                mrv: bool = False, budget: int | None = None) -> Iterator[list[Placement]]:
    """Exact covers of ``cells`` (default: the whole grid) by placements inside it.

    Covers are distinct as partitions into (word, cell set) pieces.
    """
    target = inst.cells() if cells is None else sorted(set(cells))
    rows = placement_sets(inst, allow_diagonal, target)
    return _ExactCover(target, rows, mrv, budget).solutions()


def solve_strands(inst: StrandsInstance, allow_diagonal: bool = True, mrv: bool = False,
                  budget: int | None = None) -> list[Placement] | None:
    """First partition found, or ``None``. Raises :class:`BudgetExhausted`."""
    for sol in iter_covers(inst, allow_diagonal, mrv=mrv, budget=budget):
        return sol
    return None


def count_covers(inst: StrandsInstance, allow_diagonal: bool = True, cells: Iterable[Cell] | None = None,
                 limit: int = 10, budget: int | None = None) -> int:
    """Number of exact covers, stopping once ``limit`` is exceeded."""
    n = 0
    for _ in iter_covers(inst, allow_diagonal, cells, budget=budget):
        n += 1
        if n > limit:
            break
    return n


# --------------------------------------------------------------------------
# certificate matrices

START, END, CONT = "S", "E", "C"


def to_certificate(inst: StrandsInstance, partition: Iterable[Placement]) -> tuple[list[list[str]], list[list[str | None]]]:
    """Role of each cell (start, end, continuation) and the step to the next cell.

    A one-cell word is a start with no step; ends carry no step either.
    """
    v1: list[list[str]] = [[""] * inst.cols for _ in range(inst.rows)]
    v2: list[list[str | None]] = [[None] * inst.cols for _ in range(inst.rows)]
    for _w, path in partition:
        for t, (r, c) in enumerate(path):
            if t == 0:
                v1[r][c] = START
            elif t == len(path) - 1:
                v1[r][c] = END
            else:
                v1[r][c] = CONT
            if t + 1 < len(path):
                nr, nc = path[t + 1]
                v2[r][c] = _STEP_NAME[nr - r, nc - c]
    return v1, v2


def from_certificate(inst: StrandsInstance, v1, v2) -> list[Placement]:
    """Inverse of :func:`to_certificate`; word indices come from the spelling."""
    index = {w: i for i, w in enumerate(inst.dictionary)}
    out = []
    for r, c in product(range(inst.rows), range(inst.cols)):
        if v1[r][c] != START:
            continue
        path = [(r, c)]
        while v2[path[-1][0]][path[-1][1]] is not None:
            pr, pc = path[-1]
            dr, dc = DIRECTIONS[v2[pr][pc]]
            nxt = (pr + dr, pc + dc)
            if not (0 <= nxt[0] < inst.rows and 0 <= nxt[1] < inst.cols) or nxt in path:
                raise InvalidStrands(f"certificate walks off the grid or loops at {nxt}")
            path.append(nxt)
            if v1[nxt[0]][nxt[1]] == END:
                break
        spelled = tuple(inst[c] for c in path)
        if spelled not in index:
            raise InvalidStrands(f"certificate path spells {''.join(spelled)!r}, not a word")
        out.append((index[spelled], tuple(path)))
    return sorted(out)


def random_strands(seed: int, rows: int = 3, cols: int = 3, alphabet_size: int = 2,
                   max_len: int = 3, plant: bool = True, extra_words: int = 1) -> StrandsInstance:
    """Seeded instance; ``plant`` builds the dictionary from a random orthogonal partition.

    Planted instances are solvable without diagonal moves by construction.
    """
    import random

    rng = random.Random(seed)
    letters = [chr(ord("A") + i) for i in range(alphabet_size)]
    grid = [[rng.choice(letters) for _ in range(cols)] for _ in range(rows)]
    words: dict[Word, None] = {}
    if plant:
        free = {(r, c) for r in range(rows) for c in range(cols)}
        while free:
            path = [min(free)]
            free.discard(path[-1])
            for _ in range(rng.randint(1, max_len) - 1):
                r, c = path[-1]
                options = [(r + dr, c + dc) for dr, dc in _ORTHO if (r + dr, c + dc) in free]
                if not options:
                    break
                path.append(rng.choice(options))
                free.discard(path[-1])
            words.setdefault(tuple(grid[r][c] for r, c in path))
    for _ in range(extra_words):
        words.setdefault(tuple(rng.choice(letters) for _ in range(rng.randint(1, max_len))))
    return make_strands(grid, list(words), letters)
