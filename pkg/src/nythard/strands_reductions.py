"""Reductions into Strands.

* planar positive 1-in-3-SAT -> an 8-symbol, 7-word instance;
* Flow Free -> a checkerboard instance with one word family per colour;
* block expansion: every cell becomes a 3 x 3 block with a coloured rim,
  multiplying word lengths by nine.

Variable gadget for a variable with ``k`` legs (``⊔`` blanks shown as ``.``)::

    . . . E . . . . . .      E above or below each B, following the leg
    A * # B * # B * . A      middle row: A *, then k modules "# B *", then A
    . . . . . . E . . .

Covering the first ``A`` by the word ``A`` forces ``*#BE`` on every module
(true: every E is used inside the gadget). Covering it with ``A*`` forces
``#B*`` (false: every E is left to its edge).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from ._common import _Counter
from .sources import ABOVE, InvalidInstance, OneInThreeInstance, validate_embedding
from .strands import (
    Cell,
    InvalidStrands,
    StrandsInstance,
    iter_covers,
    make_strands,
    verify_partition,
)

BLANK = "⊔"
SAT_ALPHABET = ("A", "B", "C", "*", "#", "E", "F", BLANK)
SAT_DICTIONARY = (
    (BLANK,),
    ("A",),
    ("A", "*"),
    ("*", "#", "B", "E"),
    ("#", "B", "*"),
    ("E", "F"),
    ("F", "C", "C"),
)
COLORS = ("1", "2", "3", "4")
SUCCESSORS = {"1": ("2", "3"), "2": ("1", "4"), "3": ("1", "4"), "4": ("2", "3")}


class PullbackError(ValueError):
    pass


@dataclass(frozen=True)
class VariableLayout:
    top_left: Cell
    modules: int
    e_cells: tuple[Cell, ...]

    @property
    def width(self) -> int:
        return 3 * self.modules + 3

    @property
    def anchor(self) -> Cell:
        """Middle cell of the first column (holds the first ``A``)."""
        return (self.top_left[0] + 1, self.top_left[1])

    def cells(self) -> list[Cell]:
        r, c = self.top_left
        return [(r + i, c + j) for i in range(3) for j in range(self.width)]


@dataclass(frozen=True)
class StrandsGadgetLayout:
    variables: dict[str, VariableLayout]
    clauses: tuple[tuple[Cell, Cell], ...]  # (near C, far C)
    edges: dict[tuple[int, str], tuple[Cell, ...]]  # starts at the gadget E, ends at the F next to a C


def gadget_rows(pattern: tuple[str, ...]) -> list[list[str]]:
    """The three rows of a variable gadget; ``pattern[j]`` is 'up' or 'down'."""
    k = len(pattern)
    width = 3 * k + 3
    top, mid, bot = [BLANK] * width, [BLANK] * width, [BLANK] * width
    mid[0], mid[1], mid[-1] = "A", "*", "A"
    for j, way in enumerate(pattern):
        x = 2 + 3 * j
        mid[x], mid[x + 1], mid[x + 2] = "#", "B", "*"
        (top if way == "up" else bot)[x + 1] = "E"
    return [top, mid, bot]


@lru_cache(maxsize=None)
def gadget_isolation_counts(pattern: tuple[str, ...], allow_diagonal: bool) -> dict[frozenset, int]:
    """Exact covers of the lone gadget minus each subset of its E cells."""
    rows = gadget_rows(pattern)
    inst = make_strands(rows, SAT_DICTIONARY, SAT_ALPHABET)
    es = [(r, c) for r in (0, 2) for c in range(len(rows[0])) if rows[r][c] == "E"]
    counts = {}
    for size in range(len(es) + 1):
        for removed in combinations(es, size):
            keep = [c for c in inst.cells() if c not in removed]
            n = 0
            for _ in iter_covers(inst, allow_diagonal, keep):
                n += 1
                if n > 2:
                    break
            counts[frozenset(removed)] = n
    return counts


def check_gadget_isolation(pattern: tuple[str, ...]) -> None:
    """Raise unless the gadget has exactly the two intended coverings."""
    for diag in (True, False):
        counts = gadget_isolation_counts(pattern, diag)
        everything = max(counts, key=len)
        for removed, n in counts.items():
            # a variable in no clause has no E cells: both modes cover it whole
            want = (removed == frozenset()) + (removed == everything)
            if n != want:
                raise AssertionError(
                    f"gadget {pattern}: {n} covers without E cells {sorted(removed)} "
                    f"(diagonal={diag}), expected {want}"
                )


def reduce_planar_1in3_strands(inst: OneInThreeInstance, check: bool = True) -> tuple[StrandsInstance, StrandsGadgetLayout]:
    verdict = validate_embedding(inst)
    if not verdict:
        raise InvalidInstance("; ".join(verdict.violations))

    above = [inst.levels[i] for i in range(len(inst.clauses)) if inst.sides[i] == ABOVE]
    below = [inst.levels[i] for i in range(len(inst.clauses)) if inst.sides[i] != ABOVE]
    top = 4 * max(above) + 1 if above else 0
    height = top + 3 + (4 * max(below) + 1 if below else 0)

    grid: dict[Cell, str] = {}
    variables: dict[str, VariableLayout] = {}
    e_of: dict[tuple[int, str], Cell] = {}
    col = 0
    for v in inst.variables:
        legs = inst.incidences(v)
        pattern = tuple("up" if inst.sides[ci] == ABOVE else "down" for _s, ci in legs)
        rows = gadget_rows(pattern)
        for i, row in enumerate(rows):
            for j, sym in enumerate(row):
                if sym != BLANK:
                    grid[top + i, col + j] = sym
        es = []
        for j, (_slot, ci) in enumerate(legs):
            cell = (top if pattern[j] == "up" else top + 2, col + 3 + 3 * j)
            e_of[ci, v] = cell
            es.append(cell)
        variables[v] = VariableLayout((top, col), len(legs), tuple(es))
        if check:
            check_gadget_isolation(pattern)
        col += len(rows[0]) + 1
    width = col - 1

    clauses = []
    edges: dict[tuple[int, str], tuple[Cell, ...]] = {}
    for ci, clause in enumerate(inst.clauses):
        sign = -1 if inst.sides[ci] == ABOVE else 1
        ordered = sorted(clause, key=lambda v: e_of[ci, v][1])
        mid = ordered[1]
        er, X = e_of[ci, mid]
        near = (er + sign * 4 * inst.levels[ci], X)
        far = (near[0] + sign, X)
        clauses.append((near, far))
        grid[near] = grid[far] = "C"
        for v in clause:
            r0, x = e_of[ci, v]
            if v == mid:
                path = [(r0 + sign * t, x) for t in range(abs(near[0] - r0))]
            else:
                dist = abs(near[0] - r0) + abs(X - x)
                row = near[0] if dist % 2 == 0 else far[0]
                end = X - 1 if x < X else X + 1
                step = 1 if end > x else -1
                path = [(r0 + sign * t, x) for t in range(abs(row - r0) + 1)]
                path += [(row, c) for c in range(x + step, end + step, step)]
            if len(path) % 2:
                raise AssertionError(f"edge {ci}/{v} has odd length")
            for t, cell in enumerate(path):
                if t and cell in grid:
                    raise AssertionError(f"edge {ci}/{v} runs into {cell}")
                grid[cell] = "E" if t % 2 == 0 else "F"
            edges[ci, v] = tuple(path)

    layout = StrandsGadgetLayout(variables, tuple(clauses), edges)
    rows = [[grid.get((r, c), BLANK) for c in range(width)] for r in range(height)]
    out = make_strands(rows, SAT_DICTIONARY, SAT_ALPHABET)
    if check:
        _audit_contacts(layout, out)
    return out, layout


def _audit_contacts(layout: StrandsGadgetLayout, inst: StrandsInstance) -> None:
    """Distinct gadgets may touch only at E->first F, last F->C and F-F near a clause."""
    owner: dict[Cell, tuple] = {}
    for v, g in layout.variables.items():
        for cell in g.cells():
            if inst[cell] != BLANK:
                owner[cell] = ("var", v)
    for ci, cs in enumerate(layout.clauses):
        for cell in cs:
            owner[cell] = ("clause", ci)
    for key, path in layout.edges.items():
        for cell in path[1:]:
            owner[cell] = ("edge", key)
    for (r, c), who in owner.items():
        for dr, dc in ((0, 1), (1, -1), (1, 0), (1, 1)):
            nb = (r + dr, c + dc)
            other = owner.get(nb)
            if other is None or other == who:
                continue
            a, b = inst[r, c], inst[nb]
            pair = {who[0], other[0]}
            if pair == {"var", "edge"}:
                edge = who if who[0] == "edge" else other
                var_cell = (r, c) if who[0] == "var" else nb
                edge_cell = nb if who[0] == "var" else (r, c)
                path = layout.edges[edge[1]]
                if var_cell == path[0] and edge_cell == path[1]:
                    continue
            elif pair == {"edge", "clause"}:
                edge = who if who[0] == "edge" else other
                edge_cell = (r, c) if who[0] == "edge" else nb
                if edge_cell == layout.edges[edge[1]][-1]:
                    continue
            elif pair == {"edge"} and a == b == "F":
                continue
            raise AssertionError(f"unintended contact {who}@{(r, c)} {a} / {other}@{nb} {b}")


def pullback_1in3_strands(layout: StrandsGadgetLayout, inst: StrandsInstance, partition,
                          allow_diagonal: bool = True) -> dict[str, bool]:
    """True iff the word ``A`` covers the gadget's first column, false for ``A*``."""
    try:
        verdict = verify_partition(inst, partition, allow_diagonal)
    except (IndexError, ValueError) as exc:
        raise PullbackError(str(exc)) from None
    if not verdict:
        raise PullbackError("; ".join(verdict.violations))
    word_at = {}
    for widx, path in partition:
        for cell in path:
            word_at[tuple(cell)] = inst.dictionary[widx]
    out = {}
    for v, g in layout.variables.items():
        w = word_at[g.anchor]
        if w == ("A",):
            out[v] = True
        elif w == ("A", "*"):
            out[v] = False
        else:
            raise PullbackError(f"variable {v}: first column covered by {''.join(w)!r}")
    return out


# --------------------------------------------------------------------------
# block expansion


@dataclass(frozen=True)
class BlockExpansionOutput:
    instance: StrandsInstance
    source: StrandsInstance


def block_color(i: int, j: int) -> str:
    """Colour of the source cell in row ``i``, column ``j`` (1-based)."""
    if i % 2 == 0:
        return "1" if j % 2 == 0 else "2"
    return "3" if j % 2 == 0 else "4"


def block_word(color: str, sym: str) -> tuple[str, ...]:
    return (color,) * 6 + (sym,) + (color,) * 2


def color_strings(k: int):
    for first in COLORS:
        yield from _extend_colors([first], k)


def _extend_colors(prefix: list[str], k: int):
    if len(prefix) == k:
        yield tuple(prefix)
        return
    for nxt in SUCCESSORS[prefix[-1]]:
        yield from _extend_colors(prefix + [nxt], k)


def expand_blocks(inst: StrandsInstance) -> BlockExpansionOutput:
    """Replace each cell by a 3 x 3 block: the symbol in the centre, the rim coloured.

    The result is equivalent to the source only when the source is either
    unsolvable or solvable without diagonal moves.
    """
    clash = set(COLORS) & set(inst.alphabet)
    if clash:
        raise InvalidStrands(f"alphabet already uses colour symbols {sorted(clash)}")
    rows = []
    for i in range(inst.rows):
        band = [[], [], []]
        for j in range(inst.cols):
            color = block_color(i + 1, j + 1)
            for di in range(3):
                for dj in range(3):
                    band[di].append(inst.grid[i][j] if (di, dj) == (1, 1) else color)
        rows += band
    words = []
    for w in inst.dictionary:
        for g in color_strings(len(w)):
            words.append(tuple(s for color, sym in zip(g, w) for s in block_word(color, sym)))
    alphabet = tuple(inst.alphabet) + COLORS
    return BlockExpansionOutput(make_strands(rows, words, alphabet), inst)


# --------------------------------------------------------------------------
# Flow Free


@dataclass(frozen=True)
class FlowFreeInstance:
    height: int
    width: int
    pairs: tuple[tuple[str, Cell, Cell], ...]  # (colour, terminal a, terminal b)

    def __post_init__(self):
        if self.height < 1 or self.width < 1:
            raise InvalidInstance("grid must be at least 1 x 1")
        seen = set()
        colors = set()
        for color, a, b in self.pairs:
            if color in ("B", "W"):
                raise InvalidInstance("colours B and W are reserved for the checkerboard")
            if color in colors:
                raise InvalidInstance(f"colour {color!r} listed twice")
            colors.add(color)
            for cell in (a, b):
                if not (0 <= cell[0] < self.height and 0 <= cell[1] < self.width):
                    raise InvalidInstance(f"terminal {cell} is outside the grid")
                if cell in seen:
                    raise InvalidInstance(f"terminals overlap at {cell}")
                seen.add(cell)


def _checker(cell: Cell) -> str:
    return "W" if (cell[0] + cell[1]) % 2 == 0 else "B"


def reduce_flowfree(ff: FlowFreeInstance) -> StrandsInstance:
    grid = [[_checker((r, c)) for c in range(ff.width)] for r in range(ff.height)]
    words = []
    top = ff.height * ff.width
    for color, a, b in ff.pairs:
        grid[a[0]][a[1]] = color
        grid[b[0]][b[1]] = color
        ca, cb = _checker(a), _checker(b)
        for l in range(top + 1):
            if ca == cb == "W":
                mid = ("B", "W") * l + ("B",)
            elif ca == cb == "B":
                mid = ("W", "B") * l + ("W",)
            else:
                mid = ("B", "W") * l
            words.append((color,) + mid + (color,))
    alphabet = tuple(color for color, _a, _b in ff.pairs) + ("B", "W")
    return make_strands(grid, words, alphabet)


def verify_flow(ff: FlowFreeInstance, paths: dict) -> bool:
    """Each colour joins its terminals by an orthogonal path; paths tile the grid."""
    if set(paths) != {c for c, _a, _b in ff.pairs}:
        return False
    seen: set[Cell] = set()
    for color, a, b in ff.pairs:
        path = [tuple(c) for c in paths[color]]
        if not path or {path[0], path[-1]} != {a, b} or len(path) < 2:
            return False
        for p, q in zip(path, path[1:]):
            if abs(p[0] - q[0]) + abs(p[1] - q[1]) != 1:
                return False
        for cell in path:
            if cell in seen or not (0 <= cell[0] < ff.height and 0 <= cell[1] < ff.width):
                return False
            seen.add(cell)
    return len(seen) == ff.height * ff.width


def solve_flowfree(ff: FlowFreeInstance, budget: int | None = None) -> dict[str, tuple[Cell, ...]] | None:
    """Backtracking over one colour at a time; paths must fill the whole grid."""
    counter = _Counter(budget, "flow free search")
    terminals = {cell for _c, a, b in ff.pairs for cell in (a, b)}
    used: set[Cell] = set(terminals)
    paths: dict[str, tuple[Cell, ...]] = {}

    def extend(i: int, path: list[Cell]):
        counter.tick()
        if i == len(ff.pairs):
            return len(used) == ff.height * ff.width
        color, _a, goal = ff.pairs[i]
        r, c = path[-1]
        for nxt in ((r - 1, c), (r, c + 1), (r + 1, c), (r, c - 1)):
            if nxt == goal:
                paths[color] = tuple(path + [goal])
                if i + 1 == len(ff.pairs):
                    if len(used) == ff.height * ff.width:
                        return True
                elif extend(i + 1, [ff.pairs[i + 1][1]]):
                    return True
                del paths[color]
            elif 0 <= nxt[0] < ff.height and 0 <= nxt[1] < ff.width and nxt not in used:
                used.add(nxt)
                if extend(i, path + [nxt]):
                    return True
                used.discard(nxt)
        return False

    if not ff.pairs:
        return {} if ff.height * ff.width == 0 else None
    return dict(paths) if extend(0, [ff.pairs[0][1]]) else None


def pullback_flowfree(ff: FlowFreeInstance, inst: StrandsInstance, partition,
                      allow_diagonal: bool = False) -> dict[str, tuple[Cell, ...]]:
    """Each colour's path is the cell path of the word that starts on its terminal."""
    verdict = verify_partition(inst, partition, allow_diagonal)
    if not verdict:
        raise PullbackError("; ".join(verdict.violations))
    colors = {c for c, _a, _b in ff.pairs}
    out = {}
    for widx, path in partition:
        word = inst.dictionary[widx]
        if word[0] in colors:
            out[word[0]] = tuple(tuple(c) for c in path)
    return out
