"""Reductions into Pips.

Planar positive 1-in-3-SAT becomes a board that uses only all-zero and
all-one dominoes with ``eq`` and ``sum`` constraints. Subset sum becomes a
2 x n board with a single ``sum`` constraint.

Gadget geometry (rows grow downward; clauses above the variable line sit
at negative rows):

* a variable with ``k`` clause legs has a base of ``max(2, 2k)`` cells on
  row 0 and its legs leave the base at even offsets 0, 2, ..., 2k - 2;
* a leg to a clause at nesting level ``L`` is a vertical branch of ``4L``
  cells whose last cell (the tip) lies on the clause's body row;
* the clause body fills that row between the outer tips; a gap of odd
  length gets one bump cell on the far side, next to the left tip;
* one straight cleanup line, as long as all variable gadgets together,
  holds the dominoes nobody else needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .pips import Cell, Constraint, PipsPuzzle, eq, make_pips, sum_eq, tiling_shapes
from .sources import (
    ABOVE,
    InvalidInstance,
    OneInThreeInstance,
    SubsetSumInstance,
    validate_embedding,
)


class PullbackError(ValueError):
    pass


@dataclass(frozen=True)
class VariableGadget:
    base: tuple[Cell, ...]
    # clause index -> branch cells from the base outward; the last one is the tip
    branches: dict[int, tuple[Cell, ...]]

    @property
    def cells(self) -> tuple[Cell, ...]:
        return self.base + tuple(c for b in self.branches.values() for c in b)

    @property
    def tips(self) -> tuple[Cell, ...]:
        return tuple(b[-1] for b in self.branches.values())


@dataclass(frozen=True)
class ClauseGadget:
    row: int
    tip_columns: tuple[int, int, int]
    body: tuple[Cell, ...]
    bumps: tuple[Cell, ...]

    @property
    def cells(self) -> tuple[Cell, ...]:
        return self.body + self.bumps


@dataclass(frozen=True)
class PipsGadgetLayout:
    variables: dict[str, VariableGadget]
    clauses: tuple[ClauseGadget, ...]
    cleanup: tuple[Cell, ...]
    connections: tuple[tuple[Cell, ...], ...] = ()
    owner: dict[Cell, tuple] = field(default_factory=dict, compare=False)

    def variable_area(self) -> int:
        return sum(len(g.cells) for g in self.variables.values())

    def clause_area(self) -> int:
        return sum(len(g.cells) for g in self.clauses)


def reduce_planar_1in3_pips(
    inst: OneInThreeInstance, connected: bool = False, check: bool = True
) -> tuple[PipsPuzzle, PipsGadgetLayout]:
    """Board whose solvability matches 1-in-3 satisfiability of ``inst``.

    With ``connected`` the variable bases and the cleanup line are chained
    on row 0 by two-cell connection segments constrained to sum to 0. With
    ``check`` the gadget tilings are re-verified by enumeration.
    """
    verdict = validate_embedding(inst)
    if not verdict:
        raise InvalidInstance("; ".join(verdict.violations))

    gap = 2 if connected else 1
    leg_col: dict[tuple[int, str], int] = {}
    bases: dict[str, list[Cell]] = {}
    connections: list[tuple[Cell, ...]] = []
    col = 0
    for v in inst.variables:
        legs = inst.incidences(v)
        width = max(2, 2 * len(legs))
        bases[v] = [(0, col + i) for i in range(width)]
        for j, (_slot, ci) in enumerate(legs):
            leg_col[ci, v] = col + 2 * j
        col += width
        if connected:
            connections.append(((0, col), (0, col + 1)))
        col += gap

    branches: dict[str, dict[int, tuple[Cell, ...]]] = {v: {} for v in inst.variables}
    clauses = []
    for ci, clause in enumerate(inst.clauses):
        sign = -1 if inst.sides[ci] == ABOVE else 1
        depth = 4 * inst.levels[ci]
        row = sign * depth
        for v in clause:
            x = leg_col[ci, v]
            branches[v][ci] = tuple((sign * r, x) for r in range(1, depth + 1))
        a, b, c = sorted(leg_col[ci, v] for v in clause)
        body, bumps = [], []
        for lo, hi in ((a, b), (b, c)):
            body += [(row, x) for x in range(lo + 1, hi)]
            if (hi - lo - 1) % 2:
                bumps.append((row + sign, lo + 1))
        clauses.append(ClauseGadget(row, (a, b, c), tuple(body), tuple(bumps)))

    variables = {
        v: VariableGadget(tuple(bases[v]), dict(sorted(branches[v].items())))
        for v in inst.variables
    }
    var_area = sum(len(g.cells) for g in variables.values())
    clause_area = sum(len(g.cells) for g in clauses)

    occupied = [c for g in variables.values() for c in g.cells]
    occupied += [c for g in clauses for c in g.cells]
    occupied += [c for seg in connections for c in seg]
    bottom = max(r for r, _c in occupied) + 2
    if connected:
        # the last connection turns down column x to reach a bottom cleanup row
        x = col - 1
        half = max(1, bottom // 2)
        for i in range(1, half + 1):
            seg = ((2 * i - 1, x), (2 * i, x))
            connections.append(seg)
            occupied += seg
        bottom = 2 * half + 1
        cleanup = tuple((bottom, x + i) for i in range(var_area))
    else:
        cleanup = tuple((bottom, i) for i in range(var_area))

    owner: dict[Cell, tuple] = {}
    for v, g in variables.items():
        for cell in g.cells:
            owner[cell] = ("variable", v)
    for ci, g in enumerate(clauses):
        for cell in g.cells:
            owner[cell] = ("clause", ci)
    for i, seg in enumerate(connections):
        for cell in seg:
            owner[cell] = ("connection", i)
    for cell in cleanup:
        owner[cell] = ("cleanup",)
    layout = PipsGadgetLayout(variables, tuple(clauses), cleanup, tuple(connections), owner)
    total = len(occupied) + len(cleanup)
    if len(owner) != total:
        raise AssertionError("gadget cells overlap")

    constraints: list[Constraint] = []
    for g in variables.values():
        tips = set(g.tips)
        constraints.append(eq(c for c in g.cells if c not in tips))
    for ci, g in enumerate(clauses):
        tips = [variables[v].branches[ci][-1] for v in inst.clauses[ci]]
        constraints.append(sum_eq(list(g.cells) + tips, 1))
    for seg in connections:
        constraints.append(sum_eq(seg, 0))

    zeros = (clause_area + var_area) // 2 + len(connections)
    ones = var_area // 2
    puzzle = make_pips(owner, [(0, 0)] * zeros + [(1, 1)] * ones, constraints)
    if check:
        check_layout(inst, layout)
    return puzzle, layout


def check_layout(inst: OneInThreeInstance, layout: PipsGadgetLayout) -> None:
    """Raise ``AssertionError`` unless the gadgets behave as designed.

    Checks that each variable gadget and each clause body tile in exactly
    one way (and so does the whole board), that every base and branch has
    even length, and that cells of different gadgets touch only where a tip
    meets its clause body or a connection meets its neighbours.
    """
    for v, g in layout.variables.items():
        if len(g.base) % 2 or any(len(b) % 2 for b in g.branches.values()):
            raise AssertionError(f"variable {v}: odd base or branch")
        if len(tiling_shapes(g.cells)) != 1:
            raise AssertionError(f"variable {v}: gadget does not tile uniquely")
    for ci, g in enumerate(layout.clauses):
        if len(tiling_shapes(g.cells)) != 1:
            raise AssertionError(f"clause {ci}: body does not tile uniquely")

    if len(tiling_shapes(layout.owner)) != 1:
        raise AssertionError("the board does not tile in exactly one way")

    allowed = set()
    for v, g in layout.variables.items():
        for ci, br in g.branches.items():
            allowed.add((("variable", v), ("clause", ci)))
    for i in range(len(layout.connections)):
        for v in layout.variables:
            allowed.add((("variable", v), ("connection", i)))
        allowed.add((("cleanup",), ("connection", i)))
        for j in range(len(layout.connections)):
            allowed.add((("connection", i), ("connection", j)))
    owner = layout.owner
    for (r, c), who in owner.items():
        for nb in ((r + 1, c), (r, c + 1)):
            other = owner.get(nb)
            if other is None or other == who:
                continue
            if (who, other) not in allowed and (other, who) not in allowed:
                raise AssertionError(f"cells {(r, c)} and {nb} join {who} to {other}")
            if "clause" in (who[0], other[0]) and "variable" in (who[0], other[0]):
                var_cell = (r, c) if who[0] == "variable" else nb
                tips = layout.variables[(who if who[0] == "variable" else other)[1]].tips
                if var_cell not in tips:
                    raise AssertionError(f"clause touches variable away from a tip at {var_cell}")


def pullback_1in3_pips(layout: PipsGadgetLayout, puzzle: PipsPuzzle, placement) -> dict[str, bool]:
    """Variable is true iff its gadget carries ones."""
    from .pips import verify_pips

    try:
        verdict = verify_pips(puzzle, placement)
    except (IndexError, KeyError, ValueError) as exc:
        raise PullbackError(str(exc)) from None
    if not verdict:
        raise PullbackError("; ".join(verdict.violations))
    value = {}
    for _i, a, b, va, vb in placement:
        value[tuple(a)] = va
        value[tuple(b)] = vb
    out = {}
    for v, g in layout.variables.items():
        seen = {value[c] for c in g.cells}
        if len(seen) != 1 or seen - {0, 1}:
            raise PullbackError(f"variable {v} gadget carries values {sorted(seen)}")
        out[v] = seen.pop() == 1
    return out


def reduce_subset_sum(inst: SubsetSumInstance) -> PipsPuzzle:
    """2 x n board, one ``(x, 0)`` domino per item, bottom row must sum to the target."""
    n = len(inst.items)
    if n == 0:
        raise InvalidInstance("subset sum reduction needs at least one item")
    cells = [(r, c) for r in range(2) for c in range(n)]
    return make_pips(
        cells,
        [(x, 0) for x in inst.items],
        [sum_eq([(1, c) for c in range(n)], inst.target)],
    )


def pullback_subset_sum(inst: SubsetSumInstance, puzzle: PipsPuzzle, placement) -> tuple[int, ...]:
    """Items whose non-zero half lies on the constrained bottom row."""
    from .pips import verify_pips

    verdict = verify_pips(puzzle, placement)
    if not verdict:
        raise PullbackError("; ".join(verdict.violations))
    chosen = []
    for idx, a, b, va, vb in placement:
        for cell, v in ((a, va), (b, vb)):
            if tuple(cell)[0] == 1 and v == inst.items[idx] and v:
                chosen.append(idx)
    return tuple(sorted(chosen))
