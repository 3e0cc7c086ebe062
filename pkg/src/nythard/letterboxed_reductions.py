"""Reductions into Letter Boxed and the matching solution pullbacks.

* positive NAE-3SAT  ->  four sides, a single dictionary word, ``k = 1``
* 3D matching        ->  four sides, every word of length five, ``k = n``
* S sides            ->  S + 1 sides (side lifting)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .letterboxed import (
    LetterBoxedPuzzle,
    LetterBoxedSolution,
    make_puzzle,
    verify_solution,
)
from .sources import InvalidInstance, Nae3SatInstance, ThreeDmInstance

TAU = "__tau"
HASH = "__hash"
START = "__s"
END = "__e"
RESERVED = frozenset({TAU, HASH, START, END})


def star(v: str) -> str:
    return f"__star_{v}"


def clause_symbol(i: int) -> str:
    return f"__c{i + 1}"


class PullbackError(ValueError):
    """The solution handed to a pullback does not solve the reduced puzzle."""


@dataclass(frozen=True)
class NaeReductionOutput:
    puzzle: LetterBoxedPuzzle
    k: int
    variable_order: tuple[str, ...]
    occurrence_count: dict[str, int]
    source: Nae3SatInstance


@dataclass(frozen=True)
class ThreeDmReductionOutput:
    puzzle: LetterBoxedPuzzle
    k: int
    triple_of_word: dict[int, tuple[int, int, int]]
    source: ThreeDmInstance


def _x(i: int) -> str:
    return f"x{i + 1}"


def _y(i: int) -> str:
    return f"y{i + 1}"


def _z(i: int) -> str:
    return f"z{i + 1}"


# --------------------------------------------------------------------------
# NAE-3SAT


def nae_word(inst: Nae3SatInstance) -> tuple[str, ...]:
    """The single dictionary word before padding, variables in input order."""
    eta = Counter(v for c in inst.clauses for v in c)
    word = [HASH]
    for v in inst.variables:
        word.append(v)
        for _ in range(eta[v] - 1):
            word += [star(v), v]
        word.append(HASH)
    for v in inst.variables:
        for _ in range(eta[v] - 1):
            word += [star(v), HASH]
    for ci, (a, b, c) in enumerate(inst.clauses):
        cs = clause_symbol(ci)
        word += [a, cs, HASH, b, cs, HASH, c, cs, HASH, cs, HASH]
    return tuple(word)


def reduce_nae3sat(inst: Nae3SatInstance) -> NaeReductionOutput:
    if not inst.clauses:
        raise InvalidInstance("the construction needs at least one clause")
    clash = RESERVED.intersection(inst.variables) | {
        v for v in inst.variables if v.startswith("__")
    }
    if clash:
        raise InvalidInstance(f"variable names {sorted(clash)} collide with reserved symbols")
    eta = Counter(v for c in inst.clauses for v in c)
    unused = [v for v in inst.variables if eta[v] == 0]
    if unused:
        raise InvalidInstance(f"variables {unused} occur in no clause")

    middle: list[str] = []
    for v in inst.variables:
        middle += [v] * eta[v] + [star(v)] * (eta[v] - 1)
    for ci in range(len(inst.clauses)):
        middle += [clause_symbol(ci)] * 2
    width = len(middle)
    sides = [
        [HASH] + [TAU] * (width - 1),
        middle,
        list(middle),
        [TAU] * width,
    ]
    sigma = nae_word(inst) + (TAU,) * (2 * width - 1)
    alphabet = (
        list(inst.variables)
        + [clause_symbol(i) for i in range(len(inst.clauses))]
        + [HASH]
        + [star(v) for v in inst.variables if eta[v] > 1]
        + [TAU]
    )
    puzzle = make_puzzle(sides, [sigma], alphabet)
    return NaeReductionOutput(
        puzzle=puzzle,
        k=1,
        variable_order=tuple(inst.variables),
        occurrence_count={v: eta[v] for v in inst.variables},
        source=inst,
    )


def pullback_nae(out: NaeReductionOutput, sol: LetterBoxedSolution) -> dict[str, bool]:
    """Truth value of each variable from the side of its first occurrence.

    Side 2 means true and side 3 means false.
    """
    _require_valid(out.puzzle, sol, out.k)
    sigma = out.puzzle.dictionary[sol.words[0]]
    assignment: dict[str, bool] = {}
    for sym, side in zip(sigma, sol.side_trace):
        if sym in out.occurrence_count and sym not in assignment:
            if side not in (2, 3):
                raise PullbackError(f"variable {sym!r} first taken from side {side}")
            assignment[sym] = side == 2
    return assignment


# --------------------------------------------------------------------------
# 3D matching


def reduce_3dm(inst: ThreeDmInstance) -> ThreeDmReductionOutput:
    """One word ``# x y z #`` per triple; an empty triple set gives an empty dictionary."""
    n = inst.n
    words = [(HASH, _x(x), _y(y), _z(z), HASH) for x, y, z in inst.triples]
    sides = [
        [HASH] * n,
        [_x(i) for i in range(n)],
        [_y(i) for i in range(n)],
        [_z(i) for i in range(n)],
    ]
    alphabet = sides[1] + sides[2] + sides[3] + [HASH]
    puzzle = make_puzzle(sides, words, alphabet)
    return ThreeDmReductionOutput(
        puzzle=puzzle,
        k=n,
        triple_of_word={i: t for i, t in enumerate(inst.triples)},
        source=inst,
    )


def pullback_3dm(out: ThreeDmReductionOutput, sol: LetterBoxedSolution) -> frozenset[tuple[int, int, int]]:
    _require_valid(out.puzzle, sol, out.k)
    chosen = [out.triple_of_word[i] for i in sol.words]
    if len(set(chosen)) != len(chosen):
        raise PullbackError("a verified solution repeated a triple")
    return frozenset(chosen)


# --------------------------------------------------------------------------
# side lifting


def lift_sides(puzzle: LetterBoxedPuzzle, k: int) -> tuple[LetterBoxedPuzzle, int]:
    """Add one side holding ``s``, ``e`` and ``n - 1`` copies of a fresh ``#``.

    Returns the lifted puzzle and the lifted word budget
    ``k + S + 1 + 2 (n - 2)``.
    """
    n, S = puzzle.side_size, puzzle.num_sides
    if n < 2:
        raise InvalidInstance("side lifting needs at least two symbols per side")
    if k < 1:
        raise ValueError("k must be positive")
    clash = RESERVED.intersection(puzzle.alphabet)
    if clash:
        raise InvalidInstance(f"alphabet already uses reserved symbols {sorted(clash)}")
    words = list(puzzle.dictionary)
    words += [(START,) + w for w in puzzle.dictionary]
    words += [w + (END,) for w in puzzle.dictionary]
    words += [(HASH, HASH), (END, HASH)]
    sides = [list(side) + [HASH] for side in puzzle.sides]
    sides.append([START, END] + [HASH] * (n - 1))
    lifted = make_puzzle(sides, words, list(puzzle.alphabet) + [START, END, HASH])
    return lifted, k + S + 1 + 2 * (n - 2)


def _require_valid(puzzle: LetterBoxedPuzzle, sol: LetterBoxedSolution, k: int) -> None:
    try:
        verdict = verify_solution(puzzle, sol, k)
    except (ValueError, IndexError) as exc:
        raise PullbackError(str(exc)) from None
    if not verdict:
        raise PullbackError("; ".join(verdict.violations))
