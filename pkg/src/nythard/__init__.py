"""Solvers, verifiers and hardness reductions for Letter Boxed, Pips, Strands and Tiles."""

from ._common import BudgetExhausted, Verdict, default_budget
from .letterboxed import (
    LetterBoxedPuzzle,
    LetterBoxedSolution,
    make_puzzle,
    min_words_dp,
    solve_dp,
    solve_search,
    verify_solution,
)
from .pips import PipsPuzzle, make_pips, solve_pips, verify_pips
from .strands import StrandsInstance, make_strands, solve_strands, verify_partition
from .tiles import TilesInstance, make_tiles, solve_greedy, verify_moves

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "LetterBoxedPuzzle",
    "LetterBoxedSolution",
    "PipsPuzzle",
    "StrandsInstance",
    "TilesInstance",
    "Verdict",
    "default_budget",
    "make_pips",
    "make_puzzle",
    "make_strands",
    "make_tiles",
    "min_words_dp",
    "solve_dp",
    "solve_greedy",
    "solve_pips",
    "solve_search",
    "solve_strands",
    "verify_moves",
    "verify_partition",
    "verify_pips",
    "verify_solution",
]
