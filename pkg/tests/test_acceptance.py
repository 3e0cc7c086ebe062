"""Acceptance criteria 1-13.

Each test carries ``@pytest.mark.criterion(n, title)``; the conftest prints
one PASS/FAIL line per criterion after the run. Instance families are built
once by cached builders so criteria 12 and 13 can revisit them.

Run on its own with ``pytest tests/test_acceptance.py`` or
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from functools import cache
from itertools import combinations, combinations_with_replacement, product

import pytest

from nythard import formats as F
from nythard.letterboxed import (
    brute_force_min_words,
    min_words_dp,
    random_puzzle,
    solve_dp,
    solve_search,
)
from nythard.letterboxed_reductions import (
    lift_sides,
    pullback_3dm,
    pullback_nae,
    reduce_3dm,
    reduce_nae3sat,
)
from nythard.pips import solve_pips
from nythard.pips_reductions import pullback_1in3_pips, reduce_planar_1in3_pips, reduce_subset_sum
from nythard.sources import (
    ABOVE,
    Nae3SatInstance,
    SubsetSumInstance,
    ThreeDmInstance,
    embed,
    generate_random,
    is_1in3_satisfying,
    is_nae_satisfying,
    is_perfect_matching,
    oracle_1in3,
    oracle_3dm,
    oracle_nae,
    oracle_subset_sum,
)
from nythard.strands import random_strands, solve_strands
from nythard.strands_reductions import (
    SAT_ALPHABET,
    SAT_DICTIONARY,
    FlowFreeInstance,
    check_gadget_isolation,
    expand_blocks,
    pullback_1in3_strands,
    reduce_flowfree,
    reduce_planar_1in3_strands,
)
from nythard.tiles import (
    all_instances,
    brute_force_no_teleport,
    brute_force_solvable,
    is_solvable,
    no_teleport_solvable,
    random_tiles,
    sharing_number,
    solve_greedy,
    verify_moves,
)

pytestmark = pytest.mark.acceptance

# pinned tolerances and sizes
C1_PUZZLES = 200
C1_RUNTIME_LIMIT_S = 60.0
C2_SEEDED = 20
C3_TRIPLE_SETS = 256
C3_WITH_MATCHING = 256 - 3**4  # 4 disjoint matching pairs; a set avoids all of them in 3^4 ways
C4_PUZZLES = 50
C4_BUDGETS = (1, 2, 3)
C6_MAX_SIZE, C6_MAX_VALUE, C6_MAX_TARGET = 5, 10, 50
C6_SAMPLE_CAP = 10_000
C7_SEEDED = 10
C8_EACH = 30
C10_SEEDED = 500


def criterion(n: int, title: str):
    return pytest.mark.criterion(n, title)


# --------------------------------------------------------------------------
# C1


@cache
def c1_cases():
    """(puzzle, dp minimum, brute-force minimum, DP solution) for 200 seeds."""
    t0 = time.perf_counter()
    out = []
    for seed in range(C1_PUZZLES):
        p = random_puzzle(seed, side_size=1 + seed % 2)
        out.append((p, min_words_dp(p), brute_force_min_words(p), solve_dp(p)))
    return out, time.perf_counter() - t0


@criterion(1, "Letter Boxed DP matches brute force on 200 seeded puzzles in < 60 s")
def test_c1_dp_matches_brute_force():
    cases, elapsed = c1_cases()
    assert len(cases) == C1_PUZZLES
    for p, dp, bf, sol in cases:
        assert p.num_sides == 4 and p.side_size <= 2 and len(p.alphabet) <= 3
        assert len(p.dictionary) <= 5 and p.max_word_length <= 4
        assert dp == bf
        assert (sol is None) == (dp is None)
    assert any(dp is None for _p, dp, _b, _s in cases) and any(dp for _p, dp, _b, _s in cases)
    assert elapsed < C1_RUNTIME_LIMIT_S


# --------------------------------------------------------------------------
# C2


@cache
def c2_cases():
    formulas = [
        Nae3SatInstance(("a", "b", "c"), (("a", "b", "c"),)),
        Nae3SatInstance(("a", "b", "c"), (("a", "b", "c"), ("a", "b", "c"))),
    ]
    for seed in range(C2_SEEDED):
        formulas.append(generate_random("nae3sat", seed, num_vars=4, num_clauses=3))
    out = []
    for inst in formulas:
        red = reduce_nae3sat(inst)
        out.append((inst, red, solve_search(red.puzzle, 1), oracle_nae(inst)))
    return out


@criterion(2, "NAE-3SAT reduction round-trip")
def test_c2_nae_round_trip():
    cases = c2_cases()
    assert len(cases) == 2 + C2_SEEDED
    for inst, red, sol, oracle in cases[2:]:
        assert len(inst.variables) == 4 and len(inst.clauses) == 3
    for inst, red, sol, oracle in cases:
        assert len(red.puzzle.dictionary) == 1 and red.k == 1
        assert len({len(s) for s in red.puzzle.sides}) == 1
        assert (sol is not None) == (oracle is not None)
        if sol is not None:
            assert is_nae_satisfying(inst, pullback_nae(red, sol))


# --------------------------------------------------------------------------
# C3


@cache
def c3_cases():
    universe = list(product(range(2), repeat=3))
    out = []
    for mask in range(2**len(universe)):
        inst = ThreeDmInstance(2, tuple(t for j, t in enumerate(universe) if mask >> j & 1))
        red = reduce_3dm(inst)
        out.append((inst, red, solve_search(red.puzzle, 2), oracle_3dm(inst)))
    return out


@criterion(3, "3DM reduction round-trip over all 256 triple sets with n = 2")
def test_c3_3dm_round_trip():
    cases = c3_cases()
    assert len(cases) == C3_TRIPLE_SETS
    assert sum(o is not None for *_x, o in cases) == C3_WITH_MATCHING
    for inst, red, sol, oracle in cases:
        assert all(len(w) == 5 for w in red.puzzle.dictionary)
        assert (sol is not None) == (oracle is not None)
        if sol is not None:
            assert is_perfect_matching(inst, pullback_3dm(red, sol))


# --------------------------------------------------------------------------
# C4


@cache
def c4_cases():
    out = []
    for i in range(C4_PUZZLES):
        S = 2 + i % 2
        p = random_puzzle(10_000 + i, num_sides=S, side_size=2, alphabet_size=4)
        for k in C4_BUDGETS:
            lifted, k2 = lift_sides(p, k)
            out.append((p, k, lifted, k2, solve_search(p, k), solve_search(lifted, k2)))
    return out


@criterion(4, "side lifting preserves solvability and has the stated structure")
def test_c4_structure():
    for p, k, lifted, k2, _a, _b in c4_cases():
        n, S = p.side_size, p.num_sides
        assert S in (2, 3) and n == 2
        assert k2 == k + S + 1 + 2 * (n - 2)
        assert len(lifted.dictionary) == 3 * len(p.dictionary) + 2
        assert lifted.max_word_length == p.max_word_length + 1
        assert len(lifted.alphabet) == len(p.alphabet) + 3
        assert lifted.num_sides == S + 1
        assert {len(s) for s in lifted.sides} == {n + 1}


@criterion(4, "side lifting preserves solvability and has the stated structure")
def test_c4_equivalence():
    mismatches = [
        (p.sides, p.dictionary, k)
        for p, k, _l, _k2, a, b in c4_cases()
        if (a is not None) != (b is not None)
    ]
    assert not mismatches, f"{len(mismatches)} of {len(c4_cases())} cases disagree, first {mismatches[0]}"


# --------------------------------------------------------------------------
# C5


def small_formulas(max_clauses: int):
    for m in (3, 4, 5):
        vs = tuple(f"x{i + 1}" for i in range(m))
        for k in range(1, max_clauses + 1):
            for clauses in combinations(list(combinations(vs, 3)), k):
                yield vs, clauses


@cache
def c5_cases():
    out = []
    for vs, clauses in small_formulas(2):
        inst = embed(vs, clauses)
        for connected in (False, True):
            puzzle, layout = reduce_planar_1in3_pips(inst, connected=connected, check=True)
            out.append((inst, connected, puzzle, layout, solve_pips(puzzle), oracle_1in3(inst)))
    return out


@criterion(5, "Pips 1-in-3-SAT reduction round-trip with gadget uniqueness")
def test_c5_pips_1in3_round_trip():
    cases = c5_cases()
    assert cases
    for inst, connected, puzzle, layout, sol, oracle in cases:
        assert set(puzzle.dominoes) <= {(0, 0), (1, 1)}
        assert {c.kind for c in puzzle.constraints} <= {"eq", "sum"}
        clause_regions = [frozenset(g.cells) for g in layout.clauses]
        connection_regions = {frozenset(seg) for seg in layout.connections}
        sums = [c for c in puzzle.constraints if c.kind == "sum"]
        assert len(sums) == len(inst.clauses) + len(layout.connections)
        for c in sums:
            if c.region in connection_regions:
                assert c.n == 0
            else:
                assert c.n == 1 and any(body <= c.region for body in clause_regions)
        assert (sol is not None) == (oracle is not None)
        if sol is not None:
            assert is_1in3_satisfying(inst, pullback_1in3_pips(layout, puzzle, sol))


# --------------------------------------------------------------------------
# C6


@cache
def c6_cases():
    space = [
        (items, target)
        for size in range(1, C6_MAX_SIZE + 1)
        for items in combinations_with_replacement(range(1, C6_MAX_VALUE + 1), size)
        for target in range(C6_MAX_TARGET + 1)
    ]
    if len(space) > C6_SAMPLE_CAP:
        space = random.Random(6).sample(space, C6_SAMPLE_CAP)
    out = []
    for items, target in space:
        inst = SubsetSumInstance(items, target)
        puzzle = reduce_subset_sum(inst)
        out.append((inst, puzzle, solve_pips(puzzle) is not None, oracle_subset_sum(inst) is not None))
    return out


@criterion(6, "Subset-sum reduction round-trip")
def test_c6_subset_sum_round_trip():
    cases = c6_cases()
    assert len(cases) == C6_SAMPLE_CAP
    for inst, puzzle, solved, oracle in cases:
        assert len(puzzle.constraints) == 1 and puzzle.constraints[0].kind == "sum"
        assert solved == oracle
    assert any(o for *_x, o in cases) and not all(o for *_x, o in cases)


# --------------------------------------------------------------------------
# C7


@cache
def c7_cases():
    formulas = [embed(vs, clauses) for vs, clauses in small_formulas(1)]
    for seed in range(C7_SEEDED):
        formulas.append(generate_random("1in3", seed, num_vars=5, num_clauses=2))
    out = []
    for inst in formulas:
        strands, layout = reduce_planar_1in3_strands(inst, check=True)
        sols = {d: solve_strands(strands, d) for d in (True, False)}
        out.append((inst, strands, layout, sols, oracle_1in3(inst)))
    return out


@criterion(7, "Strands 1-in-3-SAT reduction round-trip in both adjacency modes")
def test_c7_strands_1in3_round_trip():
    cases = c7_cases()
    assert sum(len(inst.clauses) == 2 for inst, *_x in cases) == C7_SEEDED
    for inst, strands, layout, sols, oracle in cases:
        assert len(strands.alphabet) == 8 and set(strands.alphabet) == set(SAT_ALPHABET)
        assert len(strands.dictionary) == 7 and set(strands.dictionary) == set(SAT_DICTIONARY)
        for v, g in layout.variables.items():
            k = sum(v in c for c in inst.clauses)
            cells = g.cells()
            assert len({r for r, _ in cells}) == 3 and len({c for _, c in cells}) == 3 * k + 3
            pattern = tuple("up" if inst.sides[ci] == ABOVE else "down" for _s, ci in inst.incidences(v))
            check_gadget_isolation(pattern)
        for diagonal, sol in sols.items():
            assert (sol is not None) == (oracle is not None)
            if sol is not None:
                assert is_1in3_satisfying(inst, pullback_1in3_strands(layout, strands, sol, diagonal))


# --------------------------------------------------------------------------
# C8


@cache
def c8_cases():
    solvable, unsolvable = [], []
    seed = 0
    while len(solvable) < C8_EACH or len(unsolvable) < C8_EACH:
        inst = random_strands(seed, rows=3, cols=3, plant=seed % 2 == 0, extra_words=1)
        seed += 1
        if len(solvable) < C8_EACH and solve_strands(inst, False) is not None:
            bucket = solvable
        elif len(unsolvable) < C8_EACH and solve_strands(inst, True) is None:
            bucket = unsolvable
        else:
            continue
        expanded = expand_blocks(inst).instance
        bucket.append((inst, expanded, {d: solve_strands(expanded, d) for d in (True, False)}))
    return solvable, unsolvable


@criterion(8, "block expansion preserves solvability and scales word lengths by 9")
def test_c8_block_expansion():
    solvable, unsolvable = c8_cases()
    assert len(solvable) == len(unsolvable) == C8_EACH
    for want, cases in ((True, solvable), (False, unsolvable)):
        for inst, expanded, sols in cases:
            assert inst.rows <= 3 and inst.cols <= 3
            L = max(len(w) for w in inst.dictionary)
            assert L <= 3
            assert expanded.rows == 3 * inst.rows and expanded.cols == 3 * inst.cols
            assert {len(w) for w in expanded.dictionary} == {9 * len(w) for w in inst.dictionary}
            assert len(expanded.dictionary) <= len(inst.dictionary) * 4**L
            for sol in sols.values():
                assert (sol is not None) == want


# --------------------------------------------------------------------------
# C9

FLOW_CASES = [
    # (height, width, pairs, solvable) with the answer argued by hand
    (1, 2, [("r", (0, 0), (0, 1))], True),
    (2, 2, [("r", (0, 0), (0, 1)), ("g", (1, 0), (1, 1))], True),
    (2, 2, [("r", (0, 0), (1, 1)), ("g", (0, 1), (1, 0))], False),  # the paths must cross
    (3, 3, [("r", (0, 0), (2, 2))], True),  # snake
    (3, 3, [("r", (0, 0), (0, 1))], False),  # 9 cells need both ends on the majority colour
    (3, 3, [("r", (0, 0), (0, 2)), ("g", (1, 0), (1, 2)), ("b", (2, 0), (2, 2))], True),
    (3, 3, [("r", (0, 0), (2, 2)), ("g", (0, 2), (2, 0))], False),  # crossing diagonals
    (4, 4, [("r", (0, 0), (3, 3))], False),  # 16 cells need ends of opposite colours
    (4, 4, [("r", (0, 0), (0, 3)), ("g", (1, 0), (1, 3)), ("b", (2, 0), (3, 0))], True),
    (4, 4, [("r", (0, 0), (3, 3)), ("g", (0, 3), (3, 0)), ("b", (1, 1), (2, 2))], False),
]


def flow_oracle(h: int, w: int, pairs) -> bool:
    """Independent check: route colours one by one over every simple path."""
    total = h * w
    ends = {c for _k, a, b in pairs for c in (a, b)}

    def paths(a, b, blocked):
        stack = [(a, (a,))]
        while stack:
            cell, path = stack.pop()
            r, c = cell
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb == b:
                    yield path + (b,)
                elif 0 <= nb[0] < h and 0 <= nb[1] < w and nb not in blocked and nb not in path:
                    stack.append((nb, path + (nb,)))

    def route(i, used):
        if i == len(pairs):
            return len(used) == total
        _k, a, b = pairs[i]
        for p in paths(a, b, used | ends):
            if route(i + 1, used | set(p)):
                return True
        return False

    return route(0, frozenset())


@cache
def c9_cases():
    out = []
    for h, w, pairs, known in FLOW_CASES:
        ff = FlowFreeInstance(h, w, tuple(pairs))
        strands = reduce_flowfree(ff)
        out.append((ff, strands, known, flow_oracle(h, w, pairs), solve_strands(strands, False)))
    return out


@criterion(9, "Flow Free reduction matches known answers on 10 hand-made instances")
def test_c9_flowfree():
    cases = c9_cases()
    assert len(cases) == 10
    for ff, strands, known, oracle, sol in cases:
        assert ff.height <= 4 and ff.width <= 4 and len(ff.pairs) <= 3
        assert oracle == known
        assert (sol is not None) == known


# --------------------------------------------------------------------------
# C10 / C11


@cache
def c10_cases():
    instances = list(all_instances(4, 3))
    instances += [random_tiles(seed, max_tiles=6, max_features=5) for seed in range(C10_SEEDED)]
    return [(t, is_solvable(t), brute_force_solvable(t), solve_greedy(t)) for t in instances]


@criterion(10, "Tiles parity test agrees with brute force; greedy solutions are single combos")
def test_c10_tiles_parity():
    cases = c10_cases()
    for inst, parity, brute, greedy in cases:
        assert parity == brute == (greedy is not None)
        if greedy is not None:
            rep = verify_moves(inst, greedy)
            assert rep.all_deleted and rep.unforced_teleports == 0
    assert any(p for _i, p, _b, _g in cases) and not all(p for _i, p, _b, _g in cases)


@cache
def c11_cases():
    out = []
    for inst in all_instances(4, 4, min_tiles=2):
        if sharing_number(inst) == 1:
            ok, moves = no_teleport_solvable(inst)
            out.append((inst, ok, moves, brute_force_no_teleport(inst)))
    return out


@criterion(11, "Tiles Eulerian test agrees with brute force at sharing number 1")
def test_c11_tiles_eulerian():
    cases = c11_cases()
    assert cases
    for inst, ok, moves, brute in cases:
        assert ok == brute
        if ok:
            rep = verify_moves(inst, moves)
            assert rep.all_deleted
            assert rep.unforced_teleports == 0 and rep.forced_teleports == 0


# --------------------------------------------------------------------------
# C12


def _min_words_single_word(p) -> int | None:
    """A one-word dictionary whose word cannot follow itself allows only 1-word solutions."""
    (w,) = p.dictionary
    assert w[0] != w[-1]
    return 1 if solve_search(p, 1) is not None else None


@criterion(12, "minimum word count never exceeds the certificate bound")
def test_c12_certificate_bound():
    minima = []
    for p, dp, _bf, _s in c1_cases()[0]:
        minima.append((p, dp))
    for _i, red, _s, _o in c2_cases():
        minima.append((red.puzzle, _min_words_single_word(red.puzzle)))
    for _i, red, _s, _o in c3_cases():
        minima.append((red.puzzle, min_words_dp(red.puzzle)))
    seen = set()
    for p, _k, lifted, _k2, _a, _b in c4_cases():
        for q in (p, lifted):
            if id(q) not in seen:
                seen.add(id(q))
                minima.append((q, min_words_dp(q)))
    solvable = [(p, m) for p, m in minima if m is not None]
    assert solvable
    for p, m in solvable:
        assert m <= p.num_sides**2 * len(p.alphabet) * p.side_size


# --------------------------------------------------------------------------
# C13


def _roundtrip(fmt: str, obj):
    text = F.dumps(fmt, obj)
    back = F.loads(fmt, text)
    assert F.dumps(fmt, back) == text
    return back


@criterion(13, "save/load identity across all formats on every generated instance")
def test_c13_serialization():
    n = 0
    for p, _dp, _bf, sol in c1_cases()[0]:
        assert _roundtrip("letterboxed", p) == p
        if sol is not None:
            assert _roundtrip("letterboxed-solution", sol) == sol
        n += 1
    for inst, red, sol, _o in c2_cases() + c3_cases():
        assert _roundtrip("source", inst) == inst
        assert _roundtrip("letterboxed", red.puzzle) == red.puzzle
        if sol is not None:
            assert _roundtrip("letterboxed-solution", sol) == sol
        n += 1
    for p, _k, lifted, _k2, _a, sol in c4_cases():
        assert _roundtrip("letterboxed", p) == p and _roundtrip("letterboxed", lifted) == lifted
        if sol is not None:
            assert _roundtrip("letterboxed-solution", sol) == sol
        n += 1
    for inst, _c, puzzle, layout, sol, _o in c5_cases():
        assert _roundtrip("source", inst) == inst
        assert _roundtrip("pips", puzzle) == puzzle
        back = _roundtrip("pips-layout", layout)
        assert back == layout and back.owner == layout.owner
        if sol is not None:
            assert _roundtrip("pips-placement", sol) == sol
        n += 1
    for inst, puzzle, _s, _o in c6_cases():
        assert _roundtrip("source", inst) == inst and _roundtrip("pips", puzzle) == puzzle
        n += 1
    for inst, strands, layout, sols, _o in c7_cases():
        assert _roundtrip("source", inst) == inst
        assert _roundtrip("strands", strands) == strands
        assert _roundtrip("strands-layout", layout) == layout
        for sol in sols.values():
            if sol is not None:
                assert _roundtrip("strands-partition", sol) == list(sol)
        n += 1
    solvable, unsolvable = c8_cases()
    for inst, expanded, sols in solvable + unsolvable:
        assert _roundtrip("strands", inst) == inst and _roundtrip("strands", expanded) == expanded
        for sol in sols.values():
            if sol is not None:
                assert _roundtrip("strands-partition", sol) == list(sol)
        n += 1
    for ff, strands, *_x in c9_cases():
        assert _roundtrip("flowfree", ff) == ff and _roundtrip("strands", strands) == strands
        n += 1
    for inst, _p, _b, moves in c10_cases():
        assert _roundtrip("tiles", inst) == inst
        if moves is not None:
            assert _roundtrip("tiles-moves", moves) == moves
        n += 1
    for inst, _ok, moves, _b in c11_cases():
        assert _roundtrip("tiles", inst) == inst
        if moves is not None:
            assert _roundtrip("tiles-moves", moves) == moves
        n += 1
    assert n > 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
