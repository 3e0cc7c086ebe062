import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nythard import BudgetExhausted
from nythard.pips import (
    Constraint,
    InvalidPips,
    TooManySolutions,
    enumerate_pips_solutions,
    eq,
    make_pips,
    rectangle,
    solve_pips,
    sum_eq,
    tiling_shapes,
    verify_pips,
)

TOP_SUM = make_pips(rectangle(2, 2), [(0, 0), (1, 1)], [sum_eq([(0, 0), (0, 1)], 2)])


class TestConstraint:
    @pytest.mark.parametrize(
        "kind,n,values,ok",
        [
            ("eq", None, [3, 3], True),
            ("eq", None, [3, 4], False),
            ("neq", None, [1, 2, 3], True),
            ("neq", None, [1, 2, 1], False),
            ("sum", 5, [2, 3], True),
            ("lt", 5, [2, 3], False),
            ("lt", 6, [2, 3], True),
            ("gt", 4, [2, 3], True),
        ],
    )
    def test_holds(self, kind, n, values, ok):
        assert Constraint(frozenset({(0, 0)}), kind, n).holds(values) == ok

    def test_kind_arguments(self):
        with pytest.raises(InvalidPips):
            Constraint(frozenset({(0, 0)}), "sum")
        with pytest.raises(InvalidPips):
            Constraint(frozenset({(0, 0)}), "eq", 3)
        with pytest.raises(InvalidPips):
            Constraint(frozenset({(0, 0)}), "max", 3)

    def test_regions_must_be_valid(self):
        cells = rectangle(2, 2)
        with pytest.raises(InvalidPips, match="overlaps"):
            make_pips(cells, [(0, 0)] * 2, [eq([(0, 0)]), eq([(0, 0), (0, 1)])])
        with pytest.raises(InvalidPips, match="connected"):
            make_pips(cells, [(0, 0)] * 2, [eq([(0, 0), (1, 1)])])
        with pytest.raises(InvalidPips, match="outside"):
            make_pips(cells, [(0, 0)] * 2, [eq([(5, 5)])])


class TestVerify:
    def test_single_domino(self):
        p = make_pips([(0, 0), (1, 0)], [(0, 0)])
        assert verify_pips(p, [(0, (0, 0), (1, 0), 0, 0)])

    def test_top_row_sum(self):
        good = [(1, (0, 0), (0, 1), 1, 1), (0, (1, 0), (1, 1), 0, 0)]
        assert verify_pips(TOP_SUM, good)
        vertical = [(0, (0, 0), (1, 0), 0, 0), (1, (0, 1), (1, 1), 1, 1)]
        v = verify_pips(TOP_SUM, vertical)
        assert not v and any("sum 2" in m for m in v.violations)

    def test_structural_problems(self):
        p = make_pips(rectangle(1, 4), [(0, 1), (2, 3)])
        assert not verify_pips(p, [(0, (0, 0), (0, 2), 0, 1), (1, (0, 1), (0, 3), 2, 3)])
        assert not verify_pips(p, [(0, (0, 0), (0, 1), 0, 1)])
        assert not verify_pips(p, [(0, (0, 0), (0, 1), 1, 1), (1, (0, 2), (0, 3), 2, 3)])
        with pytest.raises(IndexError):
            verify_pips(p, [(7, (0, 0), (0, 1), 0, 1)])
        with pytest.raises(KeyError):
            verify_pips(p, [(0, (0, 0), (9, 9), 0, 1)])


class TestSolve:
    def test_top_row_sum(self):
        sol = solve_pips(TOP_SUM)
        assert verify_pips(TOP_SUM, sol)

    def test_odd_board(self):
        assert solve_pips(make_pips(rectangle(1, 3), [(0, 0)])) is None

    def test_area_mismatch(self):
        assert solve_pips(make_pips(rectangle(2, 2), [(0, 0)])) is None

    def test_budget(self):
        with pytest.raises(BudgetExhausted):
            solve_pips(make_pips(rectangle(4, 4), [(i % 3, i % 2) for i in range(8)]), budget=3)


class TestEnumerate:
    def test_flips(self):
        assert len(enumerate_pips_solutions(make_pips([(0, 0), (0, 1)], [(0, 1)]))) == 2

    def test_unsolvable(self):
        p = make_pips([(0, 0), (0, 1)], [(0, 1)], [sum_eq([(0, 0), (0, 1)], 3)])
        assert enumerate_pips_solutions(p) == []

    def test_limit(self):
        with pytest.raises(TooManySolutions):
            enumerate_pips_solutions(make_pips(rectangle(2, 4), [(0, 1)] * 4), limit=5)

    def test_tiling_counts(self):
        # domino tilings of a 2 x n strip follow the Fibonacci numbers
        for n, count in [(1, 1), (2, 2), (3, 3), (4, 5), (5, 8)]:
            assert len(tiling_shapes(rectangle(2, n), limit=10)) == count


def _brute_force(p):
    """Try every tiling shape, every assignment of dominoes and every flip."""
    from itertools import permutations, product

    for shape in tiling_shapes(p.cells, limit=10_000):
        pairs = [tuple(sorted(d)) for d in shape]
        for perm in set(permutations(range(len(p.dominoes)))):
            for flips in product((0, 1), repeat=len(pairs)):
                placement = []
                for (a, b), di, f in zip(pairs, perm, flips):
                    va, vb = p.dominoes[di]
                    if f:
                        va, vb = vb, va
                    placement.append((di, a, b, va, vb))
                if verify_pips(p, placement):
                    return True
    return False


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=3),
    st.sampled_from(["eq", "neq", "sum", "lt", "gt"]),
    st.integers(0, 8),
    st.integers(0, 5),
)
def test_solver_matches_brute_force(dominoes, kind, n, start):
    cells = rectangle(2, 3)
    region = [cells[(start + i) % 6] for i in range(3)]
    region = [c for c in region if c in cells]
    try:
        con = Constraint(frozenset(region), kind, n if kind in ("sum", "lt", "gt") else None)
        p = make_pips(cells, dominoes, [con])
    except InvalidPips:
        return
    sol = solve_pips(p)
    assert (sol is not None) == _brute_force(p)
    if sol is not None:
        assert verify_pips(p, sol)
