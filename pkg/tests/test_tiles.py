import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nythard import BudgetExhausted
from nythard.tiles import (
    InvalidTiles,
    all_instances,
    brute_force_no_teleport,
    brute_force_solvable,
    is_solvable,
    make_tiles,
    no_teleport_solvable,
    random_tiles,
    sharing_number,
    solve_greedy,
    structure_graph,
    verify_moves,
)

PAIR = make_tiles([{"f"}, {"f"}])
TRIANGLE = make_tiles([{"a", "b"}, {"a", "c"}, {"b", "c"}, set()])
PATH = make_tiles([{"a"}, {"a", "b"}, {"b"}])
SPLIT = make_tiles([{"a"}, {"a"}, {"b"}, {"b"}])


class TestInstance:
    def test_unknown_feature(self):
        with pytest.raises(InvalidTiles):
            make_tiles([{"a"}], features=["b"])

    def test_unused_feature(self):
        with pytest.raises(InvalidTiles):
            make_tiles([{"a"}, {"a"}], features=["a", "b"])


class TestSolvable:
    def test_examples(self):
        assert is_solvable(PAIR)
        assert not is_solvable(make_tiles([{"f"}]))
        assert is_solvable(TRIANGLE) and brute_force_solvable(TRIANGLE)


class TestGreedy:
    def test_pair(self):
        assert solve_greedy(PAIR) == (0, 1)

    def test_forced_teleport(self):
        inst = make_tiles([{"a", "b"}, {"a"}, {"b"}])
        moves = solve_greedy(inst)
        assert moves == (0, 1, 0, 2)
        r = verify_moves(inst, moves)
        assert r.all_deleted and r.forced_teleports == 1 and r.unforced_teleports == 0
        assert r.single_combo and r.max_combo == 2

    def test_odd(self):
        assert solve_greedy(make_tiles([{"f"}])) is None

    def test_no_features(self):
        assert solve_greedy(make_tiles([set(), set()])) == ()


class TestVerify:
    def test_unforced_teleport(self):
        r = verify_moves(make_tiles([{"a"}, {"b"}]), [0, 1])
        assert r.unforced_teleports == 1 and not r.all_deleted and not r.single_combo

    def test_empty_moves(self):
        assert not verify_moves(PAIR, []).all_deleted
        assert verify_moves(make_tiles([set()]), []).all_deleted

    def test_errors(self):
        with pytest.raises(ValueError):
            verify_moves(PAIR, [0, 0])
        with pytest.raises(ValueError):
            verify_moves(PAIR, [0, 5])

    def test_combo_resets(self):
        inst = make_tiles([{"a"}, {"a"}, {"b"}, {"b"}])
        r = verify_moves(inst, [0, 1, 2, 3])
        assert r.all_deleted and r.forced_teleports == 1 and r.max_combo == 2
        r = verify_moves(inst, [2, 0, 1, 2, 3])
        assert r.unforced_teleports == 1 and r.max_combo == 2 and r.all_deleted


class TestSharing:
    def test_examples(self):
        assert sharing_number(PATH) == 1
        assert sharing_number(make_tiles([{"a", "b"}, {"a", "b"}])) == 2
        assert sharing_number(make_tiles([{"a"}, {"b"}])) == 0

    def test_needs_two_tiles(self):
        with pytest.raises(InvalidTiles):
            sharing_number(make_tiles([{"a"}]))


class TestNoTeleport:
    def test_path(self):
        ok, moves = no_teleport_solvable(PATH)
        assert ok and moves == (0, 1, 2)
        r = verify_moves(PATH, moves)
        assert r.all_deleted and r.forced_teleports == r.unforced_teleports == 0

    def test_pair(self):
        assert no_teleport_solvable(make_tiles([{"a"}, {"a"}])) == (True, (0, 1))

    def test_disconnected(self):
        assert no_teleport_solvable(SPLIT) == (False, None)
        assert is_solvable(SPLIT) and not brute_force_no_teleport(SPLIT)

    def test_requires_sharing_one(self):
        with pytest.raises(InvalidTiles):
            no_teleport_solvable(make_tiles([{"a", "b"}, {"a", "b"}]))

    def test_structure_graph(self):
        g = structure_graph(PATH)
        assert g.degree(1) == 2 and g.degree("a") == 2 and g.degree(0) == 1


class TestBruteForce:
    def test_examples(self):
        assert not brute_force_solvable(make_tiles([{"f"}]))
        assert brute_force_solvable(PAIR)
        assert brute_force_no_teleport(PATH)

    def test_budget(self):
        inst = make_tiles([{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}, {"e"}, {"e"}])
        with pytest.raises(BudgetExhausted):
            brute_force_solvable(inst, budget=2)

    def test_enumeration_counts(self):
        assert len(list(all_instances(2, 1))) == 3


def test_exhaustive_small_instances():
    for inst in all_instances(4, 3):
        assert is_solvable(inst) == brute_force_solvable(inst)
        moves = solve_greedy(inst)
        if moves is not None:
            assert verify_moves(inst, moves).single_combo
        if len(inst.tiles) >= 2 and sharing_number(inst) == 1:
            ok, trail = no_teleport_solvable(inst)
            assert ok == brute_force_no_teleport(inst)
            if ok:
                r = verify_moves(inst, trail)
                assert r.all_deleted and r.forced_teleports == r.unforced_teleports == 0


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_greedy_on_random_instances(seed):
    inst = random_tiles(seed)
    moves = solve_greedy(inst)
    assert (moves is not None) == is_solvable(inst)
    if moves is not None:
        r = verify_moves(inst, moves)
        assert r.all_deleted and r.unforced_teleports == 0
