import json

import pytest

from nythard import formats as F
from nythard.letterboxed import LetterBoxedSolution, make_puzzle, solve_dp
from nythard.letterboxed_reductions import reduce_3dm, reduce_nae3sat
from nythard.pips import make_pips, rectangle, solve_pips, sum_eq
from nythard.pips_reductions import reduce_planar_1in3_pips
from nythard.sources import (
    Nae3SatInstance,
    SubsetSumInstance,
    ThreeDmInstance,
    embed,
    generate_random,
    three_clause_example,
)
from nythard.strands import make_strands, solve_strands, to_certificate
from nythard.strands_reductions import FlowFreeInstance, reduce_planar_1in3_strands
from nythard.tiles import make_tiles


def round_trip(fmt, obj):
    text = F.dumps(fmt, obj)
    assert text.endswith("\n")
    back = F.loads(fmt, text)
    assert F.dumps(fmt, back) == text
    return back, json.loads(text)


class TestLetterBoxed:
    def test_single_character_symbols_become_strings(self):
        p = make_puzzle(["ab", "cd"], ["acbd"])
        back, data = round_trip("letterboxed", p)
        assert back == p
        assert data["dictionary"] == ["acbd"] and data["sides"] == [["a", "b"], ["c", "d"]]

    def test_long_symbols_stay_lists(self):
        p = reduce_3dm(ThreeDmInstance(1, ((0, 0, 0),))).puzzle
        back, data = round_trip("letterboxed", p)
        assert back == p and isinstance(data["dictionary"][0], list)

    def test_solution(self):
        sol = LetterBoxedSolution((0, 2), (1, 2, 2, 1))
        back, data = round_trip("letterboxed-solution", sol)
        assert back == sol and data == {"words": [0, 2], "sideTrace": [1, 2, 2, 1]}


class TestPips:
    def test_puzzle_and_placement(self):
        p = make_pips(rectangle(2, 2), [(0, 0), (1, 1)], [sum_eq([(0, 0), (0, 1)], 2)])
        back, data = round_trip("pips", p)
        assert back == p
        assert data["constraints"] == [{"kind": "sum", "n": 2, "region": [[0, 0], [0, 1]]}]
        sol = solve_pips(p)
        placed, pdata = round_trip("pips-placement", sol)
        assert placed == tuple(sol)
        assert set(pdata[0]) == {"dominoIndex", "cellA", "cellB", "valueAtA", "valueAtB"}

    def test_layout(self):
        puzzle, layout = reduce_planar_1in3_pips(three_clause_example(), connected=True)
        back, _ = round_trip("pips-layout", layout)
        assert back.variables == layout.variables and back.clauses == layout.clauses


class TestStrands:
    def test_instance_and_partition(self):
        inst = make_strands(["AB", "BA"], ["AB"])
        back, data = round_trip("strands", inst)
        assert back == inst and data["grid"] == ["AB", "BA"]
        sol = solve_strands(inst)
        part, pdata = round_trip("strands-partition", sol)
        assert part == [tuple(p) for p in sol]
        assert pdata[0]["word"] == 0

    def test_partition_with_certificate(self):
        inst = make_strands(["AB", "BA"], ["AB"])
        sol = solve_strands(inst)
        data = F.partition_to_data(sol, inst)
        v1, v2 = to_certificate(inst, sol)
        assert data["v1"] == v1 and data["v2"] == v2
        assert sorted(F.partition_from_data(data, inst)) == sorted(sol)
        only = {"v1": v1, "v2": v2}
        assert sorted(F.partition_from_data(only, inst)) == sorted(sol)
        with pytest.raises(F.FormatError):
            F.partition_from_data(only)

    def test_layout(self):
        _, layout = reduce_planar_1in3_strands(embed(("a", "b", "c"), [("a", "b", "c")]))
        back, _ = round_trip("strands-layout", layout)
        assert back == layout

    def test_flowfree(self):
        ff = FlowFreeInstance(2, 3, (("R", (0, 0), (1, 2)),))
        back, data = round_trip("flowfree", ff)
        assert back == ff
        assert data == {"width": 3, "height": 2, "pairs": [{"color": "R", "a": [0, 0], "b": [1, 2]}]}


class TestTiles:
    def test_instance_and_moves(self):
        inst = make_tiles([{"a", "b"}, {"a"}, {"b"}, set()])
        back, data = round_trip("tiles", inst)
        assert back == inst and data["tiles"][3] == []
        moves, mdata = round_trip("tiles-moves", (0, 1, 0, 2))
        assert moves == (0, 1, 0, 2) and mdata == [0, 1, 0, 2]


class TestSources:
    @pytest.mark.parametrize("src", [
        Nae3SatInstance.of([("a", "b", "c"), ("a", "c", "d")]),
        three_clause_example(),
        generate_random("1in3", 3, num_vars=5, num_clauses=3),
        ThreeDmInstance(2, ((0, 0, 0), (1, 1, 1))),
        SubsetSumInstance((3, 5, 2), 7),
    ])
    def test_round_trip(self, src):
        back, data = round_trip("source", src)
        assert back == src and data["kind"] in F.SOURCE_KINDS

    def test_unknown_kind(self):
        with pytest.raises(F.FormatError):
            F.source_from_data({"kind": "sudoku"})


class TestSidecars:
    def test_nae(self):
        out = reduce_nae3sat(Nae3SatInstance.of([("a", "b", "c")]))
        data = F.nae_sidecar_to_data(out)
        assert data["kind"] == "nae3sat-to-letterboxed" and data["k"] == 1
        assert F.nae_sidecar_from_data(json.loads(F.canonical(data)), out.puzzle) == out

    def test_3dm(self):
        out = reduce_3dm(ThreeDmInstance(2, ((0, 0, 0), (1, 1, 1))))
        data = json.loads(F.canonical(F.tdm_sidecar_to_data(out)))
        assert F.tdm_sidecar_from_data(data, out.puzzle) == out


class TestErrors:
    def test_bad_json(self):
        with pytest.raises(F.FormatError):
            F.loads("tiles", "{not json")

    def test_missing_key(self):
        with pytest.raises(F.FormatError):
            F.loads("pips", '{"cells": []}')

    def test_bad_cell(self):
        with pytest.raises(F.FormatError):
            F.loads("pips-placement", '[{"dominoIndex": 0, "cellA": [0], "cellB": [0, 1], "valueAtA": 0, "valueAtB": 0}]')

    def test_files(self, tmp_path):
        p = make_puzzle(["ab", "cd"], ["acbd"])
        path = tmp_path / "p.json"
        F.save("letterboxed", p, path)
        assert F.load("letterboxed", path) == p
        assert F.read_json(path)["dictionary"] == ["acbd"]
        (tmp_path / "bad.json").write_text("[", encoding="utf-8")
        with pytest.raises(F.FormatError):
            F.read_json(tmp_path / "bad.json")

    def test_solution_from_dp_survives(self):
        p = make_puzzle(["a", "b", "c", "d"], ["ab", "bc", "cd"])
        back, _ = round_trip("letterboxed-solution", solve_dp(p))
        assert back == solve_dp(p)
