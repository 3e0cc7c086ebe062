"""Load and save every file format as canonical JSON.

Canonical text sorts keys, indents by two spaces and ends with a newline,
so ``dumps(fmt, loads(fmt, text))`` is byte-identical for canonical input.
Symbol sequences are written as plain strings when every symbol involved is
a single character and as lists of symbols otherwise.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable

from .letterboxed import LetterBoxedPuzzle, LetterBoxedSolution, validate_puzzle
from .letterboxed_reductions import NaeReductionOutput, ThreeDmReductionOutput
from .pips import Constraint, PipsPuzzle, make_pips
from .pips_reductions import ClauseGadget, PipsGadgetLayout, VariableGadget
from .sources import (
    Nae3SatInstance,
    OneInThreeInstance,
    SubsetSumInstance,
    ThreeDmInstance,
)
from .strands import StrandsInstance, from_certificate, make_strands, to_certificate
from .strands_reductions import FlowFreeInstance, StrandsGadgetLayout, VariableLayout
from .tiles import TilesInstance


class FormatError(ValueError):
    pass


def canonical(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(c) -> list[int]:
    return [int(c[0]), int(c[1])]


def _cells(cs) -> list[list[int]]:
    return [_cell(c) for c in cs]


def _tcell(c) -> tuple[int, int]:
    if len(c) != 2:
        raise FormatError(f"cell {c!r} must have two coordinates")
    return int(c[0]), int(c[1])


def _seq_writer(symbols) -> Callable:
    if all(len(s) == 1 for s in symbols):
        return "".join
    return list


# letter boxed ----------------------------------------------------------------

def letterboxed_to_data(p: LetterBoxedPuzzle) -> dict:
    w = _seq_writer(p.alphabet)
    return {
        "alphabet": list(p.alphabet),
        "dictionary": [w(word) for word in p.dictionary],
        "sides": [list(s) for s in p.sides],
    }


def letterboxed_from_data(d: dict) -> LetterBoxedPuzzle:
    return validate_puzzle(d)


def lb_solution_to_data(s: LetterBoxedSolution) -> dict:
    return {"words": list(s.words), "sideTrace": list(s.side_trace)}


def lb_solution_from_data(d: dict) -> LetterBoxedSolution:
    return LetterBoxedSolution(tuple(int(i) for i in d["words"]), tuple(int(i) for i in d["sideTrace"]))


# pips ----------------------------------------------------------------------------

def _constraint_to_data(c: Constraint) -> dict:
    out = {"region": _cells(sorted(c.region)), "kind": c.kind}
    if c.n is not None:
        out["n"] = c.n
    return out


def pips_to_data(p: PipsPuzzle) -> dict:
    return {
        "cells": _cells(sorted(p.cells)),
        "dominoes": [list(d) for d in p.dominoes],
        "constraints": [_constraint_to_data(c) for c in p.constraints],
    }


def pips_from_data(d: dict) -> PipsPuzzle:
    cons = [
        Constraint(frozenset(_tcell(c) for c in con["region"]), con["kind"], con.get("n"))
        for con in d.get("constraints", [])
    ]
    return make_pips([_tcell(c) for c in d["cells"]], d["dominoes"], cons)


def placement_to_data(placement) -> list[dict]:
    return [
        {"dominoIndex": i, "cellA": _cell(a), "cellB": _cell(b), "valueAtA": va, "valueAtB": vb}
        for i, a, b, va, vb in placement
    ]


def placement_from_data(d: list) -> tuple:
    return tuple(
        (int(r["dominoIndex"]), _tcell(r["cellA"]), _tcell(r["cellB"]), int(r["valueAtA"]), int(r["valueAtB"]))
        for r in d
    )


# strands -------------------------------------------------------------------------

def strands_to_data(inst: StrandsInstance) -> dict:
    w = _seq_writer(inst.alphabet)
    return {
        "alphabet": list(inst.alphabet),
        "dictionary": [w(word) for word in inst.dictionary],
        "grid": [w(row) for row in inst.grid],
    }


def strands_from_data(d: dict) -> StrandsInstance:
    return make_strands(d["grid"], d["dictionary"], d["alphabet"])


def partition_to_data(partition, inst: StrandsInstance | None = None) -> list | dict:
    """Plain list of paths; with ``inst`` the certificate matrices are attached."""
    paths = [{"word": int(w), "cells": _cells(path)} for w, path in partition]
    if inst is None:
        return paths
    v1, v2 = to_certificate(inst, partition)
    return {"partition": paths, "v1": v1, "v2": v2}


def partition_from_data(d, inst: StrandsInstance | None = None) -> list:
    if isinstance(d, dict):
        if "partition" in d:
            d = d["partition"]
        elif inst is not None:
            return from_certificate(inst, d["v1"], d["v2"])
        else:
            raise FormatError("certificate-only partitions need the instance")
    return [(int(p["word"]), tuple(_tcell(c) for c in p["cells"])) for p in d]


def flowfree_to_data(ff: FlowFreeInstance) -> dict:
    return {
        "width": ff.width,
        "height": ff.height,
        "pairs": [{"color": c, "a": _cell(a), "b": _cell(b)} for c, a, b in ff.pairs],
    }


def flowfree_from_data(d: dict) -> FlowFreeInstance:
    pairs = tuple((str(p["color"]), _tcell(p["a"]), _tcell(p["b"])) for p in d["pairs"])
    return FlowFreeInstance(int(d["height"]), int(d["width"]), pairs)


# tiles -----------------------------------------------------------------------------

def tiles_to_data(inst: TilesInstance) -> dict:
    order = {f: i for i, f in enumerate(inst.features)}
    return {
        "features": list(inst.features),
        "tiles": [sorted(t, key=order.__getitem__) for t in inst.tiles],
    }


def tiles_from_data(d: dict) -> TilesInstance:
    return TilesInstance(tuple(d["features"]), tuple(frozenset(t) for t in d["tiles"]))


def moves_to_data(moves) -> list[int]:
    return [int(i) for i in moves]


def moves_from_data(d: list) -> tuple[int, ...]:
    return tuple(int(i) for i in d)


# source problems -------------------------------------------------------------------

SOURCE_KINDS = ("nae3sat", "1in3", "3dm", "subsetsum")


def source_to_data(inst) -> dict:
    if isinstance(inst, OneInThreeInstance):
        return {
            "kind": "1in3",
            "variables": list(inst.variables),
            "clauses": [list(c) for c in inst.clauses],
            "embedding": [
                {"side": s, "level": lv, "slots": list(sl)}
                for s, lv, sl in zip(inst.sides, inst.levels, inst.slots)
            ],
        }
    if isinstance(inst, Nae3SatInstance):
        return {"kind": "nae3sat", "variables": list(inst.variables), "clauses": [list(c) for c in inst.clauses]}
    if isinstance(inst, ThreeDmInstance):
        return {"kind": "3dm", "n": inst.n, "triples": [list(t) for t in inst.triples]}
    if isinstance(inst, SubsetSumInstance):
        return {"kind": "subsetsum", "items": list(inst.items), "target": inst.target}
    raise FormatError(f"not a source instance: {type(inst).__name__}")


def source_from_data(d: dict):
    kind = d.get("kind")
    if kind == "nae3sat":
        return Nae3SatInstance(tuple(d["variables"]), tuple(tuple(c) for c in d["clauses"]))
    if kind == "1in3":
        emb = d["embedding"]
        return OneInThreeInstance(
            tuple(d["variables"]),
            tuple(tuple(c) for c in d["clauses"]),
            tuple(e["side"] for e in emb),
            tuple(int(e["level"]) for e in emb),
            tuple(tuple(int(s) for s in e["slots"]) for e in emb),
        )
    if kind == "3dm":
        return ThreeDmInstance(int(d["n"]), tuple(tuple(int(x) for x in t) for t in d["triples"]))
    if kind == "subsetsum":
        return SubsetSumInstance(tuple(int(x) for x in d["items"]), int(d["target"]))
    raise FormatError(f"unknown source kind {kind!r}; expected one of {SOURCE_KINDS}")


# layout sidecars -------------------------------------------------------------------

def nae_sidecar_to_data(out: NaeReductionOutput) -> dict:
    return {
        "kind": "nae3sat-to-letterboxed",
        "k": out.k,
        "variableOrder": list(out.variable_order),
        "occurrenceCount": dict(out.occurrence_count),
        "source": source_to_data(out.source),
    }


def nae_sidecar_from_data(d: dict, puzzle: LetterBoxedPuzzle) -> NaeReductionOutput:
    return NaeReductionOutput(
        puzzle, int(d["k"]), tuple(d["variableOrder"]),
        {k: int(v) for k, v in d["occurrenceCount"].items()}, source_from_data(d["source"]),
    )


def tdm_sidecar_to_data(out: ThreeDmReductionOutput) -> dict:
    return {
        "kind": "3dm-to-letterboxed",
        "k": out.k,
        "tripleOfWord": [{"word": w, "triple": list(t)} for w, t in sorted(out.triple_of_word.items())],
        "source": source_to_data(out.source),
    }


def tdm_sidecar_from_data(d: dict, puzzle: LetterBoxedPuzzle) -> ThreeDmReductionOutput:
    tow = {int(e["word"]): tuple(int(x) for x in e["triple"]) for e in d["tripleOfWord"]}
    return ThreeDmReductionOutput(puzzle, int(d["k"]), tow, source_from_data(d["source"]))


def pips_layout_to_data(layout: PipsGadgetLayout) -> dict:
    return {
        "variables": {
            v: {
                "base": _cells(g.base),
                "branches": [{"clause": ci, "cells": _cells(b)} for ci, b in g.branches.items()],
            }
            for v, g in layout.variables.items()
        },
        "clauses": [
            {"row": g.row, "tipColumns": list(g.tip_columns), "body": _cells(g.body), "bumps": _cells(g.bumps)}
            for g in layout.clauses
        ],
        "cleanup": _cells(layout.cleanup),
        "connections": [_cells(seg) for seg in layout.connections],
    }


def pips_layout_from_data(d: dict) -> PipsGadgetLayout:
    def cells(xs):
        return tuple(_tcell(c) for c in xs)

    variables = {
        v: VariableGadget(cells(g["base"]), {int(b["clause"]): cells(b["cells"]) for b in g["branches"]})
        for v, g in d["variables"].items()
    }
    clauses = tuple(
        ClauseGadget(int(g["row"]), tuple(g["tipColumns"]), cells(g["body"]), cells(g["bumps"]))
        for g in d["clauses"]
    )
    cleanup = cells(d["cleanup"])
    connections = tuple(cells(seg) for seg in d["connections"])
    owner: dict = {}
    for v, g in variables.items():
        for c in g.cells:
            owner[c] = ("variable", v)
    for ci, g in enumerate(clauses):
        for c in g.cells:
            owner[c] = ("clause", ci)
    for i, seg in enumerate(connections):
        for c in seg:
            owner[c] = ("connection", i)
    for c in cleanup:
        owner[c] = ("cleanup",)
    return PipsGadgetLayout(variables, clauses, cleanup, connections, owner)


def strands_layout_to_data(layout: StrandsGadgetLayout) -> dict:
    return {
        "variables": {
            v: {"topLeft": _cell(g.top_left), "modules": g.modules, "eCells": _cells(g.e_cells)}
            for v, g in layout.variables.items()
        },
        "clauses": [_cells(pair) for pair in layout.clauses],
        "edges": [
            {"clause": ci, "variable": v, "cells": _cells(path)}
            for (ci, v), path in sorted(layout.edges.items())
        ],
    }


def strands_layout_from_data(d: dict) -> StrandsGadgetLayout:
    variables = {
        v: VariableLayout(_tcell(g["topLeft"]), int(g["modules"]), tuple(_tcell(c) for c in g["eCells"]))
        for v, g in d["variables"].items()
    }
    clauses = tuple(tuple(_tcell(c) for c in pair) for pair in d["clauses"])
    edges = {(int(e["clause"]), e["variable"]): tuple(_tcell(c) for c in e["cells"]) for e in d["edges"]}
    return StrandsGadgetLayout(variables, clauses, edges)


# registry --------------------------------------------------------------------------

FORMATS: dict[str, tuple[Callable, Callable]] = {
    "letterboxed": (letterboxed_to_data, letterboxed_from_data),
    "letterboxed-solution": (lb_solution_to_data, lb_solution_from_data),
    "pips": (pips_to_data, pips_from_data),
    "pips-placement": (placement_to_data, placement_from_data),
    "pips-layout": (pips_layout_to_data, pips_layout_from_data),
    "strands": (strands_to_data, strands_from_data),
    "strands-partition": (partition_to_data, partition_from_data),
    "strands-layout": (strands_layout_to_data, strands_layout_from_data),
    "flowfree": (flowfree_to_data, flowfree_from_data),
    "tiles": (tiles_to_data, tiles_from_data),
    "tiles-moves": (moves_to_data, moves_from_data),
    "source": (source_to_data, source_from_data),
}


def dumps(fmt: str, obj) -> str:
    return canonical(FORMATS[fmt][0](obj))


def loads(fmt: str, text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    try:
        return FORMATS[fmt][1](data)
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed {fmt} file: {exc!r}") from None


def save(fmt: str, obj, path: str | Path) -> None:
    Path(path).write_text(dumps(fmt, obj), encoding="utf-8")


def load(fmt: str, path: str | Path):
    return loads(fmt, Path(path).read_text(encoding="utf-8"))


def read_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON: {exc}") from None


def write_json(data, path: str | Path) -> None:
    Path(path).write_text(canonical(data), encoding="utf-8")
