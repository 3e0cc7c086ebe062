"""Command-line front end.

    nythard <command> <subject> [paths] [--k N] [--no-diagonal] [--connected]
            [--seed S] [--budget N] [--svg PATH] [--format ascii|svg|csv] [-o PATH]

Exit status: 0 solvable/valid/pass, 1 unsolvable/invalid/fail, 2 usage or
I/O error, 3 node budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import Callable

from . import formats as F
from . import letterboxed as lb
from . import letterboxed_reductions as lbr
from . import pips
from . import pips_reductions as pr
from . import render
from . import sources as src
from . import strands as st
from . import strands_reductions as sr
from . import tiles
from ._common import BudgetExhausted, default_budget

OK, NO, USAGE, BUDGET = 0, 1, 2, 3

GAMES = ("letterboxed", "pips", "strands", "tiles", "flowfree")
SOURCES = ("nae3sat", "1in3", "3dm", "subsetsum")
REDUCTIONS = (
    "nae3sat-to-letterboxed",
    "3dm-to-letterboxed",
    "lift-sides",
    "1in3-to-pips",
    "subsetsum-to-pips",
    "1in3-to-strands",
    "block-expansion",
    "flowfree-to-strands",
)
BENCH_FAMILIES = ("letterboxed", "pips-1in3", "subsetsum-pips", "strands", "tiles")

# flags each command accepts beyond --budget
ALLOWED = {
    "solve": {"k", "no_diagonal", "out"},
    "verify": {"k", "no_diagonal"},
    "reduce": {"k", "connected", "out"},
    "pullback": {"no_diagonal", "out"},
    "roundtrip": {"k", "connected", "no_diagonal"},
    "render": {"svg", "format"},
    "gen": {"seed", "out"},
    "bench": {"seed", "format", "count", "out"},
}
_DEFAULTS = {"k": None, "no_diagonal": False, "connected": False, "seed": None,
             "svg": None, "format": None, "count": 10, "out": None}


class UsageError(Exception):
    pass


class Outcome(Exception):
    """Early exit carrying a status and a message."""

    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nythard", description="Solve, verify and reduce NYT-style puzzles.")
    p.add_argument("command", choices=sorted(ALLOWED))
    p.add_argument("subject", help="game, source problem, reduction or bench family")
    p.add_argument("paths", nargs="*")
    p.add_argument("--k", type=int, default=None, help="word budget (Letter Boxed)")
    p.add_argument("--no-diagonal", action="store_true", help="Strands: orthogonal moves only")
    p.add_argument("--connected", action="store_true", help="Pips 1-in-3: connected board variant")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="search node budget")
    p.add_argument("--svg", default=None, help="write an SVG picture here")
    p.add_argument("--format", choices=("ascii", "svg", "csv"), default=None)
    p.add_argument("--count", type=int, default=10, help="bench: instances per family")
    p.add_argument("-o", "--out", default=None, help="output path (stdout when omitted)")
    return p


def _check_flags(args) -> None:
    allowed = ALLOWED[args.command]
    for name, default in _DEFAULTS.items():
        if getattr(args, name) != default and name not in allowed:
            raise UsageError(f"--{name.replace('_', '-')} is not valid for {args.command}")


def _need(paths: list[str], n: int, what: str) -> list[str]:
    if len(paths) != n:
        raise UsageError(f"expected {n} path(s): {what}")
    return paths


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _report(data: dict) -> None:
    sys.stdout.write(F.canonical(data))


# solve ---------------------------------------------------------------------------

def cmd_solve(a) -> int:
    (path,) = _need(a.paths, 1, "instance file")
    subj = a.subject
    if subj == "letterboxed":
        p = F.load("letterboxed", path)
        sol = lb.solve_search(p, a.k, a.budget) if a.k is not None else lb.solve_dp(p, a.budget)
        if sol is None:
            raise Outcome(NO, "unsolvable" + (f" within {a.k} words" if a.k is not None else ""))
        _emit(F.dumps("letterboxed-solution", sol), a.out)
    elif subj == "pips":
        p = F.load("pips", path)
        sol = pips.solve_pips(p, a.budget)
        if sol is None:
            raise Outcome(NO, "unsolvable")
        _emit(F.dumps("pips-placement", sol), a.out)
    elif subj == "strands":
        inst = F.load("strands", path)
        sol = st.solve_strands(inst, not a.no_diagonal, budget=a.budget)
        if sol is None:
            raise Outcome(NO, "unsolvable")
        _emit(F.canonical(F.partition_to_data(sol, inst)), a.out)
    elif subj == "tiles":
        inst = F.load("tiles", path)
        moves = tiles.solve_greedy(inst)
        if moves is None:
            raise Outcome(NO, "unsolvable: some feature appears on an odd number of tiles")
        _emit(F.dumps("tiles-moves", moves), a.out)
    elif subj == "flowfree":
        ff = F.load("flowfree", path)
        paths = sr.solve_flowfree(ff, a.budget)
        if paths is None:
            raise Outcome(NO, "unsolvable")
        _emit(F.canonical({c: F._cells(p) for c, p in paths.items()}), a.out)
    elif subj in SOURCES:
        inst = F.load("source", path)
        answer = _oracle(inst)
        if answer is None:
            raise Outcome(NO, "no solution")
        _emit(F.canonical(_answer_data(answer)), a.out)
    else:
        raise UsageError(f"cannot solve {subj!r}; choose from {GAMES + SOURCES}")
    return OK


def _oracle(inst):
    if isinstance(inst, src.OneInThreeInstance):
        return src.oracle_1in3(inst)
    if isinstance(inst, src.Nae3SatInstance):
        return src.oracle_nae(inst)
    if isinstance(inst, src.ThreeDmInstance):
        return src.oracle_3dm(inst)
    return src.oracle_subset_sum(inst)


def _answer_data(answer):
    if isinstance(answer, dict):
        return {"assignment": answer}
    return {"solution": [list(x) if isinstance(x, tuple) else x for x in answer]}


# verify --------------------------------------------------------------------------

def cmd_verify(a) -> int:
    path, sol_path = _need(a.paths, 2, "instance file and solution file")
    subj = a.subject
    if subj == "letterboxed":
        p = F.load("letterboxed", path)
        sol = F.load("letterboxed-solution", sol_path)
        verdict = lb.verify_solution(p, sol, a.k if a.k is not None else len(sol.words))
        problems = verdict.violations
    elif subj == "pips":
        p = F.load("pips", path)
        try:
            problems = pips.verify_pips(p, F.load("pips-placement", sol_path)).violations
        except (IndexError, KeyError) as exc:
            problems = [str(exc)]
    elif subj == "strands":
        inst = F.load("strands", path)
        try:
            part = F.partition_from_data(F.read_json(sol_path), inst)
            problems = st.verify_partition(inst, part, not a.no_diagonal).violations
        except (IndexError, st.InvalidStrands) as exc:
            problems = [str(exc)]
    elif subj == "tiles":
        inst = F.load("tiles", path)
        try:
            rep = tiles.verify_moves(inst, F.load("tiles-moves", sol_path))
        except ValueError as exc:
            problems = [str(exc)]
        else:
            _report({"allDeleted": rep.all_deleted, "unforcedTeleports": rep.unforced_teleports,
                     "forcedTeleports": rep.forced_teleports, "maxCombo": rep.max_combo})
            problems = [] if rep.all_deleted else ["features remain"]
    else:
        raise UsageError(f"cannot verify {subj!r}")
    if problems:
        raise Outcome(NO, "invalid: " + "; ".join(problems))
    print("valid")
    return OK


# reduce / pullback -----------------------------------------------------------------

def _reduce(subj: str, path: str, a):
    """Returns (puzzle format, puzzle, sidecar data)."""
    if subj == "nae3sat-to-letterboxed":
        out = lbr.reduce_nae3sat(_source(path, src.Nae3SatInstance))
        return "letterboxed", out.puzzle, F.nae_sidecar_to_data(out)
    if subj == "3dm-to-letterboxed":
        out = lbr.reduce_3dm(_source(path, src.ThreeDmInstance))
        return "letterboxed", out.puzzle, F.tdm_sidecar_to_data(out)
    if subj == "lift-sides":
        if a.k is None:
            raise UsageError("lift-sides needs --k")
        p = F.load("letterboxed", path)
        lifted, k2 = lbr.lift_sides(p, a.k)
        return "letterboxed", lifted, {"kind": subj, "k": a.k, "kLifted": k2,
                                       "source": F.letterboxed_to_data(p)}
    if subj == "1in3-to-pips":
        inst = _source(path, src.OneInThreeInstance)
        puzzle, layout = pr.reduce_planar_1in3_pips(inst, connected=a.connected)
        return "pips", puzzle, {"kind": subj, "connected": a.connected,
                                "source": F.source_to_data(inst), "layout": F.pips_layout_to_data(layout)}
    if subj == "subsetsum-to-pips":
        inst = _source(path, src.SubsetSumInstance)
        return "pips", pr.reduce_subset_sum(inst), {"kind": subj, "source": F.source_to_data(inst)}
    if subj == "1in3-to-strands":
        inst = _source(path, src.OneInThreeInstance)
        out, layout = sr.reduce_planar_1in3_strands(inst)
        return "strands", out, {"kind": subj, "source": F.source_to_data(inst),
                                "layout": F.strands_layout_to_data(layout)}
    if subj == "block-expansion":
        inst = F.load("strands", path)
        out = sr.expand_blocks(inst)
        return "strands", out.instance, {"kind": subj, "source": F.strands_to_data(inst)}
    if subj == "flowfree-to-strands":
        ff = F.load("flowfree", path)
        return "strands", sr.reduce_flowfree(ff), {"kind": subj, "source": F.flowfree_to_data(ff)}
    raise UsageError(f"unknown reduction {subj!r}; choose from {REDUCTIONS}")


def _source(path: str, cls):
    inst = F.load("source", path)
    if type(inst) is not cls:
        raise UsageError(f"{path} holds a {F.source_to_data(inst)['kind']} instance")
    return inst


def sidecar_path(out: str) -> str:
    return out + ".layout.json"


def cmd_reduce(a) -> int:
    (path,) = _need(a.paths, 1, "source file")
    fmt, puzzle, sidecar = _reduce(a.subject, path, a)
    _emit(F.dumps(fmt, puzzle), a.out)
    if a.out:
        F.write_json(sidecar, sidecar_path(a.out))
        print(f"wrote {a.out} and {sidecar_path(a.out)}", file=sys.stderr)
    if "kLifted" in sidecar:
        print(f"lifted word budget: {sidecar['kLifted']}", file=sys.stderr)
    return OK


def _pullback(subj: str, puzzle, sidecar: dict, solution, diag: bool):
    if subj == "nae3sat-to-letterboxed":
        return {"assignment": lbr.pullback_nae(F.nae_sidecar_from_data(sidecar, puzzle), solution)}
    if subj == "3dm-to-letterboxed":
        m = lbr.pullback_3dm(F.tdm_sidecar_from_data(sidecar, puzzle), solution)
        return {"matching": sorted(list(t) for t in m)}
    if subj == "1in3-to-pips":
        return {"assignment": pr.pullback_1in3_pips(F.pips_layout_from_data(sidecar["layout"]), puzzle, solution)}
    if subj == "subsetsum-to-pips":
        return {"indices": list(pr.pullback_subset_sum(F.source_from_data(sidecar["source"]), puzzle, solution))}
    if subj == "1in3-to-strands":
        layout = F.strands_layout_from_data(sidecar["layout"])
        return {"assignment": sr.pullback_1in3_strands(layout, puzzle, solution, diag)}
    if subj == "flowfree-to-strands":
        ff = F.flowfree_from_data(sidecar["source"])
        paths = sr.pullback_flowfree(ff, puzzle, solution, diag)
        return {"paths": {c: F._cells(p) for c, p in paths.items()}}
    raise UsageError(f"no pullback for {subj!r}")


_PUZZLE_FMT = {
    "nae3sat-to-letterboxed": ("letterboxed", "letterboxed-solution"),
    "3dm-to-letterboxed": ("letterboxed", "letterboxed-solution"),
    "1in3-to-pips": ("pips", "pips-placement"),
    "subsetsum-to-pips": ("pips", "pips-placement"),
    "1in3-to-strands": ("strands", "strands-partition"),
    "flowfree-to-strands": ("strands", "strands-partition"),
}


def cmd_pullback(a) -> int:
    path, side, sol_path = _need(a.paths, 3, "puzzle file, layout sidecar and solution file")
    if a.subject not in _PUZZLE_FMT:
        raise UsageError(f"no pullback for {a.subject!r}")
    pfmt, sfmt = _PUZZLE_FMT[a.subject]
    puzzle = F.load(pfmt, path)
    sidecar = F.read_json(side)
    if sidecar.get("kind") != a.subject:
        raise UsageError(f"{side} is a {sidecar.get('kind')!r} sidecar")
    if sfmt == "strands-partition":
        solution = F.partition_from_data(F.read_json(sol_path), puzzle)
    else:
        solution = F.load(sfmt, sol_path)
    try:
        answer = _pullback(a.subject, puzzle, sidecar, solution, not a.no_diagonal)
    except (lbr.PullbackError, pr.PullbackError, sr.PullbackError) as exc:
        raise Outcome(NO, f"pullback failed: {exc}") from None
    _emit(F.canonical(answer), a.out)
    return OK


# roundtrip -------------------------------------------------------------------------

def roundtrip(subj: str, path: str, k: int | None = None, connected: bool = False,
              diagonal: bool = True, budget: int | None = None) -> dict:
    """Reduce, solve, pull back, verify, and compare with the source oracle."""
    rep: dict = {"reduction": subj}
    if subj in ("nae3sat-to-letterboxed", "3dm-to-letterboxed"):
        nae = subj.startswith("nae")
        inst = _source(path, src.Nae3SatInstance if nae else src.ThreeDmInstance)
        out = lbr.reduce_nae3sat(inst) if nae else lbr.reduce_3dm(inst)
        expected = (src.oracle_nae if nae else src.oracle_3dm)(inst) is not None
        sol = lb.solve_search(out.puzzle, out.k, budget)
        rep["sourceSolvable"], rep["puzzleSolvable"] = expected, sol is not None
        if sol is not None:
            if nae:
                rep["certificateValid"] = src.is_nae_satisfying(inst, lbr.pullback_nae(out, sol))
            else:
                rep["certificateValid"] = src.is_perfect_matching(inst, lbr.pullback_3dm(out, sol))
    elif subj == "lift-sides":
        if k is None:
            raise UsageError("lift-sides needs --k")
        p = F.load("letterboxed", path)
        lifted, k2 = lbr.lift_sides(p, k)
        rep["sourceSolvable"] = lb.solve_search(p, k, budget) is not None
        rep["puzzleSolvable"] = lb.solve_search(lifted, k2, budget) is not None
        rep["kLifted"] = k2
    elif subj == "1in3-to-pips":
        inst = _source(path, src.OneInThreeInstance)
        puzzle, layout = pr.reduce_planar_1in3_pips(inst, connected=connected)
        rep["sourceSolvable"] = src.oracle_1in3(inst) is not None
        sol = pips.solve_pips(puzzle, budget)
        rep["puzzleSolvable"] = sol is not None
        if sol is not None:
            rep["certificateValid"] = src.is_1in3_satisfying(inst, pr.pullback_1in3_pips(layout, puzzle, sol))
    elif subj == "subsetsum-to-pips":
        inst = _source(path, src.SubsetSumInstance)
        puzzle = pr.reduce_subset_sum(inst)
        rep["sourceSolvable"] = src.oracle_subset_sum(inst) is not None
        sol = pips.solve_pips(puzzle, budget)
        rep["puzzleSolvable"] = sol is not None
        if sol is not None:
            rep["certificateValid"] = src.is_subset_sum(inst, pr.pullback_subset_sum(inst, puzzle, sol))
    elif subj == "1in3-to-strands":
        inst = _source(path, src.OneInThreeInstance)
        out, layout = sr.reduce_planar_1in3_strands(inst)
        rep["sourceSolvable"] = src.oracle_1in3(inst) is not None
        sol = st.solve_strands(out, diagonal, budget=budget)
        rep["puzzleSolvable"] = sol is not None
        if sol is not None:
            got = sr.pullback_1in3_strands(layout, out, sol, diagonal)
            rep["certificateValid"] = src.is_1in3_satisfying(inst, got)
    elif subj == "block-expansion":
        inst = F.load("strands", path)
        out = sr.expand_blocks(inst).instance
        rep["sourceSolvable"] = st.solve_strands(inst, diagonal, budget=budget) is not None
        rep["puzzleSolvable"] = st.solve_strands(out, diagonal, budget=budget) is not None
        if rep["sourceSolvable"] and st.solve_strands(inst, False, budget=budget) is None:
            rep["note"] = "source needs diagonal moves; equivalence is not promised"
    elif subj == "flowfree-to-strands":
        ff = F.load("flowfree", path)
        out = sr.reduce_flowfree(ff)
        rep["sourceSolvable"] = sr.solve_flowfree(ff, budget) is not None
        sol = st.solve_strands(out, False, budget=budget)
        rep["puzzleSolvable"] = sol is not None
        if sol is not None:
            rep["certificateValid"] = sr.verify_flow(ff, sr.pullback_flowfree(ff, out, sol))
    else:
        raise UsageError(f"unknown reduction {subj!r}; choose from {REDUCTIONS}")
    rep["pass"] = rep["sourceSolvable"] == rep["puzzleSolvable"] and rep.get("certificateValid", True)
    return rep


def cmd_roundtrip(a) -> int:
    (path,) = _need(a.paths, 1, "source file")
    rep = roundtrip(a.subject, path, a.k, a.connected, not a.no_diagonal, a.budget)
    _report(rep)
    return OK if rep["pass"] else NO


# render ------------------------------------------------------------------------------

def cmd_render(a) -> int:
    if not 1 <= len(a.paths) <= 2:
        raise UsageError("expected an instance file and optionally a solution file")
    path, sol_path = a.paths[0], (a.paths[1] if len(a.paths) == 2 else None)
    subj = a.subject
    svg = None
    if subj == "letterboxed":
        p = F.load("letterboxed", path)
        sol = F.load("letterboxed-solution", sol_path) if sol_path else None
        text = render.letterboxed_ascii(p, sol)
    elif subj == "pips":
        p = F.load("pips", path)
        sol = F.load("pips-placement", sol_path) if sol_path else None
        text, svg = render.pips_ascii(p, sol), render.pips_svg(p, sol)
    elif subj == "strands":
        inst = F.load("strands", path)
        sol = F.partition_from_data(F.read_json(sol_path), inst) if sol_path else None
        text, svg = render.strands_ascii(inst, sol), render.strands_svg(inst, sol)
    elif subj == "tiles":
        inst = F.load("tiles", path)
        text = render.tiles_ascii(inst, F.load("tiles-moves", sol_path) if sol_path else None)
    else:
        raise UsageError(f"cannot render {subj!r}")
    if (a.svg or a.format == "svg") and svg is None:
        raise UsageError(f"no SVG rendering for {subj}")
    if a.format == "csv":
        raise UsageError("render supports ascii and svg")
    if a.svg:
        Path(a.svg).write_text(svg, encoding="utf-8")
    sys.stdout.write(svg if a.format == "svg" else text)
    return OK


# gen -------------------------------------------------------------------------------

def cmd_gen(a) -> int:
    if a.paths:
        raise UsageError("gen takes no paths; use -o")
    seed = 0 if a.seed is None else a.seed
    subj = a.subject
    if subj == "letterboxed":
        text = F.dumps("letterboxed", lb.random_puzzle(seed))
    elif subj == "strands":
        text = F.dumps("strands", st.random_strands(seed))
    elif subj == "tiles":
        text = F.dumps("tiles", tiles.random_tiles(seed))
    elif subj in SOURCES:
        text = F.dumps("source", src.generate_random(subj, seed))
    else:
        raise UsageError(f"cannot generate {subj!r}")
    _emit(text, a.out)
    return OK


# bench -------------------------------------------------------------------------------

def _bench_case(family: str, seed: int, budget: int | None) -> bool:
    if family == "letterboxed":
        return lb.min_words_dp(lb.random_puzzle(seed), budget) is not None
    if family == "pips-1in3":
        inst = src.generate_random("1in3", seed, num_vars=5, num_clauses=3)
        return pips.solve_pips(pr.reduce_planar_1in3_pips(inst, check=False)[0], budget) is not None
    if family == "subsetsum-pips":
        inst = src.generate_random("subsetsum", seed)
        return pips.solve_pips(pr.reduce_subset_sum(inst), budget) is not None
    if family == "strands":
        return st.solve_strands(st.random_strands(seed, plant=seed % 2 == 0), budget=budget) is not None
    if family == "tiles":
        return tiles.solve_greedy(tiles.random_tiles(seed)) is not None
    raise UsageError(f"unknown bench family {family!r}; choose from {BENCH_FAMILIES + ('all',)}")


def cmd_bench(a) -> int:
    if a.format not in (None, "csv"):
        raise UsageError("bench writes CSV only")
    families = BENCH_FAMILIES if a.subject == "all" else (a.subject,)
    start = 0 if a.seed is None else a.seed
    rows = []
    for fam in families:
        for seed in range(start, start + a.count):
            t0 = time.perf_counter()
            try:
                status = "solvable" if _bench_case(fam, seed, a.budget) else "unsolvable"
            except BudgetExhausted:
                status = "budget"
            rows.append((fam, seed, status, f"{time.perf_counter() - t0:.6f}"))
    out = open(a.out, "w", newline="", encoding="utf-8") if a.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("family", "seed", "status", "seconds"))
        w.writerows(rows)
    finally:
        if a.out:
            out.close()
    return OK


COMMANDS: dict[str, Callable] = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "reduce": cmd_reduce,
    "pullback": cmd_pullback,
    "roundtrip": cmd_roundtrip,
    "render": cmd_render,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    if args.budget is None:
        args.budget = default_budget()
    try:
        _check_flags(args)
        return COMMANDS[args.command](args)
    except Outcome as exc:
        print(exc, file=sys.stderr)
        return exc.status
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return BUDGET
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except (OSError, F.FormatError, json.JSONDecodeError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return USAGE
    except (ValueError, KeyError, IndexError) as exc:
        # malformed or invalid instance contents
        print(f"invalid input: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
