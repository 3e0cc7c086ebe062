"""Source problems for the reductions: instances, verifiers, brute-force
oracles, the rectilinear-embedding validator and seeded generators.

Assignments are ``dict[str, bool]``. Oracles enumerate exhaustively and
raise :class:`BudgetExhausted` instead of running past ``limit`` steps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from ._common import ORACLE_LIMIT, BudgetExhausted, Verdict

ABOVE = "above"
BELOW = "below"


class InvalidInstance(ValueError):
    pass


def _check_clauses(variables: Sequence[str], clauses: Sequence[Sequence[str]]) -> None:
    known = set(variables)
    if len(known) != len(variables):
        raise InvalidInstance("duplicate variable names")
    for c in clauses:
        if len(c) != 3:
            raise InvalidInstance(f"clause {tuple(c)} does not have three variables")
        if len(set(c)) != 3:
            raise InvalidInstance(f"clause {tuple(c)} repeats a variable")
        for v in c:
            if not isinstance(v, str) or v.startswith(("-", "~", "!")):
                raise InvalidInstance(f"clause {tuple(c)} contains a negated literal {v!r}")
            if v not in known:
                raise InvalidInstance(f"clause {tuple(c)} uses unknown variable {v!r}")


@dataclass(frozen=True)
class Nae3SatInstance:
    variables: tuple[str, ...]
    clauses: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        _check_clauses(self.variables, self.clauses)

    @classmethod
    def of(cls, clauses: Iterable[Sequence[str]], variables: Iterable[str] | None = None):
        clauses = tuple(tuple(c) for c in clauses)
        if variables is None:
            variables = list(dict.fromkeys(v for c in clauses for v in c))
        return cls(tuple(variables), clauses)


@dataclass(frozen=True)
class OneInThreeInstance:
    """Positive 1-in-3-SAT formula with a column-slot rectilinear embedding.

    ``sides[i]`` and ``levels[i]`` place clause ``i`` above or below the line
    of variables at a nesting height; ``slots[i][t]`` is the integer column
    of the leg joining clause ``i`` to its variable ``clauses[i][t]``.
    """

    variables: tuple[str, ...]
    clauses: tuple[tuple[str, str, str], ...]
    sides: tuple[str, ...]
    levels: tuple[int, ...]
    slots: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        _check_clauses(self.variables, self.clauses)
        n = len(self.clauses)
        if not (len(self.sides) == len(self.levels) == len(self.slots) == n):
            raise InvalidInstance("embedding must give side, level and slots for every clause")

    def leg_column(self, clause: int, var: str) -> int:
        return self.slots[clause][self.clauses[clause].index(var)]

    def incidences(self, var: str) -> list[tuple[int, int]]:
        """``(slot, clause index)`` pairs for ``var``, left to right."""
        out = []
        for ci, c in enumerate(self.clauses):
            if var in c:
                out.append((self.leg_column(ci, var), ci))
        return sorted(out)

    def interval(self, clause: int) -> tuple[int, int]:
        s = self.slots[clause]
        return min(s), max(s)

    def formula(self) -> Nae3SatInstance:
        return Nae3SatInstance(self.variables, self.clauses)


@dataclass(frozen=True)
class ThreeDmInstance:
    """Triples are ``(x, y, z)`` element indices in ``range(n)``."""

    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInstance("n must be at least 1")
        for t in self.triples:
            if len(t) != 3 or not all(0 <= e < self.n for e in t):
                raise InvalidInstance(f"triple {tuple(t)} references an unknown element")
        if len(set(self.triples)) != len(self.triples):
            raise InvalidInstance("duplicate triple")


@dataclass(frozen=True)
class SubsetSumInstance:
    items: tuple[int, ...]
    target: int

    def __post_init__(self):
        if any(x < 1 for x in self.items):
            raise InvalidInstance("items must be positive integers")
        if self.target < 0:
            raise InvalidInstance("target must be non-negative")


# --------------------------------------------------------------------------
# verifiers


def _full(assignment, variables) -> bool:
    return all(v in assignment for v in variables)


def is_nae_satisfying(inst: Nae3SatInstance, assignment: dict[str, bool]) -> bool:
    if not _full(assignment, inst.variables):
        return False
    return all(len({assignment[v] for v in c}) == 2 for c in inst.clauses)


def is_1in3_satisfying(inst: OneInThreeInstance | Nae3SatInstance, assignment: dict[str, bool]) -> bool:
    if not _full(assignment, inst.variables):
        return False
    return all(sum(assignment[v] for v in c) == 1 for c in inst.clauses)


def is_perfect_matching(inst: ThreeDmInstance, chosen: Iterable[tuple[int, int, int]]) -> bool:
    chosen = list(chosen)
    if len(chosen) != inst.n or any(t not in inst.triples for t in chosen):
        return False
    return all(len({t[axis] for t in chosen}) == inst.n for axis in range(3))


def is_subset_sum(inst: SubsetSumInstance, indices: Iterable[int]) -> bool:
    idx = list(indices)
    if len(set(idx)) != len(idx) or any(not 0 <= i < len(inst.items) for i in idx):
        return False
    return sum(inst.items[i] for i in idx) == inst.target


# --------------------------------------------------------------------------
# oracles


def _guard(size: int, limit: int, what: str) -> None:
    if size > limit:
        raise BudgetExhausted(limit, what)


def _assignments(variables):
    for bits in product((False, True), repeat=len(variables)):
        yield dict(zip(variables, bits))


def oracle_nae(inst: Nae3SatInstance, limit: int = ORACLE_LIMIT) -> dict[str, bool] | None:
    """First NAE-satisfying assignment in lexicographic order (False < True)."""
    _guard(2 ** len(inst.variables), limit, "NAE-3SAT oracle")
    for a in _assignments(inst.variables):
        if is_nae_satisfying(inst, a):
            return a
    return None


def oracle_1in3(inst: OneInThreeInstance | Nae3SatInstance, limit: int = ORACLE_LIMIT) -> dict[str, bool] | None:
    """First 1-in-3-satisfying assignment in lexicographic order (False < True)."""
    _guard(2 ** len(inst.variables), limit, "1-in-3-SAT oracle")
    for a in _assignments(inst.variables):
        if is_1in3_satisfying(inst, a):
            return a
    return None


def oracle_3dm(inst: ThreeDmInstance, limit: int = ORACLE_LIMIT) -> tuple[tuple[int, int, int], ...] | None:
    """First perfect matching among the size-n subsets of the triples."""
    from math import comb

    _guard(comb(len(inst.triples), inst.n), limit, "3DM oracle")
    for chosen in combinations(inst.triples, inst.n):
        if is_perfect_matching(inst, chosen):
            return chosen
    return None


def oracle_subset_sum(inst: SubsetSumInstance, limit: int = ORACLE_LIMIT) -> tuple[int, ...] | None:
    """First index subset (by bitmask order) whose items sum to the target."""
    n = len(inst.items)
    _guard(2**n, limit, "subset-sum oracle")
    for mask in range(2**n):
        idx = tuple(i for i in range(n) if mask >> i & 1)
        if sum(inst.items[i] for i in idx) == inst.target:
            return idx
    return None


# --------------------------------------------------------------------------
# rectilinear embeddings


def validate_embedding(inst: OneInThreeInstance) -> Verdict:
    """Named violations of the slot/level embedding (empty when valid)."""
    problems = []
    order = {v: i for i, v in enumerate(inst.variables)}
    all_slots = [s for sl in inst.slots for s in sl]
    if len(set(all_slots)) != len(all_slots):
        problems.append("slots: two legs share a column")

    for ci, c in enumerate(inst.clauses):
        if inst.sides[ci] not in (ABOVE, BELOW):
            problems.append(f"side: clause {ci} has side {inst.sides[ci]!r}")
        if not isinstance(inst.levels[ci], int) or inst.levels[ci] < 1:
            problems.append(f"level: clause {ci} needs a positive integer level")
        if len(inst.slots[ci]) != len(c):
            problems.append(f"legs: clause {ci} has {len(inst.slots[ci])} legs for {len(c)} variables")

    # leg columns of each variable form a block, blocks ordered like the variables
    span = {}
    for ci, c in enumerate(inst.clauses):
        for v, s in zip(c, inst.slots[ci]):
            lo, hi = span.get(v, (s, s))
            span[v] = (min(lo, s), max(hi, s))
    placed = sorted(span, key=order.__getitem__)
    for a, b in zip(placed, placed[1:]):
        if span[a][1] >= span[b][0]:
            problems.append(f"order: legs of {a} and {b} are not in line order")
    for ci, c in enumerate(inst.clauses):
        pairs = sorted(zip(inst.slots[ci], c))
        if [order[v] for _s, v in pairs] != sorted(order[v] for v in c):
            problems.append(f"order: legs of clause {ci} cross each other")

    for side in (ABOVE, BELOW):
        idx = [i for i in range(len(inst.clauses)) if inst.sides[i] == side]
        for a, b in combinations(idx, 2):
            la, ra = inst.interval(a)
            lb, rb = inst.interval(b)
            if ra < lb or rb < la:
                continue
            if la < lb and rb < ra:
                inner, outer = b, a
            elif lb < la and ra < rb:
                inner, outer = a, b
            else:
                problems.append(f"crossing: clauses {a} and {b} overlap on the {side} side")
                continue
            if inst.levels[outer] <= inst.levels[inner]:
                problems.append(
                    f"level: clause {outer} encloses clause {inner} but is not strictly higher"
                )
        for a in idx:
            for b in idx:
                if a == b or inst.levels[b] >= inst.levels[a]:
                    continue
                lb, rb = inst.interval(b)
                for col in inst.slots[a]:
                    if lb < col < rb:
                        problems.append(f"leg: a leg of clause {a} passes through the body of clause {b}")
    return Verdict.of(problems)


def _compatible(c1: Sequence[int], c2: Sequence[int]) -> bool:
    """Can two clauses (variable-position triples, sorted) share a side?"""
    l1, m1, r1 = c1
    l2, m2, r2 = c2
    if r1 <= l2 or r2 <= l1:
        return True
    for (lo, mid, hi), (a, _b, z) in ((c1, c2), (c2, c1)):
        # second nested inside one arm of the first
        if (lo <= a and z <= mid) or (mid <= a and z <= hi):
            if (a, z) != (lo, hi):
                return True
    return False


def embed(variables: Sequence[str], clauses: Sequence[Sequence[str]],
          sides: Sequence[str] | None = None) -> OneInThreeInstance:
    """Build a slot/level embedding for a formula.

    Sides are taken from ``sides`` when given, otherwise assigned greedily
    (above first). Raises :class:`InvalidInstance` when no planar placement
    exists under that assignment.
    """
    variables = tuple(variables)
    clauses = tuple(tuple(c) for c in clauses)
    _check_clauses(variables, clauses)
    pos = {v: i for i, v in enumerate(variables)}
    clauses = tuple(tuple(sorted(c, key=pos.__getitem__)) for c in clauses)
    tri = [tuple(pos[v] for v in c) for c in clauses]

    chosen: list[str] = []
    for ci, t in enumerate(tri):
        options = [sides[ci]] if sides is not None else [ABOVE, BELOW]
        for side in options:
            if all(_compatible(t, tri[o]) for o in range(ci) if chosen[o] == side):
                chosen.append(side)
                break
        else:
            raise InvalidInstance(f"clause {clauses[ci]} cannot be embedded without crossings")

    def contains(outer: int, inner: int) -> bool:
        lo, _m, hi = tri[outer]
        a, _b, z = tri[inner]
        return lo <= a and z <= hi and (a, z) != (lo, hi) or (
            (a, z) == (lo, hi) and False
        )

    levels = [1] * len(clauses)
    changed = True
    while changed:
        changed = False
        for a in range(len(clauses)):
            for b in range(len(clauses)):
                if a != b and chosen[a] == chosen[b] and contains(a, b) and levels[a] <= levels[b]:
                    levels[a] = levels[b] + 1
                    changed = True

    # order the legs arriving at each variable
    slots = [[0, 0, 0] for _ in clauses]
    col = 0
    for vi, v in enumerate(variables):
        legs = []
        for ci, t in enumerate(tri):
            if vi not in t:
                continue
            role = t.index(vi)  # 0 left end, 1 middle, 2 right end
            lvl = levels[ci]
            if role == 2:
                key = (0, lvl)
            elif role == 1:
                key = (1, 0)
            else:
                key = (2, -lvl)
            side_rank = 0 if chosen[ci] == ABOVE else 1
            legs.append((side_rank, key, ci, role))
        legs.sort()
        for _side, _key, ci, role in legs:
            slots[ci][role] = col
            col += 1
    inst = OneInThreeInstance(
        variables=variables,
        clauses=clauses,
        sides=tuple(chosen),
        levels=tuple(levels),
        slots=tuple(tuple(s) for s in slots),
    )
    verdict = validate_embedding(inst)
    if not verdict:
        raise InvalidInstance("; ".join(verdict.violations))
    return inst


def three_clause_example() -> OneInThreeInstance:
    """The three-clause formula over x1..x5 with its hand-drawn embedding."""
    return OneInThreeInstance(
        variables=("x1", "x2", "x3", "x4", "x5"),
        clauses=(("x1", "x2", "x3"), ("x1", "x3", "x5"), ("x2", "x4", "x5")),
        sides=(ABOVE, ABOVE, BELOW),
        levels=(1, 2, 1),
        slots=((1, 2, 4), (0, 5, 8), (3, 6, 7)),
    )


# --------------------------------------------------------------------------
# generators

KINDS = ("nae3sat", "1in3", "3dm", "subsetsum")


def generate_random(kind: str, seed: int, **params):
    """Seeded random instance of ``kind``; same arguments give the same instance.

    ``nae3sat``/``1in3``: ``num_vars`` (>= 3), ``num_clauses``.
    ``3dm``: ``n``, ``num_triples``.  ``subsetsum``: ``size``, ``max_value``,
    ``target`` (optional).
    """
    rng = random.Random(seed)
    if kind == "nae3sat":
        nv, nc = params.get("num_vars", 4), params.get("num_clauses", 3)
        if nv < 3 or nc < 1:
            raise ValueError("need at least 3 variables and 1 clause")
        if 3 * nc < nv:
            raise ValueError(f"{nc} clauses cannot use all {nv} variables")
        variables = tuple(f"x{i + 1}" for i in range(nv))
        # resample until every variable occurs, so the formula really has num_vars variables
        for _ in range(10_000):
            clauses = tuple(tuple(rng.sample(variables, 3)) for _ in range(nc))
            if all(any(v in c for c in clauses) for v in variables):
                return Nae3SatInstance(variables, clauses)
        raise ValueError("could not draw clauses covering every variable")
    if kind == "1in3":
        nv, nc = params.get("num_vars", 5), params.get("num_clauses", 2)
        if nv < 3 or nc < 0:
            raise ValueError("need at least 3 variables")
        variables = tuple(f"x{i + 1}" for i in range(nv))
        pos = {v: i for i, v in enumerate(variables)}
        clauses: list[tuple[str, ...]] = []
        sides: list[str] = []
        attempts = 0
        while len(clauses) < nc:
            attempts += 1
            if attempts > 1000 * (nc + 1):
                raise ValueError("could not place that many clauses without crossings")
            c = tuple(sorted(rng.sample(variables, 3), key=pos.__getitem__))
            tri = tuple(pos[v] for v in c)
            options = [ABOVE, BELOW]
            rng.shuffle(options)
            for side in options:
                if all(
                    _compatible(tri, tuple(pos[v] for v in clauses[o]))
                    for o in range(len(clauses))
                    if sides[o] == side
                ):
                    clauses.append(c)
                    sides.append(side)
                    break
        return embed(variables, clauses, sides)
    if kind == "3dm":
        n = params.get("n", 2)
        m = params.get("num_triples", 2 * n)
        universe = list(product(range(n), repeat=3))
        m = min(m, len(universe))
        return ThreeDmInstance(n, tuple(sorted(rng.sample(universe, m))))
    if kind == "subsetsum":
        size = params.get("size", 4)
        hi = params.get("max_value", 10)
        if size < 1 or hi < 1:
            raise ValueError("size and max_value must be positive")
        items = tuple(rng.randint(1, hi) for _ in range(size))
        target = params.get("target")
        if target is None:
            target = rng.randint(0, sum(items))
        return SubsetSumInstance(items, target)
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
