"""Letter Boxed with ``S`` sides: data model, verifier and exact solvers.

Symbols are strings (not necessarily single characters) and a word is a
tuple of symbols.  Sides are multisets stored as sorted tuples.  Side indices
inside a :class:`LetterBoxedSolution` are 1-based; dictionary indices are
0-based.
"""

from __future__ import annotations

import random
import sys
from collections import Counter, deque
from contextlib import contextmanager
from dataclasses import dataclass
from itertools import chain
from typing import Iterable, Iterator, Mapping, Sequence

from ._common import BudgetExhausted, Verdict, _Counter

Word = tuple[str, ...]


class InvalidPuzzle(ValueError):
    pass


@dataclass(frozen=True)
class LetterBoxedPuzzle:
    alphabet: tuple[str, ...]
    dictionary: tuple[Word, ...]
    sides: tuple[tuple[str, ...], ...]

    @property
    def num_sides(self) -> int:
        return len(self.sides)

    @property
    def side_size(self) -> int:
        return len(self.sides[0])

    @property
    def max_word_length(self) -> int:
        return max((len(w) for w in self.dictionary), default=0)

    def side_counts(self) -> list[Counter]:
        return [Counter(side) for side in self.sides]

    def certificate_bound(self) -> int:
        """Word count that suffices whenever the puzzle is solvable at all."""
        return self.num_sides**2 * len(self.alphabet) * self.side_size


@dataclass(frozen=True)
class LetterBoxedSolution:
    words: tuple[int, ...]
    side_trace: tuple[int, ...]


def _as_word(entry) -> Word:
    if isinstance(entry, str):
        return tuple(entry)
    return tuple(str(s) for s in entry)


def make_puzzle(
    sides: Sequence[Iterable[str]],
    dictionary: Sequence,
    alphabet: Iterable[str] | None = None,
) -> LetterBoxedPuzzle:
    """Build and validate a puzzle; the alphabet is inferred when omitted.

    String dictionary entries are split into single-character symbols; pass
    lists for multi-character symbols.
    """
    words = [_as_word(w) for w in dictionary]
    side_lists = [list(s) for s in sides]
    if alphabet is None:
        seen: dict[str, None] = {}
        for sym in chain(chain.from_iterable(side_lists), chain.from_iterable(words)):
            seen.setdefault(sym)
        alphabet = list(seen)
    return validate_puzzle(
        {"alphabet": list(alphabet), "dictionary": words, "sides": side_lists}
    )


def validate_puzzle(raw: Mapping) -> LetterBoxedPuzzle:
    """Check a raw ``{alphabet, dictionary, sides}`` mapping and freeze it."""
    try:
        alphabet_raw = raw["alphabet"]
        dictionary_raw = raw["dictionary"]
        sides_raw = raw["sides"]
    except KeyError as exc:
        raise InvalidPuzzle(f"missing key {exc.args[0]!r}") from None

    alphabet = tuple(dict.fromkeys(str(s) for s in alphabet_raw))
    alpha = set(alphabet)
    sides = [tuple(str(s) for s in side) for side in sides_raw]
    if len(sides) < 2:
        raise InvalidPuzzle("a puzzle needs at least two sides")
    sizes = {len(s) for s in sides}
    if len(sizes) != 1:
        raise InvalidPuzzle(
            f"unequal side cardinality: {[len(s) for s in sides]}"
        )
    if sizes == {0}:
        raise InvalidPuzzle("sides must hold at least one symbol")
    for i, side in enumerate(sides):
        for sym in side:
            if sym not in alpha:
                raise InvalidPuzzle(f"symbol {sym!r} on side {i + 1} is outside the alphabet")

    words = [_as_word(w) for w in dictionary_raw]
    seen = set()
    for w in words:
        if not w:
            raise InvalidPuzzle("empty dictionary word")
        for sym in w:
            if sym not in alpha:
                raise InvalidPuzzle(f"dictionary word {w!r} uses symbol {sym!r} outside the alphabet")
        if w in seen:
            raise InvalidPuzzle(f"duplicate dictionary word {w!r}")
        seen.add(w)
    return LetterBoxedPuzzle(
        alphabet=alphabet,
        dictionary=tuple(words),
        sides=tuple(tuple(sorted(s)) for s in sides),
    )


def verify_solution(
    puzzle: LetterBoxedPuzzle, sol: LetterBoxedSolution, k: int
) -> Verdict:
    """Check ``sol`` against the four solution conditions and the budget ``k``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    S = puzzle.num_sides
    for wi in sol.words:
        if not 0 <= wi < len(puzzle.dictionary):
            raise IndexError(f"word index {wi} out of range")
    for s in sol.side_trace:
        if not 1 <= s <= S:
            raise IndexError(f"side index {s} out of range 1..{S}")
    words = [puzzle.dictionary[i] for i in sol.words]
    sigma = [c for w in words for c in w]
    if len(sol.side_trace) != len(sigma):
        raise ValueError(
            f"side trace has {len(sol.side_trace)} entries, expected {len(sigma)}"
        )

    problems = []
    if len(words) > k:
        problems.append(f"uses {len(words)} words, more than k={k}")
    if not words:
        problems.append("no words")

    for i in range(len(words) - 1):
        if words[i][-1] != words[i + 1][0]:
            problems.append(f"chain: word {i + 1} does not start where word {i} ends")

    ends = set()
    pos = 0
    for w in words:
        pos += len(w)
        ends.add(pos - 1)

    trace = sol.side_trace
    for i in range(len(sigma) - 1):
        if i in ends:
            if trace[i] != trace[i + 1]:
                problems.append(f"pivot: position {i} changes side across a word boundary")
        elif trace[i] == trace[i + 1]:
            problems.append(f"same side {trace[i]} used consecutively at position {i}")

    counts = puzzle.side_counts()
    covered = Counter()
    for j, (sym, side) in enumerate(zip(sigma, trace)):
        if counts[side - 1][sym] == 0:
            problems.append(f"symbol {sym!r} at position {j} is not on side {side}")
        if j == len(sigma) - 1 or j not in ends:
            covered[side - 1, sym] += 1
    for side_idx, cnt in enumerate(counts):
        for sym, mult in cnt.items():
            if covered[side_idx, sym] < mult:
                problems.append(
                    f"coverage: {sym!r} on side {side_idx + 1} covered "
                    f"{covered[side_idx, sym]} of {mult} times"
                )
    return Verdict.of(problems)


# --------------------------------------------------------------------------
# shared residual bookkeeping


class _Residuals:
    """Flat tuple encoding of per-(side, symbol) remaining counts."""

    def __init__(self, puzzle: LetterBoxedPuzzle):
        self.puzzle = puzzle
        self.index: dict[tuple[int, str], int] = {}
        initial = []
        for side_idx, cnt in enumerate(puzzle.side_counts()):
            for sym in sorted(cnt):
                self.index[side_idx, sym] = len(initial)
                initial.append(cnt[sym])
        self.initial = tuple(initial)
        # sides[sym] -> side indices (0-based, ascending) holding sym
        self.sides_of: dict[str, tuple[int, ...]] = {}
        for (side_idx, sym) in self.index:
            self.sides_of.setdefault(sym, ())
            self.sides_of[sym] += (side_idx,)

    def dec(self, r: tuple[int, ...], side: int, sym: str) -> tuple[int, ...]:
        idx = self.index.get((side, sym))
        if idx is None or r[idx] == 0:
            return r
        lst = list(r)
        lst[idx] -= 1
        return tuple(lst)


# --------------------------------------------------------------------------
# 0-1 BFS over lazily expanded game states

_START = "start"
_END = "end"


def _successors(res: _Residuals, state, cont_weight: int, by_first: dict):
    D = res.puzzle.dictionary
    if state == _START:
        for w_idx, w in enumerate(D):
            for i in res.sides_of.get(w[0], ()):
                yield (i, res.dec(res.initial, i, w[0]), w_idx, 0), 0
        return
    side, r, w_idx, p = state
    word = D[w_idx]
    if p < len(word) - 1:
        c = word[p + 1]
        for j in res.sides_of.get(c, ()):
            if j != side:
                yield (j, res.dec(r, j, c), w_idx, p + 1), cont_weight
        return
    if not any(r):
        yield _END, 1
    for w2 in by_first.get(word[-1], ()):
        nxt = D[w2]
        if len(nxt) == 1:
            yield (side, r, w2, 0), 1
            continue
        c = nxt[1]
        for j in res.sides_of.get(c, ()):
            if j != side:
                yield (j, res.dec(r, j, c), w2, 1), 1


def _shortest_path(puzzle: LetterBoxedPuzzle, cont_weight: int, budget: int | None):
    res = _Residuals(puzzle)
    by_first: dict[str, list[int]] = {}
    for idx, w in enumerate(puzzle.dictionary):
        by_first.setdefault(w[0], []).append(idx)
    counter = _Counter(budget, "letter-boxed DP")
    dist = {_START: 0}
    parent = {_START: None}
    dq = deque([(0, _START)])
    while dq:
        d, u = dq.popleft()
        if d > dist[u]:
            continue
        if u == _END:
            path = []
            node = u
            while node is not None:
                path.append(node)
                node = parent[node]
            path.reverse()
            return d, path[1:-1]
        counter.tick()
        for v, wgt in _successors(res, u, cont_weight, by_first):
            nd = d + wgt
            if nd < dist.get(v, nd + 1):
                dist[v] = nd
                parent[v] = u
                if wgt == 0:
                    dq.appendleft((nd, v))
                else:
                    dq.append((nd, v))
    return None, None


def _path_to_solution(puzzle: LetterBoxedPuzzle, states) -> LetterBoxedSolution:
    D = puzzle.dictionary
    words: list[int] = []
    trace: list[int] = []
    prev = None
    for st in states:
        side, _r, w_idx, p = st
        if prev is None:
            words.append(w_idx)
            trace.append(side + 1)
        else:
            pside, _pr, pw, pp = prev
            continuation = pw == w_idx and p == pp + 1 and pp < len(D[pw]) - 1
            if continuation:
                trace.append(side + 1)
            else:
                words.append(w_idx)
                trace.append(pside + 1)
                if p == 1:
                    trace.append(side + 1)
        prev = st
    return LetterBoxedSolution(tuple(words), tuple(trace))


def min_words_dp(puzzle: LetterBoxedPuzzle, budget: int | None = None) -> int | None:
    """Minimum number of words solving ``puzzle``; ``None`` if unsolvable."""
    d, _ = _shortest_path(puzzle, 0, budget)
    return d


def min_letters_dp(puzzle: LetterBoxedPuzzle, budget: int | None = None) -> int | None:
    """Minimum number of letter placements (pivots counted once); ``None`` if unsolvable."""
    d, _ = _shortest_path(puzzle, 1, budget)
    return d


def solve_dp(puzzle: LetterBoxedPuzzle, budget: int | None = None) -> LetterBoxedSolution | None:
    """A word-minimal solution reconstructed from the shortest path."""
    d, path = _shortest_path(puzzle, 0, budget)
    if d is None:
        return None
    return _path_to_solution(puzzle, path)


# --------------------------------------------------------------------------
# memoized depth-first search


@contextmanager
def _recursion(limit: int) -> Iterator[None]:
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def solve_search(
    puzzle: LetterBoxedPuzzle, k_max: int, budget: int | None = None
) -> LetterBoxedSolution | None:
    """Find a solution with at most ``k_max`` words, or return ``None``.

    Depth-first over (word, position, side, residual, words used) with a
    failure memo. When the current word is the last one allowed, the search
    prunes residuals that the rest of the word cannot cover. Raises
    :class:`BudgetExhausted` when the node budget runs out.
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    res = _Residuals(puzzle)
    D = puzzle.dictionary
    by_first: dict[str, list[int]] = {}
    for idx, w in enumerate(D):
        by_first.setdefault(w[0], []).append(idx)
    # suffix[w][p] = Counter of symbols in word[p:]
    suffix = []
    for w in D:
        acc = [Counter() for _ in range(len(w) + 1)]
        for p in range(len(w) - 1, -1, -1):
            acc[p] = acc[p + 1].copy()
            acc[p][w[p]] += 1
        suffix.append(acc)
    sym_slots: dict[str, list[int]] = {}
    for (side, sym), idx in res.index.items():
        sym_slots.setdefault(sym, []).append(idx)

    counter = _Counter(budget, "letter-boxed search")
    failed: dict[tuple, int] = {}
    words: list[int] = []
    trace: list[int] = []

    def hopeless(w_idx: int, pos: int, r: tuple[int, ...]) -> bool:
        rest = suffix[w_idx][pos + 1]
        for sym, idxs in sym_slots.items():
            need = sum(r[i] for i in idxs)
            if need > rest[sym]:
                return True
        return False

    def dfs(w_idx: int, pos: int, side: int, r: tuple[int, ...], used: int) -> bool:
        key = (w_idx, pos, side, r)
        if failed.get(key, k_max + 1) <= used:
            return False
        counter.tick()
        word = D[w_idx]
        if used == k_max and hopeless(w_idx, pos, r):
            failed[key] = used
            return False
        if pos == len(word) - 1:
            if not any(r):
                return True
            if used < k_max:
                for w2 in by_first.get(word[-1], ()):
                    nxt = D[w2]
                    words.append(w2)
                    trace.append(side + 1)
                    if len(nxt) == 1:
                        if dfs(w2, 0, side, r, used + 1):
                            return True
                    else:
                        c = nxt[1]
                        for j in res.sides_of.get(c, ()):
                            if j == side:
                                continue
                            trace.append(j + 1)
                            if dfs(w2, 1, j, res.dec(r, j, c), used + 1):
                                return True
                            trace.pop()
                    trace.pop()
                    words.pop()
        else:
            c = word[pos + 1]
            for j in res.sides_of.get(c, ()):
                if j == side:
                    continue
                trace.append(j + 1)
                if dfs(w_idx, pos + 1, j, res.dec(r, j, c), used):
                    return True
                trace.pop()
        failed[key] = min(failed.get(key, k_max + 1), used)
        return False

    depth = sum(len(w) for w in D) * k_max + 1000
    with _recursion(min(depth, 200_000)):
        for w_idx, w in enumerate(D):
            for i in res.sides_of.get(w[0], ()):
                words.append(w_idx)
                trace.append(i + 1)
                if dfs(w_idx, 0, i, res.dec(res.initial, i, w[0]), 1):
                    return LetterBoxedSolution(tuple(words), tuple(trace))
                trace.pop()
                words.pop()
    return None


# --------------------------------------------------------------------------
# brute-force oracle


def _word_traces(res: _Residuals, word: Word, first_side: int | None) -> Iterator[tuple[int, ...]]:
    """All side assignments for ``word`` (0-based sides), optionally pinning the first."""
    choices = [res.sides_of.get(c, ()) for c in word]
    if first_side is not None:
        if first_side not in choices[0]:
            return
        choices[0] = (first_side,)

    def rec(p: int, acc: list[int]):
        if p == len(word):
            yield tuple(acc)
            return
        for s in choices[p]:
            if acc and acc[-1] == s:
                continue
            acc.append(s)
            yield from rec(p + 1, acc)
            acc.pop()

    yield from rec(0, [])


def brute_force_min_words(
    puzzle: LetterBoxedPuzzle, k_cap: int | None = None, budget: int | None = None
) -> int | None:
    """Oracle: breadth-first over whole words, enumerating every side trace.

    Configurations after each word are (end side, end symbol, residual); a
    configuration seen at an earlier word count is never expanded again.
    The word count is capped by the certificate bound (and ``k_cap``).
    """
    cap = puzzle.certificate_bound()
    if k_cap is not None:
        cap = min(cap, k_cap)
    res = _Residuals(puzzle)
    counter = _Counter(budget, "letter-boxed brute force")
    D = puzzle.dictionary

    def apply(r, word, tr, skip_first):
        for p, (sym, s) in enumerate(zip(word, tr)):
            if p == 0 and skip_first:
                continue
            r = res.dec(r, s, sym)
        return r

    frontier = set()
    for w in D:
        for tr in _word_traces(res, w, None):
            counter.tick()
            frontier.add((tr[-1], w[-1], apply(res.initial, w, tr, False)))
    seen = set(frontier)
    k = 1
    while frontier and k <= cap:
        if any(not any(r) for (_s, _c, r) in frontier):
            return k
        if k == cap:
            break
        nxt = set()
        for side, sym, r in frontier:
            for w in D:
                if w[0] != sym:
                    continue
                for tr in _word_traces(res, w, side):
                    counter.tick()
                    cfg = (tr[-1], w[-1], apply(r, w, tr, True))
                    if cfg not in seen:
                        seen.add(cfg)
                        nxt.add(cfg)
        frontier = nxt
        k += 1
    return None


def random_puzzle(
    seed: int,
    num_sides: int = 4,
    side_size: int = 2,
    alphabet_size: int = 3,
    max_words: int = 5,
    max_len: int = 4,
    plant: bool | None = None,
) -> LetterBoxedPuzzle:
    """Seeded random puzzle within the given size bounds.

    With ``plant`` (default: a coin flip) the dictionary first receives the
    words of a random covering walk, when that walk fits the bounds, so a
    good share of the puzzles are solvable.
    """
    rng = random.Random(seed)
    letters = [chr(ord("a") + i) for i in range(alphabet_size)]
    cells = num_sides * side_size
    pool = rng.sample(letters, min(alphabet_size, cells))
    flat = pool + [rng.choice(pool) for _ in range(cells - len(pool))]
    rng.shuffle(flat)
    sides = [flat[i * side_size:(i + 1) * side_size] for i in range(num_sides)]
    words: dict[Word, None] = {}
    target = rng.randint(1, max_words)
    if plant if plant is not None else rng.random() < 0.5:
        for w in _planted_words(rng, sides, max_len):
            if len(words) < max_words:
                words.setdefault(w)
        target = max(target, len(words))
    for _ in range(20 * max_words):
        if len(words) >= target:
            break
        words.setdefault(tuple(rng.choice(pool) for _ in range(rng.randint(1, max_len))))
    return make_puzzle(sides, list(words), sorted(pool))


def _planted_words(rng: random.Random, sides, max_len: int) -> list[Word]:
    """Words of a random side-alternating walk that visits every side cell."""
    todo = {(i, j) for i, side in enumerate(sides) for j in range(len(side))}
    cur = rng.choice(sorted(todo))
    walk = [cur]
    todo.discard(cur)
    while todo:
        fresh = [c for c in sorted(todo) if c[0] != cur[0]]
        if fresh and rng.random() < 0.8:
            cur = rng.choice(fresh)
        else:
            cur = rng.choice([(i, j) for i, side in enumerate(sides)
                              for j in range(len(side)) if i != cur[0]])
        walk.append(cur)
        todo.discard(cur)
    syms = [sides[i][j] for i, j in walk]
    out, start = [], 0
    while True:
        end = min(len(syms), start + rng.randint(2, max(2, max_len)))
        if len(syms) - start <= max_len:
            end = len(syms)
        out.append(tuple(syms[start:end]))
        if end == len(syms):
            return out
        start = end - 1


__all__ = [
    "BudgetExhausted",
    "InvalidPuzzle",
    "LetterBoxedPuzzle",
    "LetterBoxedSolution",
    "brute_force_min_words",
    "make_puzzle",
    "min_letters_dp",
    "min_words_dp",
    "random_puzzle",
    "solve_dp",
    "solve_search",
    "validate_puzzle",
    "verify_solution",
]
