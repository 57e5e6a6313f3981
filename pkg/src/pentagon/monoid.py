"""Structure-monoid computations: presentations, growth, rank.

The defining relations identify words of equal length, so the word
problem splits into one finite closure problem per length.  Two exact
engines solve it:

* dense: union-find over all n^ell words of a length, words encoded as
  base-n integers (refuses lengths whose word count exceeds the budget);
* stratified: union-find over (class at length ell-1, last letter)
  pairs, valid because a rewrite either stays inside the prefix, where
  the previous stratum already resolved it, or touches the boundary,
  which the pair encoding sees directly.

Both are exact and they are cross-checked against each other in the
test suite wherever both fit in memory.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Optional

from .core import (
    BudgetError,
    SolutionTable,
    ValidationError,
    check_involutive,
    check_pentagon,
    derive_tables,
)
from .analysis import idempotents

Word = tuple[int, ...]

DEFAULT_WORD_BUDGET = 1 << 24
_AUTO_DENSE_LIMIT = 1 << 14


@dataclass(frozen=True)
class MonoidPresentation:
    """Generators 0..generators-1 and length-preserving pair relations."""

    generators: int
    relations: tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        for lhs, rhs in self.relations:
            if len(lhs) != 2 or len(rhs) != 2:
                raise ValidationError("relations must pair words of length 2")
            if any(not 0 <= v < self.generators for v in lhs + rhs):
                raise ValidationError("relation letter out of range")


@dataclass(frozen=True)
class GrowthSeries:
    """counts[ell] = number of word classes of length ell."""

    counts: tuple[int, ...]


@dataclass(frozen=True)
class DegreeEstimate:
    """Polynomial degree of the cumulative counts and where it sets in."""

    degree: int
    onset: int


def presentation_of(s: SolutionTable) -> MonoidPresentation:
    """Relations x . y = theta_x(y) . (x y), one per input pair, deduplicated."""
    mult, thf = derive_tables(s)
    n = s.size
    seen = set()
    rels = []
    for x in range(n):
        for y in range(n):
            rel = ((x, y), (thf.maps[x][y], mult.rows[x][y]))
            if rel not in seen:
                seen.add(rel)
                rels.append(rel)
    return MonoidPresentation(n, tuple(rels))


def _rewrites(pres: MonoidPresentation) -> dict[tuple[int, int], list[tuple[int, int]]]:
    table: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for (a, b), (c, d) in pres.relations:
        if (a, b) != (c, d):
            table.setdefault((a, b), []).append((c, d))
    return table


class _UnionFind:
    __slots__ = ("parent", "size")

    def __init__(self, count: int):
        self.parent = array("i", range(count))
        self.size = array("i", bytes(4 * count))
        # sizes start at 1; bytes() zero-fills, so bump lazily in union

    def find(self, w: int) -> int:
        parent = self.parent
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        sa = self.size[ra] or 1
        sb = self.size[rb] or 1
        if sa < sb:
            ra, rb = rb, ra
            sa, sb = sb, sa
        self.parent[rb] = ra
        self.size[ra] = sa + sb

    def roots(self) -> int:
        parent = self.parent
        return sum(1 for w in range(len(parent)) if parent[w] == w)


def _dense_stratum(
    nletters: int,
    rewrites: dict[tuple[int, int], list[tuple[int, int]]],
    length: int,
) -> _UnionFind:
    """Close the length stratum over all words, encoded base nletters."""
    total = nletters**length
    uf = _UnionFind(total)
    if length < 2 or not rewrites:
        return uf
    pows = [nletters**k for k in range(length)]
    for w in range(total):
        rest = w
        for p in range(length - 1):
            b = rest % nletters
            rest //= nletters
            a = rest % nletters
            for c, d in rewrites.get((a, b), ()):
                uf.union(w, w + (c - a) * pows[p + 1] + (d - b) * pows[p])
    return uf


def _dense_counts(
    pres: MonoidPresentation, length: int, word_budget: int
) -> list[int]:
    n = pres.generators
    if n**length > word_budget:
        raise BudgetError(
            f"{n}^{length} words exceed the budget of {word_budget}"
        )
    rewrites = _rewrites(pres)
    counts = [1]
    for ell in range(1, length + 1):
        counts.append(_dense_stratum(n, rewrites, ell).roots())
    return counts


def _stratified_counts(
    pres: MonoidPresentation, length: int, word_budget: int
) -> list[int]:
    n = pres.generators
    rewrites = _rewrites(pres)
    counts = [1]
    if length >= 1:
        counts.append(n)
    q_prev = list(range(n))  # (class at ell-1) * n + letter  ->  class at ell
    c_prev2, c_prev = 1, n
    for _ell in range(2, length + 1):
        nodes = c_prev * n
        if nodes > word_budget:
            raise BudgetError(
                f"{nodes} stratum nodes exceed the budget of {word_budget}"
            )
        uf = _UnionFind(nodes)
        for d_class in range(c_prev2):
            base = d_class * n
            for x in range(n):
                cx = q_prev[base + x]
                for y in range(n):
                    for c, d in rewrites.get((x, y), ()):
                        uf.union(cx * n + y, q_prev[base + c] * n + d)
        labels: dict[int, int] = {}
        q_new = [0] * nodes
        for w in range(nodes):
            r = uf.find(w)
            lab = labels.get(r)
            if lab is None:
                lab = len(labels)
                labels[r] = lab
            q_new[w] = lab
        counts.append(len(labels))
        q_prev = q_new
        c_prev2, c_prev = c_prev, len(labels)
    return counts


def series_from_presentation(
    pres: MonoidPresentation,
    length: int,
    word_budget: int = DEFAULT_WORD_BUDGET,
    method: str = "auto",
) -> GrowthSeries:
    if length < 0:
        raise ValidationError("length must be non-negative")
    if method == "auto":
        method = (
            "dense"
            if pres.generators**length <= _AUTO_DENSE_LIMIT
            else "stratified"
        )
    if method == "dense":
        counts = _dense_counts(pres, length, word_budget)
    elif method == "stratified":
        counts = _stratified_counts(pres, length, word_budget)
    else:
        raise ValidationError(f"unknown method {method!r}")
    return GrowthSeries(tuple(counts))


def growth_series(
    s: SolutionTable,
    length: int,
    word_budget: int = DEFAULT_WORD_BUDGET,
    method: str = "auto",
) -> GrowthSeries:
    """Class counts of words of each length up to `length`."""
    return series_from_presentation(
        presentation_of(s), length, word_budget=word_budget, method=method
    )


def rank_expected(s: SolutionTable) -> int:
    """Idempotent count divided by retract size, the predicted growth degree."""
    if not check_involutive(s) or not check_pentagon(s):
        raise ValidationError("rank is defined for involutive solutions only")
    mult, thf = derive_tables(s)
    num_idem = len(idempotents(mult))
    ret_size = len(set(thf.maps))
    if num_idem % ret_size:
        raise ValidationError("retract size does not divide the idempotent count")
    return num_idem // ret_size


def estimate_growth_degree(series: GrowthSeries) -> Optional[DegreeEstimate]:
    """Degree of the eventual polynomial behind the cumulative counts.

    Takes iterated finite differences of B(ell) = sum of counts up to
    ell and looks for the first level whose trailing values are constant
    with a run of at least 3; returns None when the series is too short
    to show such a run.
    """
    row: list[int] = []
    total = 0
    for c in series.counts:
        total += c
        row.append(total)
    degree = 0
    while len(row) >= 3:
        run = 1
        while run < len(row) and row[-run - 1] == row[-1]:
            run += 1
        if run >= 3:
            return DegreeEstimate(degree, len(row) - run)
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
        degree += 1
    return None


def normal_forms(
    s: SolutionTable, length: int, word_budget: int = DEFAULT_WORD_BUDGET
) -> list[Word]:
    """Lexicographically smallest word of each class of the given length."""
    if length < 0:
        raise ValidationError("length must be non-negative")
    if length == 0:
        return [()]
    pres = presentation_of(s)
    n = pres.generators
    if n**length > word_budget:
        raise BudgetError(f"{n}^{length} words exceed the budget of {word_budget}")
    uf = _dense_stratum(n, _rewrites(pres), length)
    out: list[Word] = []
    seen: set[int] = set()
    for w in range(n**length):
        r = uf.find(w)
        if r not in seen:
            seen.add(r)
            letters = []
            rest = w
            for _ in range(length):
                rest, letter = divmod(rest, n)
                letters.append(letter)
            out.append(tuple(reversed(letters)))
    return out
