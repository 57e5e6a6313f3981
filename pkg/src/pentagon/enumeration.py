"""Exhaustive search for involutive pentagon solutions on small carriers.

Two independent routes produce the same tables: a naive generator that
lists every involution of the n^2 pair points and filters, and a pruned
backtracking search that interleaves the pentagon checks with the
assignment of entries.  The search runs on raw tables, so nothing about
the classification theory is assumed; the theory becomes a checkable
output.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations
from math import comb

from .core import (
    BudgetError,
    SolutionTable,
    ValidationError,
    check_pentagon,
    relabel,
)
from .analysis import classify, find_isomorphism


@dataclass(frozen=True)
class EnumerationReport:
    size: int
    raw_count: int
    class_count: int
    representatives: tuple[SolutionTable, ...]
    elapsed: float


def _decode(flat: tuple[int, ...], n: int) -> SolutionTable:
    return SolutionTable(n, tuple(divmod(q, n) for q in flat))


def enumerate_naive(n: int) -> list[SolutionTable]:
    """Filter every involution of the pair set through the pentagon check."""
    if not 1 <= n <= 3:
        raise ValidationError("naive enumeration is limited to sizes 1..3")
    m = n * n
    assign = [-1] * m
    out: list[SolutionTable] = []

    def extend(p: int) -> None:
        while p < m and assign[p] >= 0:
            p += 1
        if p == m:
            table = _decode(tuple(assign), n)
            if check_pentagon(table):
                out.append(table)
            return
        for q in range(p, m):
            if q != p and assign[q] >= 0:
                continue
            assign[p] = q
            assign[q] = p
            extend(p + 1)
            assign[p] = -1
            if q != p:
                assign[q] = -1

    extend(0)
    out.sort(key=lambda t: t.entries)
    return out


# ---------------------------------------------------------------------------
# pruned backtracking
#
# Entries are assigned in lexicographic (i, j) order and values tried in
# lexicographic (k, l) order; writing s(p) = q immediately writes
# s(q) = p.  After every assignment each pentagon triple whose lookup
# chain is fully determined is evaluated, and a failure backtracks.

_CHECK_INTERVAL = 1024


def _triples_consistent(assign: list[int], n: int) -> bool:
    for x in range(n):
        xn = x * n
        for y in range(n):
            ab = assign[xn + y]
            if ab < 0:
                continue
            a, b = divmod(ab, n)
            yn = y * n
            for z in range(n):
                uv = assign[yn + z]
                if uv < 0:
                    continue
                pq = assign[xn + uv // n]
                cd = assign[a * n + z]
                if pq >= 0 and cd >= 0:
                    if cd // n != pq // n:
                        return False
                    ef = assign[b * n + cd % n]
                    if ef >= 0 and ef != (pq % n) * n + uv % n:
                        return False
    return True


class _Deadline:
    """Absolute point on the monotonic clock; shared across worker processes."""

    def __init__(self, at: float | None):
        self.at = at
        self.ticks = 0

    @classmethod
    def after_ms(cls, budget_ms) -> "_Deadline":
        if budget_ms is None:
            return cls(None)
        return cls(time.monotonic() + budget_ms / 1000.0)

    def expired(self) -> bool:
        if self.at is None:
            return False
        self.ticks += 1
        if self.ticks % _CHECK_INTERVAL:
            return False
        return time.monotonic() > self.at


def _search(n: int, assign: list[int], start: int, deadline: _Deadline,
            out: list[tuple[int, ...]]) -> None:
    m = n * n
    p = start
    while p < m and assign[p] >= 0:
        p += 1
    if p == m:
        out.append(tuple(assign))
        return
    for q in range(p, m):
        if q != p and assign[q] >= 0:
            continue
        if deadline.expired():
            raise BudgetError("enumeration budget exceeded")
        assign[p] = q
        assign[q] = p
        if _triples_consistent(assign, n):
            _search(n, assign, p + 1, deadline, out)
        assign[p] = -1
        if q != p:
            assign[q] = -1


def _prefixes(n: int, depth: int) -> tuple[list[tuple[int, ...]], list[list[int]]]:
    """Consistent partial assignments after `depth` decisions.

    Returns (complete tables found while splitting, open prefixes).
    """
    m = n * n
    complete: list[tuple[int, ...]] = []
    open_prefixes: list[list[int]] = []

    def extend(assign: list[int], start: int, decisions: int) -> None:
        p = start
        while p < m and assign[p] >= 0:
            p += 1
        if p == m:
            complete.append(tuple(assign))
            return
        if decisions == depth:
            open_prefixes.append(list(assign))
            return
        for q in range(p, m):
            if q != p and assign[q] >= 0:
                continue
            assign[p] = q
            assign[q] = p
            if _triples_consistent(assign, n):
                extend(assign, p + 1, decisions + 1)
            assign[p] = -1
            if q != p:
                assign[q] = -1

    extend([-1] * m, 0, 0)
    return complete, open_prefixes


def _run_prefix(args) -> list[tuple[int, ...]]:
    n, prefix, deadline_at = args
    out: list[tuple[int, ...]] = []
    _search(n, list(prefix), 0, _Deadline(deadline_at), out)
    return out


def enumerate_pruned(
    n: int, budget_ms: float | None = None, workers: int = 1
) -> list[SolutionTable]:
    """Same table set as the naive route, reachable up to size 6.

    Raises BudgetError instead of silently truncating when the time
    budget runs out.  The output is independent of the worker count.
    """
    if not 1 <= n <= 6:
        raise ValidationError("pruned enumeration is limited to sizes 1..6")
    deadline = _Deadline.after_ms(budget_ms)
    complete, prefixes = _prefixes(n, 2)
    flats = list(complete)
    if workers <= 1 or len(prefixes) < 2:
        for prefix in prefixes:
            _search(n, list(prefix), 0, deadline, flats)
    else:
        import multiprocessing

        tasks = [(n, prefix, deadline.at) for prefix in prefixes]
        with multiprocessing.Pool(workers) as pool:
            for chunk in pool.imap_unordered(_run_prefix, tasks):
                flats.extend(chunk)
    flats.sort()
    return [_decode(f, n) for f in flats]


# ---------------------------------------------------------------------------
# isomorphism classes


def canonical_form(s: SolutionTable) -> SolutionTable:
    """Lexicographically smallest relabeling of the table."""
    best = None
    for p in permutations(range(s.size)):
        cand = relabel(s, p).entries
        if best is None or cand < best:
            best = cand
    return SolutionTable(s.size, best)


def expected_count(n: int) -> int:
    """Number of isomorphism classes on a carrier of size n = 2^k (2m+1)."""
    if n < 1:
        raise ValidationError("n must be at least 1")
    k = (n & -n).bit_length() - 1
    return comb(k + 2, 2)


def count_up_to_iso(
    n: int, budget_ms: float | None = None, workers: int = 1
) -> EnumerationReport:
    """Enumerate, then group into isomorphism classes.

    Grouping uses the classification triple for every size and, up to
    size 4, an explicit isomorphism search as a cross-check; the two
    partitions must agree.
    """
    started = time.monotonic()
    tables = enumerate_pruned(n, budget_ms=budget_ms, workers=workers)

    by_triple: dict[tuple[int, int, int], list[SolutionTable]] = {}
    for t in tables:
        c = classify(t)
        by_triple.setdefault((c.x_size, c.a_dim, c.g_dim), []).append(t)

    if n <= 4:
        reps: list[SolutionTable] = []
        groups: list[list[SolutionTable]] = []
        for t in tables:
            for i, r in enumerate(reps):
                if r.size == t.size and find_isomorphism(r, t) is not None:
                    groups[i].append(t)
                    break
            else:
                reps.append(t)
                groups.append([t])
        explicit = {frozenset(g.entries for g in grp) for grp in groups}
        invariant = {
            frozenset(g.entries for g in grp) for grp in by_triple.values()
        }
        if explicit != invariant:
            raise ValidationError(
                "isomorphism search and invariant grouping disagree"
            )

    representatives = sorted(
        (canonical_form(grp[0]) for grp in by_triple.values()),
        key=lambda t: t.entries,
    )
    return EnumerationReport(
        size=n,
        raw_count=len(tables),
        class_count=len(by_triple),
        representatives=tuple(representatives),
        elapsed=time.monotonic() - started,
    )
