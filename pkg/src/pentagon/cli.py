"""Command-line surface, file formats, and report emission.

Exit codes: 0 success or property holds, 1 property fails, 2 usage or
input error, 3 resource budget exceeded.

Solution file format (byte exact):

    pentagon-solution v1
    size <n>
    <i> <j> <k> <l>        one row per input pair, n^2 rows

Rows mean s(i, j) = (k, l) with 0-based indices; emission orders them
lexicographically in (i, j) with single spaces and a trailing newline.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

from . import __version__
from .core import (
    BudgetError,
    SolutionTable,
    ValidationError,
    check_bijective,
    check_cocommutative,
    check_commutative,
    check_involutive,
    check_pentagon,
    check_reversed_pentagon,
    order_of,
    pentagon_witness,
    product_solution,
)
from .constructors import (
    Decomposition,
    SigmaMap,
    canonical_solution,
    decomposition_solution,
    identity_solution,
    irretractable_solution,
    sigma_search,
)
from .analysis import classify, find_isomorphism, is_isomorphic_invariant, retract
from .enumeration import count_up_to_iso
from .monoid import (
    DEFAULT_WORD_BUDGET,
    estimate_growth_degree,
    growth_series,
    rank_expected,
)

HEADER = "pentagon-solution v1"

AXIOM_CHECKS = {
    "pe": check_pentagon,
    "rpe": check_reversed_pentagon,
    "involutive": check_involutive,
    "bijective": check_bijective,
    "commutative": check_commutative,
    "cocommutative": check_cocommutative,
}


class ParseError(ValueError):
    """Input text does not conform to a file format; carries a line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_solution(text: str) -> SolutionTable:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ParseError(f"expected header {HEADER!r}", 1)
    if len(lines) < 2:
        raise ParseError("missing size line", 2)
    m = re.fullmatch(r"size (\d+)", lines[1].strip())
    if not m:
        raise ParseError("expected 'size <n>'", 2)
    n = int(m.group(1))
    if n < 1:
        raise ParseError("size must be at least 1", 2)

    entries: dict[tuple[int, int], tuple[int, int]] = {}
    for lineno, raw in enumerate(lines[2:], start=3):
        parts = raw.split()
        if len(parts) != 4:
            raise ParseError("expected four integers '<i> <j> <k> <l>'", lineno)
        try:
            i, j, k, l = (int(p) for p in parts)
        except ValueError:
            raise ParseError("expected four integers '<i> <j> <k> <l>'", lineno)
        for v in (i, j, k, l):
            if not 0 <= v < n:
                raise ParseError(f"index {v} out of range for size {n}", lineno)
        if (i, j) in entries:
            raise ParseError(f"duplicate row for pair ({i}, {j})", lineno)
        entries[(i, j)] = (k, l)

    if len(entries) != n * n:
        missing = next(
            (i, j)
            for i in range(n)
            for j in range(n)
            if (i, j) not in entries
        )
        raise ParseError(
            f"missing row for pair {missing}; got {len(entries)} of {n * n}",
            len(lines) + 1,
        )
    return SolutionTable(
        n, tuple(entries[(i, j)] for i in range(n) for j in range(n))
    )


def emit_solution(s: SolutionTable) -> str:
    n = s.size
    lines = [HEADER, f"size {n}"]
    for i in range(n):
        for j in range(n):
            k, l = s.apply(i, j)
            lines.append(f"{i} {j} {k} {l}")
    return "\n".join(lines) + "\n"


def parse_sigma_text(text: str) -> SigmaMap:
    """One line per a in 0..2^r - 1, each listing the images of 0..m-1."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            raise ParseError("blank line in sigma file", lineno)
        try:
            rows.append(tuple(int(p) for p in raw.split()))
        except ValueError:
            raise ParseError("expected a list of integers", lineno)
    if not rows:
        raise ParseError("empty sigma file", 1)
    count = len(rows)
    a_dim = count.bit_length() - 1
    if 1 << a_dim != count:
        raise ParseError(
            f"sigma file must have a power-of-two number of lines, got {count}",
            count,
        )
    try:
        return SigmaMap(len(rows[0]), a_dim, tuple(rows))
    except ValidationError as exc:
        raise ParseError(str(exc), 1)


_EXPR = re.compile(r"([a-z]+)\(([0-9, ]*)\)")


def load_solution(ref: str) -> SolutionTable:
    """A solution file path, or an inline expression.

    Expressions: identity(n), irretractable(r), canonical(x,a,g).
    """
    if os.path.exists(ref):
        with open(ref, encoding="ascii") as fh:
            return parse_solution(fh.read())
    m = _EXPR.fullmatch(ref.strip())
    if not m:
        raise ParseError(f"no such file and not an expression: {ref!r}", 1)
    name = m.group(1)
    args = [int(p) for p in m.group(2).replace(",", " ").split()]
    if name == "identity" and len(args) == 1:
        return identity_solution(args[0])
    if name == "irretractable" and len(args) == 1:
        return irretractable_solution(args[0])
    if name == "canonical" and len(args) == 3:
        return canonical_solution(*args)
    raise ParseError(f"unknown constructor expression: {ref!r}", 1)


# ---------------------------------------------------------------------------
# report plumbing


class _Report:
    def __init__(self, command: str, inputs: dict, as_json: bool):
        self.payload = {
            "command": command,
            "inputs": inputs,
            "results": {},
            "elapsed_ms": 0,
            "version": __version__,
        }
        self.as_json = as_json
        self.lines: list[str] = []
        self.started = time.monotonic()

    def say(self, text: str, **results) -> None:
        self.lines.append(text)
        self.payload["results"].update(results)

    def flush(self) -> None:
        self.payload["elapsed_ms"] = round(
            (time.monotonic() - self.started) * 1000, 3
        )
        if self.as_json:
            print(json.dumps(self.payload, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


def _write_or_print(text: str, path: str | None, report: _Report) -> None:
    if path:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
        report.say(f"wrote {path}", output=path, solution=text)
    else:
        report.say(text.rstrip("\n"), solution=text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify(args, report: _Report) -> int:
    s = load_solution(args.solution)
    names = [a.strip() for a in args.axioms.split(",") if a.strip()]
    unknown = [a for a in names if a not in AXIOM_CHECKS]
    if unknown:
        raise ValidationError(f"unknown axioms: {', '.join(unknown)}")
    verdicts = {a: AXIOM_CHECKS[a](s) for a in names}
    for a, ok in verdicts.items():
        report.say(f"{a}: {'holds' if ok else 'FAILS'}")
    if not verdicts.get("pe", True):
        x, y, z = pentagon_witness(s)
        report.say(
            f"  first failing triple ({x}, {y}, {z})", pe_witness=[x, y, z]
        )
    report.payload["results"].update(size=s.size, axioms=verdicts)
    return 0 if all(verdicts.values()) else 1


def _cmd_construct(args, report: _Report) -> int:
    sigma = None
    if args.sigma:
        with open(args.sigma, encoding="ascii") as fh:
            sigma = parse_sigma_text(fh.read())
    dec = Decomposition(args.x, args.a, args.g, sigma)
    s = decomposition_solution(dec)
    report.payload["results"].update(size=s.size)
    _write_or_print(emit_solution(s), args.output, report)
    return 0


def _cmd_product(args, report: _Report) -> int:
    s = product_solution(load_solution(args.left), load_solution(args.right))
    report.payload["results"].update(size=s.size)
    _write_or_print(emit_solution(s), args.output, report)
    return 0


def _cmd_retract(args, report: _Report) -> int:
    res = retract(load_solution(args.solution))
    report.say(
        f"retract size {res.quotient.size}, class size {res.class_sizes[0]}",
        quotient_size=res.quotient.size,
        class_sizes=list(res.class_sizes),
        class_of=list(res.class_of),
    )
    _write_or_print(emit_solution(res.quotient), args.output, report)
    return 0


def _cmd_classify(args, report: _Report) -> int:
    c = classify(load_solution(args.solution))
    report.say(
        f"classification (x={c.x_size}, a={c.a_dim}, g={c.g_dim})",
        x_size=c.x_size,
        a_dim=c.a_dim,
        g_dim=c.g_dim,
    )
    return 0


def _cmd_isomorphic(args, report: _Report) -> int:
    s, t = load_solution(args.left), load_solution(args.right)
    if s.size != t.size:
        report.say("not isomorphic: sizes differ", isomorphic=False)
        return 1
    if s.size <= args.max_size:
        f = find_isomorphism(s, t, max_size=args.max_size)
        if f is None:
            report.say("not isomorphic", isomorphic=False)
            return 1
        report.say(
            f"isomorphic via {' '.join(map(str, f.images))}",
            isomorphic=True,
            bijection=list(f.images),
        )
        return 0
    same = is_isomorphic_invariant(s, t)
    report.say(
        f"classification triples {'match' if same else 'differ'}"
        " (size above search bound, invariant comparison)",
        isomorphic=same,
        method="invariant",
    )
    return 0 if same else 1


def _cmd_enumerate(args, report: _Report) -> int:
    if args.up_to_iso:
        rep = count_up_to_iso(
            args.size, budget_ms=args.budget_ms, workers=args.workers
        )
        triples = []
        for r in rep.representatives:
            c = classify(r)
            triples.append([c.x_size, c.a_dim, c.g_dim])
        report.say(
            f"size {args.size}: {rep.raw_count} tables, {rep.class_count} classes",
            raw_count=rep.raw_count,
            class_count=rep.class_count,
            class_triples=triples,
        )
        for t in triples:
            report.lines.append(f"  class (x={t[0]}, a={t[1]}, g={t[2]})")
    else:
        if args.naive:
            from .enumeration import enumerate_naive

            tables = enumerate_naive(args.size)
        else:
            from .enumeration import enumerate_pruned

            tables = enumerate_pruned(
                args.size, budget_ms=args.budget_ms, workers=args.workers
            )
        report.say(
            f"size {args.size}: {len(tables)} tables", raw_count=len(tables)
        )
    return 0


def _cmd_sigma_search(args, report: _Report) -> int:
    perms = sigma_search(args.n)
    found = [" ".join(str(v + 1) for v in p) for p in perms]
    for images in found:
        report.say(images)
    report.say(f"{len(perms)} permutations", count=len(perms), images=found)
    return 0


def _cmd_growth(args, report: _Report) -> int:
    s = load_solution(args.solution)
    series = growth_series(
        s, args.length, word_budget=args.word_budget, method=args.method
    )
    report.say(
        "series " + " ".join(map(str, series.counts)),
        counts=list(series.counts),
    )
    est = estimate_growth_degree(series)
    if est is None:
        report.say("degree inconclusive at this length", degree=None)
    else:
        report.say(
            f"degree {est.degree} (stable from length {est.onset})",
            degree=est.degree,
            onset=est.onset,
        )
    try:
        rank = rank_expected(s)
    except ValidationError:
        rank = None
    if rank is not None:
        report.say(f"expected rank {rank}", expected_rank=rank)
    return 0


def _cmd_order(args, report: _Report) -> int:
    m = order_of(load_solution(args.solution), args.cap)
    if m is None:
        report.say(f"no order within cap {args.cap}", order=None)
        return 1
    report.say(f"order {m}", order=m)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pentagon",
        description="Finite set-theoretic solutions of the Pentagon Equation.",
    )
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampling")
    sub = parser.add_subparsers(dest="command", required=True)

    sol_help = "solution file, or identity(n) / irretractable(r) / canonical(x,a,g)"

    p = sub.add_parser("verify", help="check axioms on a solution table")
    p.add_argument("solution", help=sol_help)
    p.add_argument(
        "--axioms",
        default="pe",
        help=f"comma list from: {', '.join(AXIOM_CHECKS)}",
    )

    p = sub.add_parser("construct", help="build a solution from (x, a, g, sigma)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--g", type=int, default=0)
    p.add_argument("--sigma", help="file with one permutation line per a value")
    p.add_argument("--output", "-o")

    p = sub.add_parser("product", help="product of two solutions")
    p.add_argument("left", help=sol_help)
    p.add_argument("right", help=sol_help)
    p.add_argument("--output", "-o")

    p = sub.add_parser("retract", help="quotient by equal theta maps")
    p.add_argument("solution", help=sol_help)
    p.add_argument("--output", "-o")

    p = sub.add_parser("classify", help="classification triple (x, a, g)")
    p.add_argument("solution", help=sol_help)

    p = sub.add_parser("isomorphic", help="decide isomorphism of two solutions")
    p.add_argument("left", help=sol_help)
    p.add_argument("right", help=sol_help)
    p.add_argument("--max-size", type=int, default=8)

    p = sub.add_parser("enumerate", help="all involutive solutions of a size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--naive", action="store_true", help="oracle route, sizes 1..3")
    p.add_argument("--budget-ms", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sigma-search", help="permutations usable by the cycle family")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("growth", help="structure-monoid growth series")
    p.add_argument("solution", help=sol_help)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--method", choices=("auto", "dense", "stratified"), default="auto")
    p.add_argument("--word-budget", type=int, default=DEFAULT_WORD_BUDGET)

    p = sub.add_parser("order", help="order of the table as a map on pairs")
    p.add_argument("solution", help=sol_help)
    p.add_argument("--cap", type=int, default=64)

    return parser


_HANDLERS = {
    "verify": _cmd_verify,
    "construct": _cmd_construct,
    "product": _cmd_product,
    "retract": _cmd_retract,
    "classify": _cmd_classify,
    "isomorphic": _cmd_isomorphic,
    "enumerate": _cmd_enumerate,
    "sigma-search": _cmd_sigma_search,
    "growth": _cmd_growth,
    "order": _cmd_order,
}


def run(argv: list[str]) -> int:
    """Execute one invocation; returns the exit code instead of raising."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    inputs = {
        k: v for k, v in sorted(vars(args).items()) if k not in ("command", "json")
    }
    report = _Report(args.command, inputs, args.json)
    try:
        code = _HANDLERS[args.command](args, report)
    except BudgetError as exc:
        report.say(f"budget exceeded: {exc}", budget_exceeded=True)
        report.flush()
        return 3
    except (ParseError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.flush()
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
