"""Command-line front end.

Exit codes: 0 when the checked property holds, 1 when it fails or nothing was
found, 2 for usage errors, malformed input and exhausted budgets.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .coloring import is_k_colorable
from .formats import (
    FormatError,
    graph_from_json,
    graph_to_json,
    load_json,
    orientation_from_json,
    orientation_to_json,
    to_dot,
)
from .graph import GraphError
from .polyomino import (
    PolyominoError,
    TooManyCells,
    contains_forbidden,
    enumerate_triangulations,
    k4_canonical_orientation,
    k4_substitution,
    parse_polyomino,
    triangulation_graph,
)
from .semitrans import (
    BudgetExceeded,
    OrientationError,
    Verdict,
    is_semi_transitive,
    solve,
)
from .words import WordError, alternation_graph, format_word, parse_word, represents

OK, FAILS, ERROR = 0, 1, 2


class CliError(Exception):
    pass


class _Out:
    def __init__(self, pretty: bool):
        self.pretty = pretty

    def emit(self, record: dict) -> None:
        if self.pretty:
            print(json.dumps(record, indent=2))
        else:
            print(json.dumps(record, separators=(",", ":")))

    def text(self, s: str) -> None:
        print(s, end="" if s.endswith("\n") else "\n")


def _verdict_json(v: Verdict) -> dict:
    d: dict[str, Any] = {"status": v.status}
    if v.cycle is not None:
        d["cycle"] = list(v.cycle)
    if v.shortcut is not None:
        d["shortcut"] = {"path": list(v.shortcut.path), "missing": list(v.shortcut.missing)}
    return d


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(path, exc.strerror or str(exc)) from None


def _load_graph(path: str):
    return graph_from_json(load_json(path), path)


# ---------------------------------------------------------------------------
# word
# ---------------------------------------------------------------------------


def cmd_word_graph(args, out: _Out) -> int:
    w = parse_word(args.word)
    g = alternation_graph(w)
    if args.format == "dot":
        out.text(to_dot(g))
    else:
        out.emit({"word": format_word(w), "graph": graph_to_json(g)})
    return OK


def cmd_word_check(args, out: _Out) -> int:
    w = parse_word(args.word)
    g = _load_graph(args.graph)
    ok = represents(w, g)
    out.emit({"word": format_word(w), "represents": ok})
    return OK if ok else FAILS


# ---------------------------------------------------------------------------
# orient
# ---------------------------------------------------------------------------


def cmd_orient_verify(args, out: _Out) -> int:
    o = orientation_from_json(load_json(args.orientation), args.orientation)
    v = is_semi_transitive(o)
    out.emit(_verdict_json(v))
    return OK if v.ok else FAILS


def cmd_orient_solve(args, out: _Out) -> int:
    g = _load_graph(args.graph)
    res = solve(g, args.budget, record_trace=args.trace is not None)
    if args.trace is not None:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(res.trace.text())
    record: dict[str, Any] = {"outcome": res.outcome, "nodes": res.nodes}
    if res.possible:
        record["orientation"] = orientation_to_json(res.orientation)
    if args.format == "dot" and res.possible:
        out.text(to_dot(g, res.orientation))
    else:
        out.emit(record)
    return OK if res.possible else FAILS


# ---------------------------------------------------------------------------
# poly
# ---------------------------------------------------------------------------


def cmd_poly_triangulations(args, out: _Out) -> int:
    p = parse_polyomino(_read_text(args.polyomino), args.polyomino)
    for i, t in enumerate(enumerate_triangulations(p, args.max_cells)):
        g = triangulation_graph(t)
        record: dict[str, Any] = {"index": i, "triangulation": t.to_ascii().splitlines()}
        if args.filter in (None, "3col"):
            record["three_colorable"] = is_k_colorable(g, 3) is not None
        if args.filter in (None, "forbidden"):
            record["forbidden"] = contains_forbidden(t)
        if args.filter in (None, "solve"):
            record["semi_transitive"] = solve(g, args.budget, record_trace=False).possible
        keep = {
            None: True,
            "3col": record.get("three_colorable"),
            "forbidden": record.get("forbidden"),
            "solve": record.get("semi_transitive"),
        }[args.filter]
        if keep:
            out.emit(record)
    return OK


def cmd_poly_k4(args, out: _Out) -> int:
    p = parse_polyomino(_read_text(args.polyomino), args.polyomino)
    g = k4_substitution(p)
    if not (args.orient or args.column_variant):
        out.text(to_dot(g)) if args.format == "dot" else out.emit({"graph": graph_to_json(g)})
        return OK
    o = k4_canonical_orientation(p, column_aligned=args.column_variant)
    v = is_semi_transitive(o)
    if args.format == "dot":
        out.text(to_dot(g, o))
    else:
        out.emit({"graph": graph_to_json(g), "orientation": orientation_to_json(o), "verdict": _verdict_json(v)})
    return OK if v.ok else FAILS


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify_main_theorem(args, out: _Out) -> int:
    from .verify import main_theorem_sweep

    total, bad = main_theorem_sweep(args.max_cells, args.jobs)
    if not bad:
        out.text(f"equivalence holds: {total} triangulations checked")
        return OK
    out.text(f"equivalence fails: {len(bad)} of {total} triangulations disagree")
    for m in bad:
        out.text(
            f"  solve={m.semi_transitive} 3col={m.three_colorable} forbidden-free={m.forbidden_free}\n"
            + "".join(f"    {row}\n" for row in m.triangulation.splitlines())
        )
    return FAILS


def cmd_verify_paper(args, out: _Out) -> int:
    from .verify import run_all

    outcomes = run_all(brute_force=not args.skip_brute_force, jobs=args.jobs)
    for o in outcomes:
        out.text(o.line())
    failed = sum(not o.passed for o in outcomes)
    out.text(f"{len(outcomes) - failed}/{len(outcomes)} criteria pass")
    return OK if failed == 0 else FAILS


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wordrep", description="Word-representability and semi-transitive orientations.")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    groups = parser.add_subparsers(dest="group", required=True)

    word = groups.add_parser("word", help="alternation words").add_subparsers(dest="cmd", required=True)
    p = word.add_parser("graph", help="graph represented by a word")
    p.add_argument("word")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_word_graph)
    p = word.add_parser("check", help="does a word represent a graph")
    p.add_argument("word")
    p.add_argument("graph", metavar="graph.json")
    p.set_defaults(func=cmd_word_check)

    orient = groups.add_parser("orient", help="orientations").add_subparsers(dest="cmd", required=True)
    p = orient.add_parser("verify", help="semi-transitivity verdict with a witness")
    p.add_argument("orientation", metavar="orientation.json")
    p.set_defaults(func=cmd_orient_verify)
    p = orient.add_parser("solve", help="search for a semi-transitive orientation")
    p.add_argument("graph", metavar="graph.json")
    p.add_argument("--trace", metavar="FILE", help="write the search log here")
    p.add_argument("--budget", type=_positive, default=None, help="node budget (default from WORDREP_BUDGET or 10^7)")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_orient_solve)

    poly = groups.add_parser("poly", help="polyominoes").add_subparsers(dest="cmd", required=True)
    p = poly.add_parser("triangulations", help="all triangulations with verdicts")
    p.add_argument("polyomino", metavar="poly.txt")
    p.add_argument("--filter", choices=("3col", "forbidden", "solve"), default=None,
                   help="only emit triangulations with this property")
    p.add_argument("--max-cells", type=_positive, default=24)
    p.add_argument("--budget", type=_positive, default=None)
    p.set_defaults(func=cmd_poly_triangulations)
    p = poly.add_parser("k4", help="graph with both diagonals in every cell")
    p.add_argument("polyomino", metavar="poly.txt")
    p.add_argument("--orient", action="store_true", help="add the alternating-source orientation")
    p.add_argument("--column-variant", action="store_true", help="use sources in even columns instead")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_poly_k4)

    ver = groups.add_parser("verify", help="reproducible checks").add_subparsers(dest="cmd", required=True)
    p = ver.add_parser("main-theorem", help="convex polyominoes: orientable iff 3-colourable iff forbidden-free")
    p.add_argument("--max-cells", type=_positive, required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_verify_main_theorem)
    p = ver.add_parser("paper", help="run every acceptance check")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--skip-brute-force", action="store_true", help="skip the 2^m orientation enumeration")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.pretty)
    try:
        return args.func(args, out)
    except (FormatError, PolyominoError, WordError, GraphError, OrientationError) as exc:
        print(f"wordrep: error: {exc}", file=sys.stderr)
    except (BudgetExceeded, TooManyCells) as exc:
        print(f"wordrep: resource limit: {exc}", file=sys.stderr)
    except ValueError as exc:  # e.g. a bad WORDREP_BUDGET
        print(f"wordrep: error: {exc}", file=sys.stderr)
    return ERROR


if __name__ == "__main__":
    sys.exit(main())
