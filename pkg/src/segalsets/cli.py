"""Command-line entry point.

Exit codes: 0 when every requested property holds, 1 when a check fails
(the witness is printed), 2 on unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Callable

from . import doublecat, graphs, hall, nerves, segal, simplicial, trees

DEFAULT_TRUNCATION = 5


class InputError(Exception):
    pass


def default_truncation() -> int:
    raw = os.environ.get("SEGAL_MAX_LEVEL")
    if raw is None:
        return DEFAULT_TRUNCATION
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SEGAL_MAX_LEVEL must be an integer, got {raw!r}") from None


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _parse(path: str, loader: Callable[[Any], Any], what: str):
    data = _read_json(path)
    try:
        return loader(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{path}: invalid {what}: {exc}") from exc


def _load_sset(path: str) -> simplicial.TruncatedSimplicialSet:
    return _parse(path, simplicial.TruncatedSimplicialSet.from_json, "simplicial set")


def _load_double_category(path: str) -> doublecat.DoubleCategory:
    return _parse(path, doublecat.DoubleCategory.from_json, "double category")


def _emit(args, payload: Any, text: str | None = None) -> None:
    out = text if (args.human and text is not None) else json.dumps(payload, indent=None if args.compact else 2)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _truncation(args, minimum: int = 0) -> int:
    N = args.truncate if args.truncate is not None else default_truncation()
    if N < minimum:
        raise InputError(f"truncation must be at least {minimum}, got {N}")
    return N


def _verdict_line(report: dict[str, Any]) -> str:
    line = f"{report['check']}: {report['verdict']}"
    if report.get("levels"):
        line += f" (levels {report['levels'][0]}..{report['levels'][-1]})"
    if report.get("witness") is not None:
        line += f"\n  witness: {json.dumps(report['witness'])}"
    return line


def _short_name(d: Any) -> str:
    """Readable label for graph and tree descriptors, compact JSON otherwise."""
    if isinstance(d, tuple) and all(isinstance(x, tuple) for x in d):
        if len(d) == 3 and all(isinstance(v, str) for v in d[0] + d[1]):
            return graphs.format_graph_descriptor(d)
        if len(d) == 2 and all(isinstance(v, str) for v in d[0]) and all(isinstance(b, int) for b in d[1]):
            return trees.format_tree_descriptor(d)
    return json.dumps(simplicial.to_jsonable(d), separators=(",", ":"), ensure_ascii=False)


# commands ----------------------------------------------------------------


def cmd_build(args) -> int:
    kind = args.kind
    if kind in ("simplex", "spine"):
        if args.n is None:
            raise InputError(f"--kind {kind} needs --n")
        N = _truncation(args)
        try:
            K = simplicial.standard_simplex(args.n, N) if kind == "simplex" else simplicial.spine(args.n, N)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        if args.input is None:
            raise InputError(f"--kind {kind} needs an input file")
        N = _truncation(args, 3 if kind == "double-cat" else 0)
        if kind == "graph":
            K = graphs.build_XG(_parse(args.input, graphs.Multigraph.from_json, "graph"), N)
        elif kind == "tree":
            K = trees.build_XT(_parse(args.input, trees.RootedTree.from_json, "tree"), N)
        elif kind in ("monoid", "partial-monoid"):
            M = _parse(args.input, lambda d: nerves.PartialMonoid.from_json(d).check(), "partial monoid")
            if kind == "monoid" and not M.is_total:
                raise InputError(f"{args.input}: product table is partial; use --kind partial-monoid")
            K = nerves.nerve_partial_monoid(M, N)
        elif kind == "category":
            C = _parse(args.input, lambda d: nerves.FiniteCategory.from_json(d).check(), "category")
            K = nerves.nerve_category(C, N)
        else:
            D = _load_double_category(args.input)
            try:
                K = doublecat.s_construction(D, N)
            except ValueError as exc:
                raise InputError(f"{args.input}: {exc}") from exc
    sizes = K.sizes()
    _emit(args, K.to_json(), f"{K.label}: level sizes {sizes}")
    return 0


def cmd_check(args) -> int:
    K = _load_sset(args.input)
    selected = [name for name in ("validate", "segal1", "segal2", "path_criterion") if getattr(args, name)]
    if not selected:
        selected = ["validate"]
    reports = []
    ok = True
    for name in selected:
        if name == "validate":
            r = simplicial.validate(K, limit=50)
            payload = r.to_json()
        elif name == "segal1":
            r = segal.segal1_check(K)
            payload = r.to_json()
        elif name == "segal2":
            if K.truncation < 3:
                raise InputError("2-Segal checks need truncation >= 3")
            r = segal.segal2_check(K)
            payload = r.to_json()
        else:
            if K.truncation < 3:
                raise InputError("the path-space criterion needs truncation >= 3")
            r = segal.path_space_criterion_check(K)
            payload = r.to_json()
        ok = ok and bool(r)
        reports.append(payload)
    payload = reports[0] if len(reports) == 1 else reports
    _emit(args, payload, "\n".join(_verdict_line(r) for r in reports))
    return 0 if ok else 1


def cmd_hall(args) -> int:
    K = _load_sset(args.input)
    if not K.is_reduced():
        raise InputError(f"Hall algebra needs a reduced set; level 0 has {K.size(0)} simplices")
    if K.truncation < 2:
        raise InputError("Hall algebra needs truncation >= 2")
    result: dict[str, Any] = {}
    texts = []
    if not args.skip_2segal_check and K.truncation >= 3:
        pre = segal.segal2_check(K)
        result["2-segal"] = pre.to_json()
        if not pre:
            _emit(args, result, _verdict_line(result["2-segal"]))
            return 1
    A = hall.hall_algebra(K)
    table = hall.export_table(A, args.table)
    result["table"] = json.loads(table) if args.table == "json" else table
    texts.append(hall.export_table(A, args.table, _short_name if args.table == "text" else None).rstrip("\n"))
    ok = True
    laws = [x.strip() for x in args.laws.split(",") if x.strip()] if args.laws else []
    result["laws"] = []
    for law in laws:
        if law not in hall.LAWS:
            raise InputError(f"unknown law {law!r}; choose from {', '.join(hall.LAWS)}")
        r = hall.LAWS[law](A)
        ok = ok and r.ok
        result["laws"].append(r.to_json())
        texts.append(_verdict_line({"check": r.law, **r.to_json()}))
    _emit(args, result, "\n".join(texts))
    return 0 if ok else 1


def cmd_sconstruct(args) -> int:
    args.kind = "double-cat"
    return cmd_build(args)


def cmd_pconstruct(args) -> int:
    K = _load_sset(args.input)
    if K.truncation < 3:
        raise InputError("the construction needs truncation >= 3")
    try:
        D = doublecat.p_construction(K)
    except ValueError as exc:
        _emit(args, {"check": "pconstruct", "verdict": "fail", "reason": str(exc)}, f"pconstruct: fail\n  {exc}")
        return 1
    _emit(args, D.to_json(), f"{D.label}: {D.sizes()}")
    return 0


def cmd_roundtrip(args) -> int:
    if args.kind == "double-cat":
        D = _load_double_category(args.input)
        try:
            report = doublecat.counit_comparison(D)
        except ValueError as exc:
            report = doublecat.ComparisonReport("counit", False, str(exc))
    else:
        K = _load_sset(args.input)
        N = args.truncate if args.truncate is not None else K.truncation
        if N > K.truncation:
            raise InputError(f"input is truncated at {K.truncation}, cannot compare up to {N}")
        if not K.is_reduced():
            raise InputError("the unit comparison needs a reduced simplicial set")
        if N < 3:
            raise InputError("the unit comparison needs truncation >= 3")
        try:
            report = doublecat.unit_comparison(K, N)
        except ValueError as exc:
            report = doublecat.ComparisonReport("unit", False, str(exc))
    payload = report.to_json()
    text = f"{payload['check']}: {payload['verdict']}"
    if payload["reason"]:
        text += f"\n  {payload['reason']}" + (f" (level {payload['level']})" if payload["level"] is not None else "")
    _emit(args, payload, text)
    return 0 if report.ok else 1


# parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="plain-text rendering instead of JSON")
    common.add_argument("--compact", action="store_true", help="single-line JSON")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="segalsets", description="Finite 2-Segal sets: builders, checks, Hall algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build a truncated simplicial set")
    b.add_argument(
        "--kind",
        required=True,
        choices=["graph", "tree", "monoid", "partial-monoid", "category", "double-cat", "simplex", "spine"],
    )
    b.add_argument("input", nargs="?", help="JSON input (not used for simplex and spine)")
    b.add_argument("--truncate", "-N", type=int, help="top level (default 5, or $SEGAL_MAX_LEVEL)")
    b.add_argument("--n", type=int, help="dimension for simplex and spine")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", parents=[common], help="check identities and Segal conditions")
    c.add_argument("input", help="simplicial-set JSON")
    c.add_argument("--validate", action="store_true", help="simplicial identities")
    c.add_argument("--1-segal", dest="segal1", action="store_true")
    c.add_argument("--2-segal", dest="segal2", action="store_true")
    c.add_argument("--path-criterion", dest="path_criterion", action="store_true")
    c.set_defaults(func=cmd_check)

    h = sub.add_parser("hall", parents=[common], help="Hall algebra table and laws")
    h.add_argument("input", help="simplicial-set JSON of a reduced 2-Segal set")
    h.add_argument("--table", choices=["text", "csv", "json"], default="text")
    h.add_argument("--laws", default="", help="comma list from assoc,unital,comm")
    h.add_argument("--skip-2segal-check", action="store_true")
    h.set_defaults(func=cmd_hall)

    s = sub.add_parser("sconstruct", parents=[common], help="S-construction of a double category")
    s.add_argument("input", help="double-category JSON")
    s.add_argument("--truncate", "-N", type=int)
    s.add_argument("--n", type=int, help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_sconstruct)

    pc = sub.add_parser("pconstruct", parents=[common], help="double category of a 2-Segal set")
    pc.add_argument("input", help="simplicial-set JSON, truncation >= 3")
    pc.set_defaults(func=cmd_pconstruct)

    r = sub.add_parser("roundtrip", parents=[common], help="unit or counit comparison")
    r.add_argument("input")
    r.add_argument("--kind", required=True, choices=["double-cat", "sset"])
    r.add_argument("--truncate", "-N", type=int, help="top level compared (sset only)")
    r.set_defaults(func=cmd_roundtrip)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
