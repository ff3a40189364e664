"""Command-line front end.

Exit codes: 0 computed, 1 usage or parse error, 2 invalid structure,
3 assertion or regression failure, 4 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import atlas, structfile
from .constructions import VnDescriptor, extend_endo_vn, make_vn_module
from .core import identity_endo
from .errors import (
    AssertionFailure,
    AxiomViolation,
    BudgetExceeded,
    CapExceeded,
    FormulaError,
    RigidLabError,
)
from .properties import ALL_PROPERTIES, check, is_plain, parse_property

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_ASSERT, EXIT_BUDGET = 0, 1, 2, 3, 4
EXTEND_CAP = 4096


class UsageError(Exception):
    pass


def _emit(obj, out):
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _property_list(text: str, degree: int) -> list[str]:
    if text.strip() == "all":
        names = list(ALL_PROPERTIES)
    else:
        names = [p.strip() for p in text.split(",") if p.strip()]
    out = []
    for p in names:
        try:
            name, bound = parse_property(p)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if bound is not None and "(" not in p:
            bound = degree
        out.append(name if bound is None else f"{name}({bound})")
    return out


def _load(path):
    try:
        return structfile.load(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _run_checks(module, endo, props, out, limit):
    for p in props:
        sigma = identity_endo(module.ring) if is_plain(p) else endo
        _emit(check(module, sigma, p, limit=limit).to_json(), out)


def cmd_check(args, out):
    props = _property_list(args.properties, args.armendariz_degree)
    s = _load(args.file)
    endo = identity_endo(s.ring) if args.sigma == "identity" else s.endo
    _run_checks(s.module, endo, props, out, args.limit)
    return EXIT_OK


def cmd_verify_paper(args, out):
    from .reference_examples import run

    results = run(args.example)
    for r in results:
        _emit(r.to_json(), out)
    passed = sum(r.passed for r in results)
    _emit({"summary": f"{passed}/{len(results)} PASS"}, out)
    return EXIT_OK if passed == len(results) else EXIT_ASSERT


def _parse_vn(text: str) -> tuple:
    try:
        vals = tuple(sorted({int(v) for v in text.split(",") if v.strip()}))
    except ValueError as exc:
        raise UsageError(f"bad --vn value {text!r}") from exc
    if not vals or any(v < 2 for v in vals):
        raise UsageError("--vn values must be at least 2")
    return vals


def _load_corpus(args):
    if args.corpus == "default":
        spec = atlas.CorpusSpec() if args.max_size is None else atlas.CorpusSpec.capped(args.max_size)
        return atlas.generate_corpus(spec)
    try:
        doc = json.loads(Path(args.corpus).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read corpus {args.corpus}: {exc}") from exc
    docs = doc["entries"] if isinstance(doc, dict) and "entries" in doc else doc
    if isinstance(docs, dict):
        docs = [docs]
    structures = [structfile.from_dict(d) for d in docs]
    if args.max_size is not None:
        structures = [s for s in structures
                      if max(s.module.size, s.ring.size) <= args.max_size]
    return atlas.corpus_from_structures(structures)


def _settings(args):
    return atlas.Settings(armendariz_degree=args.armendariz_degree)


def cmd_atlas(args, out):
    vn = _parse_vn(args.vn)
    corpus = _load_corpus(args)
    report = atlas.run_atlas(corpus, atlas.default_implications(vn), vn=vn,
                             settings=_settings(args))
    text = report.dumps()
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    summary = {"entries": len(corpus), "assert_violations": report.assert_violations,
               "discrepancies": len(report.discrepancies)}
    if args.out:
        _emit(summary, out)
    if args.assert_mode and report.assert_violations:
        return EXIT_ASSERT
    return EXIT_OK


def cmd_extend(args, out):
    s = _load(args.file)
    if args.vn < 2:
        raise UsageError("--vn must be at least 2")
    if max(s.module.size, s.ring.size) ** args.vn > EXTEND_CAP:
        raise BudgetExceeded(f"V_{args.vn} would exceed {EXTEND_CAP} elements")
    d = VnDescriptor(args.vn, s.ring, s.endo, None if s.module_is_regular else s.module)
    V, _ = make_vn_module(d)
    sbar = extend_endo_vn(d)
    doc = structfile.to_dict(f"V{args.vn}({s.name or 'structure'})", V, sbar,
                             regular=s.module_is_regular)
    text = structfile.dump(doc, args.out)
    if not args.out:
        out.write(text + "\n")
    props = _property_list(args.check, args.armendariz_degree) if args.check else []
    _run_checks(V, sbar, props, out, args.limit)
    return EXIT_OK


def cmd_search(args, out):
    from .formula import parse

    parse(args.target)
    corpus = _load_corpus(args)
    res = atlas.search_counterexample(args.target, corpus, args.budget, settings=_settings(args))
    _emit(res.to_json(), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rigidlab",
                                description="Decide rigidity-type properties of finite modules.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--armendariz-degree", type=int, default=2, metavar="D",
                        help="degree bound for Armendariz checks (default 2)")

    c = sub.add_parser("check", help="run property deciders on a structure file")
    c.add_argument("file")
    c.add_argument("--properties", default="rigid",
                   help="comma-separated property names, or 'all'")
    c.add_argument("--sigma", default="file", choices=("file", "identity"),
                   help="use the file's endomorphism or the identity")
    c.add_argument("--limit", type=int, default=1024, help="witness cap")
    common(c)
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify-paper", help="recompute the worked examples")
    v.add_argument("--example", default="all",
                   choices=("1.4", "1.6", "2.5", "2.6", "2.7", "all"))
    v.set_defaults(func=cmd_verify_paper)

    a = sub.add_parser("atlas", help="evaluate implications over a corpus")
    a.add_argument("--corpus", default="default", help="'default' or a JSON corpus file")
    a.add_argument("--vn", default="2,3", help="comma-separated extension lengths")
    a.add_argument("--max-size", type=int, default=None)
    a.add_argument("--out", default=None)
    a.add_argument("--assert", dest="assert_mode", action="store_true",
                   help="exit 3 on any assert-mode violation")
    common(a)
    a.set_defaults(func=cmd_atlas)

    e = sub.add_parser("extend", help="build V_n of a structure and check it")
    e.add_argument("file")
    e.add_argument("--vn", type=int, default=2)
    e.add_argument("--check", default="", help="comma-separated properties, or 'all'")
    e.add_argument("--out", default=None)
    e.add_argument("--limit", type=int, default=1024)
    common(e)
    e.set_defaults(func=cmd_extend)

    s = sub.add_parser("search", help="first corpus entry satisfying a formula")
    s.add_argument("--target", required=True, help="formula or preset (q2.9, drop_semicomm)")
    s.add_argument("--budget", type=int, default=None, help="maximum entries to scan")
    s.add_argument("--corpus", default="default")
    s.add_argument("--max-size", type=int, default=None)
    common(s)
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "armendariz_degree", 2) < 1:
        print("error: --armendariz-degree must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "budget", None) is not None and args.budget <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, FormulaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AxiomViolation as exc:
        _emit({"error": "invalid structure", "axiom": exc.axiom,
               "witness": list(exc.witness)}, sys.stderr)
        return EXIT_INVALID
    except AssertionFailure as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except (BudgetExceeded, CapExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except RigidLabError as exc:
        _emit({"error": "invalid structure", "detail": str(exc)}, sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
