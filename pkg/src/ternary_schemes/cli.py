"""Command line front end.

Exit codes: 0 success, 1 verification or classification mismatch, 2 usage
or parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .axioms import (
    AxiomViolation,
    CHECK_ORDER,
    check_coordinate_closure,
    check_regularity,
    check_valency,
    is_circulant,
    is_symmetric,
    slot_valencies,
    validate_ast,
)
from .classify import ClassificationJob, ClassificationResult, classify
from .document import FORMATS, JSON, DocumentError, document_from_candidate, load, serialize
from .groups import COORD_PERMS, GroupError, parse_group_spec
from .reproduction import run_suite

log = logging.getLogger(__name__)


def _orders(value: str) -> int | None:
    if value == "all":
        return None
    try:
        m = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer order or 'all'") from None
    if m < 4:
        raise argparse.ArgumentTypeError("order must be at least 4")
    return m


def format_summary(result: ClassificationResult, group: str) -> str:
    job = result.job
    lines = [f"n={job.n} group={group} action={job.action} orbits={result.n_orbits} "
             f"pipeline={'legacy' if result.legacy else 'default'}"]
    for s in result.stats:
        parts = [f"enumerated {s.enumerated}"]
        if s.orbits is not None:
            parts.append(f"orbits {s.orbits}")
        parts += [f"valency {s.valency}", f"closure {s.closure}", f"asts {s.asts}", f"classes {s.classes}"]
        lines.append(f"order {s.order}: " + ", ".join(parts))
    lines.append(f"classes: {len(result.classes)}")
    for i, c in enumerate(result.classes, start=1):
        sizes = [len(r) for r in c.representative.nontrivial]
        lines.append(f"  class {i}: order {c.order}, relation sizes {sizes}, isomorphic copies {c.size}")
    lines.append(f"time: {result.wall_time:.2f}s")
    return "\n".join(lines)


def cmd_enumerate(args) -> int:
    try:
        group, action = parse_group_spec(args.n, args.group)
        job = ClassificationJob(args.n, group, action, args.orders)
        result = classify(job, legacy=args.legacy_order, threads=args.threads)
    except (GroupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    summary = format_summary(result, args.group)
    docs = [serialize(document_from_candidate(c.representative, args.group), args.format)
            for c in result.classes]
    ext = "json" if args.format == JSON else "txt"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, text in enumerate(docs, start=1):
            (out / f"class_{i:03d}.{ext}").write_text(text, encoding="utf-8")
        (out / "summary.txt").write_text(summary + "\n", encoding="utf-8")
        print(summary)
    else:
        print(summary)
        for i, text in enumerate(docs, start=1):
            print(f"--- class {i} ---")
            sys.stdout.write(text)
    return 0


def _load(path: str):
    try:
        return load(path)
    except DocumentError as exc:
        print(f"{path}: parse error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"{path}: {exc.strerror}", file=sys.stderr)
    return None


def cmd_verify(args) -> int:
    doc = _load(args.path)
    if doc is None:
        return 2
    x = doc.candidate
    checks = {"valency": check_valency, "closure": check_coordinate_closure,
              "regularity": check_regularity}
    values = {}
    for name in CHECK_ORDER:
        try:
            values[name] = checks[name](x)
            print(f"{name}: pass")
        except AxiomViolation as exc:
            print(f"{name}: FAIL ({exc})")
    ok = len(values) == len(checks)
    if "valency" in values:
        print("valencies: " + " ".join(map(str, values["valency"])))
    if "regularity" in values:
        t = values["regularity"]
        print(f"intersection numbers: {np.count_nonzero(t)} nonzero cells, "
              f"column sums {sorted(set(t.sum(axis=(0, 1, 2)).tolist()))}")
    print("verdict: " + ("AST" if ok else "not an AST"))
    return 0 if ok else 1


def cmd_invariants(args) -> int:
    doc = _load(args.path)
    if doc is None:
        return 2
    x = doc.candidate
    report = validate_ast(x)
    if not report.passed:
        print(f"not an AST: {report.failure}", file=sys.stderr)
        return 1
    print(f"n {x.n}, order {x.order}")
    print("valencies: " + " ".join(map(str, report.valencies)))
    for slot, v in slot_valencies(x).items():
        if slot != 3:
            print(f"slot {slot} counts: " + ("not constant" if v is None else " ".join(map(str, v))))
    print("intersection numbers (i j k l: value):")
    for idx in np.argwhere(report.tensor):
        print("  " + " ".join(map(str, idx)) + f": {report.tensor[tuple(idx)]}")
    print("coordinate action (permutation: image of R0..Rm):")
    for c, row in zip(COORD_PERMS, report.coord_table):
        print(f"  {str(c):8s} " + " ".join(map(str, row)))
    print(f"symmetric: {str(is_symmetric(x, report.coord_table)).lower()}")
    print(f"circulant: {str(is_circulant(x)).lower()}")
    return 0


def cmd_paper_suite(args) -> int:
    outcomes = run_suite(legacy=args.legacy_order, threads=args.threads, disabled=args.disable)
    width = max(len(o.run.name) for o in outcomes)
    for o in outcomes:
        status = "PASS" if o.passed else "FAIL"
        print(f"{o.run.name:{width}s}  {status}  classes={len(o.result.classes)}  "
              f"candidates={o.result.enumerated}  {o.seconds:.2f}s")
        for line in o.diff:
            print(f"{'':{width}s}    {line}")
    return 0 if all(o.passed for o in outcomes) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ternary-schemes",
                                     description="Enumerate and check association schemes on triples.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="classify ASTs invariant under a group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group", default="trivial",
                   help="trivial | coord-s3 | cyclic:(1,...,n) | perm:<cycles>;<cycles>")
    p.add_argument("--orders", type=_orders, default=None, help="an order m >= 4, or 'all'")
    p.add_argument("--out")
    p.add_argument("--format", choices=FORMATS, default=JSON)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--legacy-order", action="store_true",
                   help="group isomorphic candidates before checking axioms")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="check an AST document against the axioms")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", help="print the constants of an AST document")
    p.add_argument("path")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("paper-suite", help="rerun the n = 3, 4, 5 reference classifications")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--legacy-order", action="store_true")
    p.add_argument("--disable", action="append", default=[], choices=CHECK_ORDER,
                   help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_paper_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
