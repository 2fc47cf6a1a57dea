"""Command-line interface.

Subcommands: decide, verify, classify, enumerate, family.  Exit codes for
decide: 0 = Dense, 1 = Sparse, 2 = Unknown, 3 = usage error.  decide results
are cached as append-only JSONL (default ~/.cache/grassdense/verdicts.jsonl,
override with GRASSDENSE_CACHE); corrupt cache lines are skipped with a
warning on stderr.
"""

from __future__ import annotations

import argparse
import datetime
import itertools
import json
import os
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .core import DimensionVector, Status, Verdict, VectorParseError, parse
from .engine import Engine, Certificate
from .families import classification_json, classify_size, enumerate_vectors, \
    fibonacci_family, repeat_family
from .oracle import oracle_decide
from . import rules

EXIT_DENSE = 0
EXIT_SPARSE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3

# human-readable labels for rule ids (printed by --trace and --help)
RULE_LABELS = {
    rules.SUM_DENSE: "small total sum",
    rules.L3: "restrict to span",
    rules.L4_MERGE: "merge groups",
    rules.SUBSEQ_2N: "2n subsequence",
    rules.L6: "pair collapse",
    rules.L7: "largest block",
    rules.L8: "complementary pair",
    rules.L9: "span intersect",
    rules.L10: "intersection swap",
    rules.LENGTH4: "length-4 table",
    rules.POINTS_BASE: "point configurations",
    rules.SIZE_TABLE: "small-size table",
    rules.BALANCED: "balanced window",
    rules.EXCESS_L1: "excess collapse",
    rules.DOMINATION: "dominates sparse",
    rules.COMPLEMENT: "complement",
    rules.TRIVIALLY_SPARSE: "dimension count",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 3, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def _vec_json(v: DimensionVector) -> dict:
    return {"dims": list(v.dims), "n": v.ambient}


def _trace_json(cert: Optional[Certificate]) -> list:
    if cert is None:
        return []
    return [
        {"rule": s.rule_id, "direction": s.direction, "params": s.params_dict(),
         "from": str(s.input), "to": [str(o) for o in s.outputs]}
        for s in cert.steps
    ]


def _oracle_json(report) -> Optional[dict]:
    if report is None:
        return None
    return {"prime": report.prime, "primes": list(report.primes), "seed": report.seed,
            "samples": report.samples, "stab_dim": report.stab_dim,
            "expected": report.expected, "class": report.verdict_class.value}


def _record(d: DimensionVector, verdict: Verdict, method: str, key: dict) -> dict:
    return {
        "vector": _vec_json(d),
        "status": verdict.status.value,
        "method": method,
        "trivially_sparse": verdict.trivially_sparse,
        "trace": _trace_json(verdict.certificate),
        "oracle": _oracle_json(verdict.oracle),
        "key": key,
        "version": __version__,
        "timestamp": _now(),
    }


def _reason(verdict: Verdict) -> str:
    if verdict.certificate is not None:
        leaf = verdict.certificate.steps[-1]
        label = RULE_LABELS.get(leaf.rule_id, leaf.rule_id)
        bits = ", ".join(f"{k}={v}" for k, v in leaf.params)
        return f"{label}: {bits}" if bits else label
    if verdict.oracle is not None:
        r = verdict.oracle
        if r.is_dense:
            return (f"certified: stabilizer dimension {r.stab_dim} equals expected "
                    f"{r.expected} (prime {r.prime}, seed {r.seed})")
        return (f"monte-carlo: stabilizer dimension {r.stab_dim} > expected "
                f"{r.expected} on {r.samples} samples")
    return "undecided within budget"


def _print_trace(cert: Optional[Certificate], out) -> None:
    if cert is None:
        return
    for depth, s in enumerate(cert.steps):
        label = RULE_LABELS.get(s.rule_id, s.rule_id)
        params = ", ".join(f"{k}={v}" for k, v in s.params)
        arrow = " -> " + ", ".join(str(o) for o in s.outputs) if s.outputs else ""
        pad = "  " * depth
        out.write(f"{pad}{str(s.input)}  [{label}/{s.direction}"
                  f"{': ' + params if params else ''}]{arrow}\n")


# -- cache -------------------------------------------------------------------

def _cache_path() -> Path:
    env = os.environ.get("GRASSDENSE_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "grassdense" / "verdicts.jsonl"


def _cache_lookup(path: Path, key: dict) -> Optional[dict]:
    if not path.exists():
        return None
    hit = None
    try:
        with path.open() as fh:
            for i, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    sys.stderr.write(f"warning: skipping corrupt cache line {i} in {path}\n")
                    continue
                if rec.get("key") == key:
                    hit = rec  # last write wins
    except OSError as exc:
        sys.stderr.write(f"warning: cache unreadable ({exc})\n")
        return None
    return hit


def _cache_append(path: Path, record: dict) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("a") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    except OSError as exc:
        sys.stderr.write(f"warning: cache not written ({exc})\n")


# -- subcommands ---------------------------------------------------------------

def _parse_vector(text: str, parser: _Parser) -> DimensionVector:
    try:
        return parse(text)
    except VectorParseError as exc:
        parser.error(str(exc))


def cmd_decide(args, parser: _Parser) -> int:
    d = _parse_vector(args.vector, parser)
    key = {"canonical": str(d.canonical()), "oracle": args.oracle, "seed": args.seed,
           "samples": args.samples, "budget": args.budget}
    cache = _cache_path()
    record = None
    if not args.no_cache:
        record = _cache_lookup(cache, key)
    if record is None:
        engine = Engine(budget=args.budget)
        if args.oracle == "off":
            verdict = engine.decide(d, budget=args.budget)
            method = "engine"
        elif args.oracle == "auto":
            verdict = engine.decide_with_oracle(d, budget=args.budget,
                                                samples=args.samples, seed=args.seed)
            method = "engine" if verdict.oracle is None else "oracle"
        else:  # force
            verdict = engine.decide(d, budget=args.budget)
            report = oracle_decide(d, samples=args.samples, seed=args.seed)
            method = "engine+oracle" if verdict.status is not Status.UNKNOWN else "oracle"
            if verdict.status is Status.UNKNOWN:
                verdict = Verdict(Status.DENSE if report.is_dense else Status.SPARSE,
                                  trivially_sparse=d.is_trivially_sparse, oracle=report)
            else:
                verdict = Verdict(verdict.status, trivially_sparse=verdict.trivially_sparse,
                                  certificate=verdict.certificate, oracle=report)
        record = _record(d, verdict, method, key)
        if not args.no_cache:
            _cache_append(cache, record)
    else:
        record = dict(record, timestamp=_now())
        verdict = None

    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        status = record["status"]
        if verdict is not None:
            print(f"{status.upper()} ({_reason(verdict)})")
            if args.trace:
                _print_trace(verdict.certificate, sys.stdout)
        else:
            print(f"{status.upper()} (cached)")
            if args.trace:
                for line in record["trace"]:
                    print(f"  {line['from']} [{RULE_LABELS.get(line['rule'], line['rule'])}"
                          f"/{line['direction']}] -> {', '.join(line['to']) or '-'}")
    return {"Dense": EXIT_DENSE, "Sparse": EXIT_SPARSE}.get(record["status"], EXIT_UNKNOWN)


def cmd_verify(args, parser: _Parser) -> int:
    max_len = args.max_len if args.max_len is not None else args.max_n + 1
    engine = Engine()
    t0 = time.time()
    total = unknown = 0
    disagreements = []
    for d in enumerate_vectors(args.max_n, max_len):
        total += 1
        v = engine.decide(d)
        if v.status is Status.UNKNOWN:
            unknown += 1
            print(f"UNKNOWN {d}")
            continue
        rep = oracle_decide(d, samples=args.samples, seed=args.seed)
        if rep.is_dense != (v.status is Status.DENSE):
            disagreements.append((d, v.status.value, rep.verdict_class.value))
            print(f"DISAGREE {d}: engine={v.status.value} oracle={rep.verdict_class.value} "
                  f"stab={rep.stab_dim} expected={rep.expected}")
    dt = time.time() - t0
    print(f"{total} vectors checked (n <= {args.max_n}, length <= {max_len}) in {dt:.1f}s")
    print(f"{unknown} unknown")
    print(f"{len(disagreements)} disagreements")
    return EXIT_DENSE if not disagreements else EXIT_SPARSE


def cmd_classify(args, parser: _Parser) -> int:
    c = classify_size(args.size)
    if args.json:
        sys.stdout.write(classification_json(c))
    else:
        sys.stdout.write(c.to_text())
    return EXIT_DENSE


def cmd_enumerate(args, parser: _Parser) -> int:
    vecs = enumerate_vectors(args.max_n, args.max_len, args.max_size)
    if args.json:
        print(json.dumps([_vec_json(v) for v in vecs]))
    else:
        for v in vecs:
            print(v)
    return EXIT_DENSE


def cmd_family(args, parser: _Parser) -> int:
    base = _parse_vector(args.base, parser)
    try:
        if args.kind == "fibonacci":
            members = fibonacci_family(base, args.k)
        else:
            members = repeat_family(base, args.k)
    except ValueError as exc:
        parser.error(str(exc))
    if args.json:
        print(json.dumps([_vec_json(v) for v in members]))
    else:
        for v in members:
            print(v)
    return EXIT_DENSE


def _build_parser() -> _Parser:
    labels = "\n".join(f"  {rid:16s} {label}" for rid, label in sorted(RULE_LABELS.items()))
    p = _Parser(prog="grassdense",
                description="Decide density of diagonal projective actions on "
                            "products of Grassmannians.",
                epilog="trace rule labels:\n" + labels,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="decide one vector, e.g. \"1,2,2;5\" or \"(1^2,2;5)\"")
    d.add_argument("vector")
    d.add_argument("--oracle", choices=("off", "auto", "force"), default="auto")
    d.add_argument("--json", action="store_true")
    d.add_argument("--trace", action="store_true")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--samples", type=int, default=3)
    d.add_argument("--budget", type=int, default=50_000)
    d.add_argument("--no-cache", action="store_true")
    d.set_defaults(fn=cmd_decide)

    v = sub.add_parser("verify", help="sweep engine against the sampling oracle")
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--max-len", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=2)
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("classify", help="classification of dense vectors by maximal entry")
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=cmd_classify)

    e = sub.add_parser("enumerate", help="list vectors in graded order")
    e.add_argument("--max-n", type=int, required=True)
    e.add_argument("--max-len", type=int, required=True)
    e.add_argument("--max-size", type=int, default=None)
    e.add_argument("--json", action="store_true")
    e.set_defaults(fn=cmd_enumerate)

    f = sub.add_parser("family", help="build a structured family from a base vector")
    f.add_argument("kind", choices=("fibonacci", "repeat"))
    f.add_argument("--base", required=True)
    f.add_argument("-k", type=int, required=True)
    f.add_argument("--json", action="store_true")
    f.set_defaults(fn=cmd_family)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, parser)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
