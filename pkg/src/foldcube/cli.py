"""Command-line front end.

Exit status: 0 success, 1 verification failure, 2 usage or precondition
error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from foldcube import config
from foldcube.errors import FoldcubeError, ResourceGuardExceeded, VerificationError
from foldcube.formats import (
    parse_matching,
    witness_json,
    write_certificate,
    write_edge_list,
    write_matching,
)
from foldcube.isomorphism import find_noniso_witness, recognize_hypercube, remove_matching
from foldcube.matching import (
    classify_matching,
    count_perfect_matchings,
    enumerate_perfect_matchings,
    random_perfect_matching,
    sample_perfect_matching,
)
from foldcube.topology import build_folded_hypercube, build_hypercube, position_mask
from foldcube.verify import (
    verify_lemma_common_neighbors,
    verify_theorem1,
    verify_theorem2,
    verify_two_copies,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


class UsageError(Exception):
    pass


def _build(n: int, kind: str):
    return build_folded_hypercube(n) if kind == "folded" else build_hypercube(n)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _write_json(payload, path: str | None) -> None:
    if path:
        Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8", newline="\n")


def _read_matching(path: str, n: int):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read matching file: {exc}") from None
    return parse_matching(text, n)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    _emit(write_edge_list(_build(args.n, args.kind)), args.out)
    return EXIT_OK


def cmd_matchings(args) -> int:
    g = _build(args.n, args.kind)
    if args.action == "count":
        count = count_perfect_matchings(g)
        print(count)
        _write_json({"n": args.n, "kind": args.kind, "count": count}, args.json)
    elif args.action == "enumerate":
        blocks = [write_matching(m) for m in enumerate_perfect_matchings(g)]
        _emit("\n".join(blocks), args.out)
        _write_json({"n": args.n, "kind": args.kind, "count": len(blocks)}, args.json)
    else:
        sampler = sample_perfect_matching
        if g.vertex_count > config.COUNT_MAX_VERTICES:
            if not args.allow_nonuniform:
                raise ResourceGuardExceeded("counting vertex limit", config.COUNT_MAX_VERTICES, g.vertex_count)
            sampler = random_perfect_matching
        blocks = [write_matching(sampler(g, args.seed + k)) for k in range(args.k)]
        _emit("\n".join(blocks), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    m = _read_matching(args.matching, args.n)
    cls = classify_matching(args.n, m)
    print(cls)
    _write_json({"n": args.n, "class": str(cls)}, args.json)
    return EXIT_OK


def cmd_remove(args) -> int:
    m = _read_matching(args.matching, args.n)
    rest = remove_matching(build_folded_hypercube(args.n), m)
    _emit(write_edge_list(rest), args.out)
    if not args.check_iso:
        return EXIT_OK
    result = recognize_hypercube(rest, args.n)
    if result.is_isomorphic:
        print(f"isomorphic to Q_{args.n}", file=sys.stderr)
        if args.certificate:
            Path(args.certificate).write_text(write_certificate(result.certificate), encoding="utf-8")
        _write_json({"n": args.n, "isomorphic": True}, args.json)
        return EXIT_OK
    print(f"not isomorphic to Q_{args.n}", file=sys.stderr)
    sys.stderr.write(witness_json(result.witness, args.n))
    _write_json({"n": args.n, "isomorphic": False, "witness": result.witness.to_dict(args.n)}, args.json)
    return EXIT_FAILED


def cmd_verify(args) -> int:
    timing = not args.no_timing
    if args.target == "theorem1":
        report = verify_theorem1(args.n)
    elif args.target == "theorem2":
        report = verify_theorem2(args.n, args.mode, args.samples, args.seed, args.threads)
    elif args.target == "lemma":
        report = verify_lemma_common_neighbors(args.n)
    else:
        positions = [args.i] if args.i is not None else range(1, args.n + 1)
        for i in positions:
            verify_two_copies(args.n, i)
            print(f"FQ_{args.n} - (E^{i} + E_c): two copies of Q_{args.n - 1}")
        _write_json({"check": "two_copies", "n": args.n, "positions": list(positions), "ok": True}, args.json)
        return EXIT_OK

    payload = report.to_dict(timing)
    if args.target == "lemma":
        print(f"FQ_{report.n}: {report.pairs} pairs, spectrum {payload['spectrum']}, "
              f"{len(report.violations)} pairs outside {{0, 2}}")
    else:
        print(f"{report.theorem} n={report.n} {report.mode}: examined {report.examined}, "
              f"passed {len(report.passes)}, failed {report.fail_count}")
        print("census " + json.dumps(payload["census"]))
        if report.corollary_witnessed:
            print(f"some perfect matching M leaves FQ_{report.n} - M not isomorphic to Q_{report.n}")
    _write_json(payload, args.json)
    return EXIT_OK


def cmd_witness(args) -> int:
    m = _read_matching(args.matching, args.n)
    witness = find_noniso_witness(args.n, m)
    text = witness_json(witness, args.n)
    sys.stdout.write(text)
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8", newline="\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foldcube", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, kind=False):
        p.add_argument("--n", type=int, required=True, help="dimension")
        if kind:
            p.add_argument("--kind", choices=("hypercube", "folded"), default="folded")
        p.add_argument("--json", metavar="PATH", help="write a JSON result here")

    p = sub.add_parser("gen", help="print the edge list of Q_n or FQ_n")
    common(p, kind=True)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("matchings", help="enumerate, count or sample perfect matchings")
    common(p, kind=True)
    p.add_argument("--action", choices=("enumerate", "count", "sample"), default="count")
    p.add_argument("--k", type=int, default=1, help="number of samples")
    p.add_argument("--seed", type=int)
    p.add_argument("--allow-nonuniform", action="store_true",
                   help="past the counting guard, sample by randomised backtracking")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_matchings)

    p = sub.add_parser("classify", help="classify a perfect matching of FQ_n")
    common(p)
    p.add_argument("--matching", required=True, metavar="PATH")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("remove", help="delete a matching from FQ_n")
    common(p)
    p.add_argument("--matching", required=True, metavar="PATH")
    p.add_argument("--check-iso", action="store_true", help="decide whether the result is Q_n")
    p.add_argument("--certificate", metavar="PATH", help="write the labeling here when isomorphic")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_remove)

    p = sub.add_parser("verify", help="run a verification experiment")
    p.add_argument("target", choices=("theorem1", "theorem2", "lemma", "two_copies"))
    common(p)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int)
    p.add_argument("--i", type=int, help="position for two_copies (default: all)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="non-isomorphism witness for FQ_n - M")
    common(p)
    p.add_argument("--matching", required=True, metavar="PATH")
    p.set_defaults(func=cmd_witness)
    return parser


def _validate(args) -> None:
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.n > config.max_dimension():
        raise ResourceGuardExceeded(f"dimension limit ({config.MAX_N_ENV})", config.max_dimension(), args.n)
    if args.command == "matchings" and args.action == "sample":
        if args.seed is None:
            raise UsageError("--seed is required for sampling")
        if args.k < 1:
            raise UsageError("--k must be positive")
    if args.command == "verify":
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        if args.target == "theorem2" and args.mode == "sampled":
            if args.seed is None:
                raise UsageError("--seed is required for sampled mode")
            if args.samples < 0:
                raise UsageError("--samples must be non-negative")
        if args.target != "theorem2" and args.mode == "sampled":
            raise UsageError(f"{args.target} has no sampled mode")
        if args.i is not None:
            if args.target != "two_copies":
                raise UsageError("--i only applies to two_copies")
            position_mask(args.n, args.i)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _validate(args)
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        for name, artifact in exc.artifacts.items():
            body = artifact if isinstance(artifact, str) else json.dumps(artifact, indent=2) + "\n"
            sys.stderr.write(f"--- {name}\n{body}")
        return EXIT_FAILED
    except ResourceGuardExceeded as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, FoldcubeError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
