"""Command-line front end. Every invocation writes exactly one JSON document.

Exit status: 0 success, 1 usage or internal error, 2 NOT_APPLICABLE,
3 FULL_RANK_FAILED.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certify import EXIT_CODES, STRATEGIES, certify_perfect
from .formats import FormatError, canonicalize, is_perfect, parse_format, typical_rank_bounds
from .probe import AlsConfig, generic_rank_probe, typical_rank_sample
from .witness import build_witness

DEFAULT_SEED = 42


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _format(text: str):
    return canonicalize(parse_format(text))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="perfect-formats", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("format", help="mode sizes, e.g. 2x2x3")
        sp.add_argument("--out", help="write the JSON document here instead of stdout")
        return sp

    add("bounds", "typical-rank bounds and the perfectness threshold q")
    add("perfect", "closed-form perfectness verdict")
    sp = add("certify", "exact Jacobian full-rank certificate")
    sp.add_argument("--paper-only", action="store_true",
                    help="only try the closed-form witness, no fallback points")
    sp = add("witness", "dump the closed-form witness point")
    sp.add_argument("--dump", action="store_true", help="accepted for compatibility; always dumps")
    sp = add("generic-rank", "generic rank from Jacobians at random integer points")
    sp.add_argument("--max-r", type=int, help="largest r to try (default: upper bound)")
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp = add("probe-als", "ALS sampling of the rank-r fraction of Gaussian tensors")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--samples", type=int, default=AlsConfig.samples)
    sp.add_argument("--restarts", type=int, default=AlsConfig.restarts)
    sp.add_argument("--max-iters", type=int, default=AlsConfig.max_iters)
    sp.add_argument("--tol", type=float, default=AlsConfig.tol)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--csv", help="also write per-sample residuals as CSV")
    return p


def run(argv) -> tuple[int, dict]:
    args = build_parser().parse_args(argv)
    f = _format(args.format)
    status = 0
    if args.command == "bounds":
        b = typical_rank_bounds(f)
        doc = {"lower": b.lower, "upper": b.upper, "q": b.q}
    elif args.command == "perfect":
        v = is_perfect(f)
        doc = {"perfect": v.verdict, "q": v.q, "interval": list(v.interval)}
    elif args.command == "certify":
        cert = certify_perfect(f, ("paper",) if args.paper_only else STRATEGIES)
        doc = cert.to_json()
        status = EXIT_CODES[cert.verdict]
    elif args.command == "witness":
        if not is_perfect(f).verdict:
            raise UsageError(f"{f} is not perfect; no witness exists for it")
        doc = build_witness(f).to_json()
    elif args.command == "generic-rank":
        max_r = args.max_r if args.max_r is not None else typical_rank_bounds(f).upper
        doc = generic_rank_probe(f, max_r, args.trials, args.seed).to_json()
    elif args.command == "probe-als":
        if args.rank < 1:
            raise UsageError("--rank must be >= 1")
        cfg = AlsConfig(samples=args.samples, restarts=args.restarts,
                        max_iters=args.max_iters, tol=args.tol, seed=args.seed)
        rep = typical_rank_sample(f, args.rank, cfg)
        if args.csv:
            rep.write_csv(args.csv)
        doc = rep.to_json()
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown command {args.command}")
    text = json.dumps(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status, doc


def main(argv=None) -> int:
    try:
        status, _ = run(sys.argv[1:] if argv is None else argv)
    except (UsageError, FormatError, ValueError) as exc:
        print(f"perfect-formats: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"perfect-formats: internal error: {exc!r}", file=sys.stderr)
        return 1
    return status


if __name__ == "__main__":
    sys.exit(main())
