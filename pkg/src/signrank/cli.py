"""Command-line entry point: ``signrank <subcommand> ...``.

Exit status: 0 on success, 1 when a claim fails or no certificate exists,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import linalg, structural
from .pattern import Block, PatternError, load_pattern
from .realize import (
    SampleConfig,
    empirical_min_rank,
    sample_min_rank_realization,
    sample_realization,
)
from .verify import verify_paper_claims

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def _parse_block(text: str) -> Block:
    """``R1,R2xC1,C2`` -> Block."""
    try:
        r, c = text.lower().split("x")
        rows = tuple(int(t) for t in r.split(","))
        cols = tuple(int(t) for t in c.split(","))
        return Block(rows, cols)
    except (ValueError, PatternError) as exc:
        raise argparse.ArgumentTypeError(f"expected R1,R2xC1,C2, got {text!r} ({exc})") from None


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _sampling_args(p: argparse.ArgumentParser, trials: int = 100) -> None:
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--trials", type=_nonnegative, default=trials)
    p.add_argument("--magnitude", type=_positive, default=10)


def cmd_verify(args) -> int:
    cfg = SampleConfig(args.seed, args.magnitude, args.trials)
    report = verify_paper_claims(cfg)
    print(report.table())
    if args.json:
        Path(args.json).write_text(report.to_json(), encoding="utf-8")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_rank(args) -> int:
    r = linalg.rank(linalg.load_matrix(args.file))
    _emit(args, {"rank": r}, str(r))
    return EXIT_OK


def cmd_det(args) -> int:
    d = linalg.determinant(linalg.load_matrix(args.file))
    _emit(args, {"determinant": str(d)}, str(d))
    return EXIT_OK


def cmd_charpoly(args) -> int:
    p = linalg.char_poly(linalg.load_matrix(args.file))
    _emit(args, {"coefficients": [str(c) for c in p.coeffs]}, str(p))
    return EXIT_OK


def cmd_diag(args) -> int:
    m = linalg.load_matrix(args.file)
    cp = linalg.char_poly(m)
    sf = linalg.squarefree_part(cp)
    diag = linalg.is_diagonalizable(m)
    _emit(args,
          {"diagonalizable": diag, "char_poly": [str(c) for c in cp.coeffs],
           "squarefree_part": [str(c) for c in sf.coeffs]},
          f"char_poly:       {cp}\nsquarefree part: {sf}\n"
          f"diagonalizable over C: {'yes' if diag else 'no'}")
    return EXIT_OK


def cmd_minors(args) -> int:
    m = linalg.load_matrix(args.file)
    if args.principal:
        rows = [(s, s, d) for s, d in linalg.principal_minors(m, args.size)]
    else:
        rows = linalg.minors(m, args.size)
    payload = {"size": args.size, "principal": args.principal,
               "minors": [{"rows": list(r), "cols": list(c), "value": str(d)} for r, c, d in rows],
               "nonzero": sum(d != 0 for _, _, d in rows)}
    lines = [f"{'rows':<24}{'cols':<24}value"]
    lines += [f"{r!r:<24}{c!r:<24}{d}" for r, c, d in rows]
    lines.append(f"{payload['nonzero']} of {len(rows)} minors nonzero")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_minrank_bounds(args) -> int:
    p = load_pattern(args.file)
    lower, cert = structural.monomial_minor_bound(p)
    upper = empirical_min_rank(p, SampleConfig(args.seed, args.magnitude, args.trials))
    where = f"rows={cert.rows!r} cols={cert.cols!r}" if cert else "none"
    _emit(args,
          {"lower": lower, "upper": upper, "certificate": cert.to_dict() if cert else None},
          f"lower={lower} (monomial certificate {where}), upper={upper} (realization)")
    return EXIT_OK


def cmd_sample(args) -> int:
    p = load_pattern(args.file)
    cfg = SampleConfig(args.seed, args.magnitude, 1)
    sampler = sample_min_rank_realization if args.min_rank else sample_realization
    m = sampler(p, cfg, args.trial).matrix
    _emit(args, {"matrix": [[str(x) for x in r] for r in m.rows]}, linalg.format_matrix(m).rstrip("\n"))
    return EXIT_OK


def cmd_certify(args) -> int:
    p = load_pattern(args.file)
    if args.block is None:
        if args.ambient is not None:
            raise UsageError("--ambient needs --block")
        k, cert = structural.monomial_minor_bound(p)
        text = (f"rank >= {k} for every realization" +
                (f"\nrows={cert.rows!r} cols={cert.cols!r} matching={list(cert.matching)} "
                 f"sign={cert.sign:+d}" if cert else ""))
        _emit(args, {"bound": k, "certificate": cert.to_dict() if cert else None}, text)
        return EXIT_OK
    ambient = args.ambient if args.ambient is not None else 3
    cert = structural.block_pivot_certificate(p, args.block, ambient)
    if cert is None:
        _emit(args, {"certificate": None}, f"no block-pivot certificate for {args.block} at size {ambient}")
        return EXIT_FAIL
    mono = "*".join(f"x{i}_{j}" for i, j in cert.monomial)
    _emit(args, {"certificate": cert.to_dict()},
          f"block {args.block}: minor rows={cert.rows!r} cols={cert.cols!r} = "
          f"{cert.sign:+d} * det(block) * {mono}\n"
          f"nonsingular block => rank >= {ambient}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="signrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check every claim about the built-in 9x9 pattern")
    _sampling_args(p)
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    for name, func, help_ in (("rank", cmd_rank, "exact rank"),
                              ("det", cmd_det, "exact determinant"),
                              ("charpoly", cmd_charpoly, "characteristic polynomial det(xI - A)"),
                              ("diag", cmd_diag, "diagonalizability over C")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("minors", help="enumerate k x k minors")
    p.add_argument("file")
    p.add_argument("--size", type=_positive, required=True)
    p.add_argument("--principal", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_minors)

    p = sub.add_parser("minrank-bounds", help="lower/upper bounds on the minimum rank of a pattern")
    p.add_argument("file")
    _sampling_args(p, trials=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_minrank_bounds)

    p = sub.add_parser("sample", help="print a random realization of a pattern")
    p.add_argument("file")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--trial", type=_nonnegative, default=0)
    p.add_argument("--magnitude", type=_positive, default=10)
    p.add_argument("--min-rank", action="store_true",
                   help="singular-block rank-6 sample (built-in 9x9 pattern only)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("certify", help="emit a rank certificate for a pattern")
    p.add_argument("file")
    p.add_argument("--block", type=_parse_block, help="R1,R2xC1,C2")
    p.add_argument("--ambient", type=_positive)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (OSError, ValueError, UsageError) as exc:
        print(f"signrank {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
