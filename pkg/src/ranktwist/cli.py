"""Command line entry point.

    ranktwist selmer 0 5 -5 [--chain 11 13 ...]
    ranktwist twist-search config.json [-o cert.json]
    ranktwist constellation 0 1 2 --m 6 --N 200
    ranktwist tables
    ranktwist verify cert.json

Exit codes: 0 success, 2 nothing found, 3 verification failure, 4 config error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import ConfigError, NotFound

EXIT_OK, EXIT_NOT_FOUND, EXIT_VERIFY, EXIT_CONFIG = 0, 2, 3, 4


def _curve(args):
    from .curve2tor import Curve

    try:
        return Curve(*args.roots)
    except ValueError as e:
        raise ConfigError(str(e)) from None


def cmd_selmer(args) -> int:
    from .seltrans import TransitionChain, run_chain, selmer2, selmer_reduce

    E = _curve(args)
    G = selmer2(E)
    out = {
        "curve": list(args.roots),
        "places": list(E.places),
        "dim": G.dim,
        "basis": [[a.value, b.value] for a, b in G.pairs()],
    }
    if args.chain:
        chain = TransitionChain(E, tuple(args.chain), tuple(args.chain))
        out["chain"] = [
            {"prime": s.prime, "dim_before": s.dim_before, "dim_after": s.dim_after, "case": s.case}
            for s in run_chain(chain)
        ]
    if args.reduce:
        red = selmer_reduce(E, bound=args.bound)
        out["reduction"] = {"dims": red.dims, "moves": red.moves}
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_twist_search(args) -> int:
    from .pipeline import ExperimentConfig, dumps, run_experiment

    config = ExperimentConfig.load(args.config)
    cert = run_experiment(config)
    text = dumps(cert)
    out = args.output or config.output
    if out:
        Path(out).write_text(text)
    print(text, end="")
    return EXIT_OK


def cmd_constellation(args) -> int:
    from .constellation import admissibility_check, build_system, count_and_compare

    s = build_system(*args.roots, kappa=args.kappa, m=args.m, lam=args.lam)
    bad = admissibility_check(s)
    if bad is not None:
        print(json.dumps({"admissible": False, "prime": bad}))
        return EXIT_OK
    rep = count_and_compare(s, None, args.N, cutoff=args.cutoff)
    print(json.dumps({
        "admissible": True,
        "forms": s.describe(),
        "betas": [[p, f"{b.numerator}/{b.denominator}"] for p, b in rep.small_betas],
        "singular_series": rep.singular_series,
        "series_relative_change": rep.series_relative_change,
        "volume": rep.volume,
        "N": rep.N,
        "weighted_count": rep.weighted_count,
        "witness_count": rep.witness_count,
        "prediction": rep.prediction,
        "ratio": rep.ratio,
        "first_witnesses": rep.witnesses[: args.show],
    }, indent=2))
    return EXIT_OK


def cmd_tables(args) -> int:
    from .seltrans import cascade_predict, required_pattern
    from .seltrans.suitable import table_products_full

    prods = table_products_full()
    pat = required_pattern()
    matches = sum(prods[i - 1][j - 1] == s for (i, j), s in pat.items())
    casc = cascade_predict(prods)
    print(json.dumps({
        "constrained_products": len(pat),
        "matching": matches,
        "cascade": casc.dims,
        "final_dim": casc.final_dim,
    }, indent=2))
    return EXIT_OK if matches == len(pat) else EXIT_VERIFY


def cmd_verify(args) -> int:
    from .pipeline import load_certificate, verify_certificate

    try:
        cert = load_certificate(args.certificate)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read certificate: {e}") from None
    verdict = verify_certificate(cert, probe=args.probe)
    print("pass" if verdict.ok else f"fail({verdict.reason})")
    return EXIT_OK if verdict.ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ranktwist", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("selmer", help="2-Selmer group and transition chains")
    s.add_argument("roots", type=int, nargs=3)
    s.add_argument("--chain", type=int, nargs="*", default=[])
    s.add_argument("--reduce", action="store_true")
    s.add_argument("--bound", type=int, default=10**4)
    s.set_defaults(func=cmd_selmer)

    s = sub.add_parser("twist-search", help="search and certify a twist")
    s.add_argument("config")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_twist_search)

    s = sub.add_parser("constellation", help="densities and prime counts for the forms")
    s.add_argument("roots", type=int, nargs=3)
    s.add_argument("--kappa", type=int, default=1)
    s.add_argument("--m", type=int, default=6)
    s.add_argument("--lam", type=int, default=1)
    s.add_argument("--N", type=int, default=200)
    s.add_argument("--cutoff", type=int, default=10**4)
    s.add_argument("--show", type=int, default=5)
    s.set_defaults(func=cmd_constellation)

    s = sub.add_parser("tables", help="replay the real-place sign tables")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("verify", help="re-check a certificate")
    s.add_argument("certificate")
    s.add_argument("--probe", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except NotFound as e:
        print(f"not found: {e}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
