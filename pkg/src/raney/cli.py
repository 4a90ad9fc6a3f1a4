"""Command-line front end: ``raney {moments,density,sample,verify,scan,rmt}``.

Tables go to stdout (or ``--out``) as CSV with a header row; reports are JSON.
Each run also writes a manifest (command, parameters, seed, version,
timestamp, sha256 of the output): next to ``--out`` as ``<out>.manifest.json``,
or to stderr when writing to stdout.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error
(r > p where a probability measure is required), 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import __version__
from .core import RaneyParams, as_fraction, raney_sequence
from .density import build_density, eval_density
from .mellin import FactorizationUnavailable
from .rmt import JacobiError, ks_against_mu, spectrum_sample
from .sampler import SamplerState, sample_mu
from .special import AccuracyError
from .verify import positivity_scan, rational_lattice, verify_moments

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3, 4


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: Optional[int]
    version: str
    timestamp: str
    output_sha256: str
    extra: dict


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def p_value(text: str) -> Fraction:
    p = rational(text)
    if p < 1:
        raise argparse.ArgumentTypeError(f"p must be at least 1, got {text!r}")
    return p


def r_value(text: str) -> Fraction:
    r = rational(text)
    if r < 0:
        raise argparse.ArgumentTypeError(f"r must be nonnegative, got {text!r}")
    return r


def interval(text: str):
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"expected lo:hi or lo:hi:step, got {text!r}")
    values = [rational(part) for part in parts]
    if values[0] > values[1]:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    if len(values) == 3 and values[2] <= 0:
        raise argparse.ArgumentTypeError(f"step must be positive in {text!r}")
    return tuple(values)


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text!r}")
    return value


def nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text!r}")
    return value


def _params(args, need_density: bool = False, need_measure: bool = False) -> RaneyParams:
    params = RaneyParams(args.p.numerator, args.p.denominator, args.r)
    if need_density and (params.p <= 1 or params.r <= 0):
        raise CommandError("--p must exceed 1 and --r must be positive", EXIT_USAGE)
    if need_measure and not params.proper_measure:
        raise CommandError("no probability measure for r>p", EXIT_DOMAIN)
    return params


def _csv(header: List[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_moments(args):
    params = _params(args)
    values = raney_sequence(params, args.max)
    if args.exact:
        rows = [(m, str(v)) for m, v in enumerate(values)]
    else:
        rows = [(m, fmt(v)) for m, v in enumerate(values)]
    return _csv(["m", "value"], rows), {}


def cmd_density(args):
    params = _params(args, need_density=True)
    d = build_density(params)
    lo, hi = (0.0, d.support_hi) if args.range is None else map(float, args.range[:2])
    x = np.linspace(lo, hi, args.points)
    flags = ["ok"] * len(x)
    try:
        y = eval_density(d, x, force_general=args.force_general)
    except AccuracyError:
        y = np.empty_like(x)
        for i, xi in enumerate(x):
            try:
                y[i] = eval_density(d, xi, force_general=args.force_general)
            except AccuracyError as err:
                y[i] = float(np.sum(err.partial)) if err.partial is not None else np.nan
                flags[i] = "accuracy_failure"
    rows = [(fmt(a), fmt(b), f) for a, b, f in zip(x, y, flags)]
    extra = {
        "closed_form_tag": d.closed_form_tag,
        "force_general": args.force_general,
        "signed": not params.proper_measure,
        "negative_values": bool(np.any(y < 0)),
        "support": [0.0, d.support_hi],
    }
    return _csv(["x", "density", "flag"], rows), extra


def cmd_sample(args):
    params = _params(args, need_density=True, need_measure=True)
    state = SamplerState.for_params(params, args.seed)
    x = sample_mu(state, args.n)
    return _csv(["x"], ((fmt(v),) for v in x)), state.metadata()


def cmd_verify(args):
    params = _params(args, need_density=True, need_measure=True)
    report = verify_moments(params, args.max_moment, force_general=args.force_general)
    out = report.to_dict()
    out["tol"] = args.tol
    if report.failures:
        code = EXIT_NUMERIC
    else:
        code = EXIT_OK if report.passes(args.tol) else EXIT_VERIFY
    out["passed"] = code == EXIT_OK
    return json.dumps(out, indent=2) + "\n", {}, code


def _r_lattice(lo, hi, step) -> List[Fraction]:
    values = []
    r = lo
    while r <= hi:
        if r > 0:
            values.append(r)
        r += step
    return values


def cmd_scan(args):
    p_lo, p_hi = args.p_range[:2]
    ps = [p for p in rational_lattice(p_lo, p_hi, args.p_den_max) if p >= 1]
    step = args.r_range[2] if len(args.r_range) == 3 else args.r_step
    rs = _r_lattice(args.r_range[0], args.r_range[1], step)
    if not ps or not rs:
        raise CommandError("scan ranges contain no cells", EXIT_USAGE)
    pmap = positivity_scan(ps, rs, n_points=args.points)
    rows = []
    for c in pmap.cells:
        flag = "degenerate" if c.degenerate else ("failed" if c.failed else "ok")
        rows.append((c.p.numerator, c.p.denominator, str(c.r), fmt(c.min_density),
                     str(c.is_nonnegative).lower(), flag))
    extra = {"cells": len(rows), "mismatches": len(pmap.mismatches())}
    return _csv(["p_num", "p_den", "r", "min_density", "is_nonnegative", "flag"], rows), extra


def cmd_rmt(args):
    try:
        sample = spectrum_sample(args.size, args.power, args.trials, seed=args.seed)
    except JacobiError as err:
        raise CommandError(str(err), EXIT_NUMERIC)
    ks = ks_against_mu(sample)
    counts, edges = np.histogram(sample.eigenvalues, bins=args.bins)
    out = {
        "ks": ks,
        "limit": {"p": args.power + 1, "r": 1},
        "size": args.size,
        "power": args.power,
        "trials": args.trials,
        "seed": args.seed,
        "ensemble": sample.ensemble,
        "eigenvalue_count": int(sample.eigenvalues.size),
        "histogram": {"edges": edges.tolist(), "counts": counts.tolist()},
    }
    if args.dump_eigenvalues:
        out["eigenvalues"] = sample.eigenvalues.tolist()
    return json.dumps(out, indent=2) + "\n", {"ensemble": sample.ensemble}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="raney", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, measure=True):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--p", type=p_value, required=True, help="p as K/L or decimal")
        sp.add_argument("--r", type=r_value, required=True, help="r as K/L or decimal")
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.set_defaults(func=func)
        return sp

    sp = add("moments", cmd_moments, "Raney numbers A_0..A_max")
    sp.add_argument("--max", type=nonnegative_int, required=True)
    sp.add_argument("--exact", action="store_true", help="print exact rationals num/den")

    sp = add("density", cmd_density, "W_{p,r} on a grid")
    sp.add_argument("--points", type=int, default=512)
    sp.add_argument("--range", type=interval, default=None, help="lo:hi (default 0:c(p))")
    sp.add_argument("--force-general", action="store_true",
                    help="skip closed forms, use the hypergeometric expansion")

    sp = add("sample", cmd_sample, "variates of mu(p, r)")
    sp.add_argument("-n", type=positive_int, required=True, help="number of variates")
    sp.add_argument("--seed", type=nonnegative_int, default=0)

    sp = add("verify", cmd_verify, "quadrature moments vs exact Raney numbers")
    sp.add_argument("--max-moment", type=nonnegative_int, default=12)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--force-general", action="store_true")

    sp = sub.add_parser("scan", help="sign of W_{p,r} over a (p, r) lattice")
    sp.add_argument("--p-range", type=interval, default=(Fraction(11, 10), Fraction(4)))
    sp.add_argument("--r-range", type=interval, default=(Fraction(1, 10), Fraction(4)),
                    help="lo:hi or lo:hi:step")
    sp.add_argument("--r-step", type=rational, default=Fraction(1, 10))
    sp.add_argument("--p-den-max", type=positive_int, default=5)
    sp.add_argument("--points", type=positive_int, default=2000)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("rmt", help="Ginibre power spectra vs mu(n+1, 1)")
    sp.add_argument("--size", type=int, default=200)
    sp.add_argument("--power", type=positive_int, default=1)
    sp.add_argument("--trials", type=positive_int, default=50)
    sp.add_argument("--seed", type=nonnegative_int, default=0)
    sp.add_argument("--bins", type=positive_int, default=50)
    sp.add_argument("--dump-eigenvalues", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_rmt)
    return parser


def _manifest(args, text: str, extra: dict) -> RunManifest:
    params = {k: (str(v) if isinstance(v, Fraction) else v)
              for k, v in vars(args).items() if k not in ("func", "command", "out")}
    params = json.loads(json.dumps(params, default=str))
    return RunManifest(
        command=args.command,
        parameters=params,
        seed=getattr(args, "seed", None),
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        output_sha256=hashlib.sha256(text.encode()).hexdigest(),
        extra=extra,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "rmt" and args.size < 2:
        parser.error("argument --size: must be at least 2")
    if args.command == "density" and args.points < 2:
        parser.error("argument --points: must be at least 2")
    try:
        result = args.func(args)
    except CommandError as err:
        print(f"raney {args.command}: {err}", file=sys.stderr)
        return err.code
    except FactorizationUnavailable as err:
        print(f"raney {args.command}: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except AccuracyError as err:
        print(f"raney {args.command}: numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERIC
    text, extra = result[0], result[1]
    code = result[2] if len(result) == 3 else EXIT_OK
    manifest = json.dumps(asdict(_manifest(args, text, extra)), indent=2)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        with open(args.out + ".manifest.json", "w") as fh:
            fh.write(manifest + "\n")
    else:
        sys.stdout.write(text)
        print(manifest, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
