"""Command line surface: covering runs, experiment sweeps, bound tables.

Single results go to standard output as JSON; sweeps go to CSV files with
frozen schemas plus a JSON manifest sidecar that records every parameter,
so any output can be reproduced from its manifest alone.  Exit codes:
0 success, 2 usage error, 3 decoder limit exceeded, 4 output I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from datetime import datetime, timezone

from . import __version__
from .bounds import decimal_str, tau_scan
from .code import BudgetExceeded, GrsCode, Word
from .cover import grs_cover, grs_cover_baseline
from .decode import MultiplicityOverflow
from .experiments import (
    PUNCTURE_DECODERS,
    RADIUS_ALGORITHMS,
    ExperimentConfig,
    run_punctures,
    run_radius,
)
from .field import PrimeField, _is_prime

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DECODER_LIMIT = 3
EXIT_IO = 4

PUNCTURES_HEADER = ["q", "n", "k", "decoder", "trials", "seed",
                    "avg_punctures", "std_punctures"]
RADIUS_HEADER = ["q", "n", "k", "algorithm", "trials", "seed",
                 "avg_distance", "std_distance", "max_distance"]
BOUND_HEADER = ["q", "n", "k", "d", "tau", "lower_exact", "lower_corollary",
                "upper"]
TAUMAX_HEADER = ["q", "n", "k", "d", "tau_gs", "tau_max", "best_lower_bound"]


class _UsageError(Exception):
    """Invalid flag combination; the message names the offending flag."""


def _fmt(x: float) -> str:
    return "%.12g" % x


def _parse_k_range(text: str) -> tuple[int, int]:
    parts = text.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise _UsageError(f"--k-range: expected 'a..b' or 'a', got {text!r}")
    if not 1 <= lo <= hi:
        raise _UsageError(f"--k-range: need 1 <= a <= b, got {text!r}")
    return lo, hi


def _parse_csv_ints(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise _UsageError(f"{flag}: expected comma-separated integers, got {text!r}")


def _build_field(q: int) -> PrimeField:
    if not _is_prime(q):
        raise _UsageError(f"--q: modulus must be prime, got {q}")
    return PrimeField(q)


def _check_dims(q: int, n: int, k: int) -> None:
    if n > q:
        raise _UsageError(f"--n: length {n} exceeds field size {q}")
    if not 1 <= k <= n:
        raise _UsageError(f"--k: need 1 <= k <= n, got k={k}, n={n}")


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".grscover-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(out: str, command: str, params: dict, master_seed: int | None,
          header: list[str], rows: list[list]) -> None:
    _write_atomic(out, _csv_text(header, rows))
    manifest = {
        "command": command,
        "parameters": params,
        "master_seed": master_seed,
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(),
        "outputs": [out],
    }
    _write_atomic(out + ".manifest.json", json.dumps(manifest, indent=2) + "\n")


def _cmd_cover(args: argparse.Namespace) -> int:
    field = _build_field(args.q)
    _check_dims(args.q, args.n, args.k)
    if args.alphas is not None:
        alpha_vals = _parse_csv_ints(args.alphas, "--alphas")
        if len(alpha_vals) != args.n:
            raise _UsageError(f"--alphas: expected {args.n} values, got {len(alpha_vals)}")
        alphas = [field.element(a) for a in alpha_vals]
    else:
        alphas = [field.element(i) for i in range(args.n)]
    if args.vs is not None:
        v_vals = _parse_csv_ints(args.vs, "--vs")
        if len(v_vals) != args.n:
            raise _UsageError(f"--vs: expected {args.n} values, got {len(v_vals)}")
        vs = [field.element(v) for v in v_vals]
    else:
        vs = [field.one()] * args.n
    try:
        code = GrsCode(field, alphas, vs, args.k)
    except ValueError as exc:
        raise _UsageError(f"--alphas/--vs: {exc}")

    y_vals = _parse_csv_ints(args.y, "--y")
    if len(y_vals) != args.n:
        raise _UsageError(f"--y: expected {args.n} comma-separated residues, got {len(y_vals)}")
    y = Word(field, y_vals)

    if args.decoder == "baseline":
        result = grs_cover_baseline(code, y)
    else:
        result = grs_cover(code, y, args.decoder)
    doc = {
        "message_coeffs": list(result.message.coeff_values()),
        "codeword": result.codeword.values.tolist(),
        "distance": result.distance,
        "punctures": result.punctures,
        "decoder": result.decoder_kind,
    }
    print(json.dumps(doc))
    return EXIT_OK


def _cmd_punctures(args: argparse.Namespace) -> int:
    _build_field(args.q)
    lo, hi = _parse_k_range(args.k_range)
    _check_dims(args.q, args.n, hi)
    config = ExperimentConfig(
        args.q, args.n, tuple(range(lo, hi + 1)),
        trials=args.trials, master_seed=args.seed,
        decoders=PUNCTURE_DECODERS, workers=args.workers,
    )
    records = run_punctures(config)
    rows = [
        [r.q, r.n, r.k, r.decoder, r.trials, r.seed,
         _fmt(r.avg_punctures), _fmt(r.std_punctures)]
        for r in records
    ]
    params = {"q": args.q, "n": args.n, "k_range": args.k_range,
              "trials": args.trials, "seed": args.seed,
              "workers": args.workers, "out": args.out}
    _emit(args.out, "punctures", params, args.seed, PUNCTURES_HEADER, rows)
    return EXIT_OK


def _cmd_radius(args: argparse.Namespace) -> int:
    _build_field(args.q)
    lo, hi = _parse_k_range(args.k_range)
    _check_dims(args.q, args.n, hi)
    algorithms = tuple(args.algorithms.split(","))
    unknown = set(algorithms) - set(RADIUS_ALGORITHMS)
    if unknown or len(set(algorithms)) != len(algorithms) or not algorithms:
        raise _UsageError(
            f"--algorithms: expected unique names from "
            f"{','.join(RADIUS_ALGORITHMS)}, got {args.algorithms!r}"
        )
    config = ExperimentConfig(
        args.q, args.n, tuple(range(lo, hi + 1)),
        trials=args.trials, master_seed=args.seed,
        decoders=algorithms, workers=args.workers,
    )
    records = run_radius(config)
    rows = [
        [r.q, r.n, r.k, r.decoder, r.trials, r.seed,
         _fmt(r.avg_distance), _fmt(r.std_distance), r.max_distance]
        for r in records
    ]
    params = {"q": args.q, "n": args.n, "k_range": args.k_range,
              "trials": args.trials, "seed": args.seed,
              "algorithms": args.algorithms, "workers": args.workers,
              "out": args.out}
    _emit(args.out, "radius", params, args.seed, RADIUS_HEADER, rows)
    return EXIT_OK


def _cmd_bound(args: argparse.Namespace) -> int:
    _build_field(args.q)
    _check_dims(args.q, args.n, args.k)
    if args.k >= args.n:
        raise _UsageError(f"--k: need k < n for a radius sweep, got k={args.k}, n={args.n}")
    scan = tau_scan(args.q, args.n, args.k)
    rows = [
        [args.q, args.n, args.k, scan.d, report.tau,
         decimal_str(report.lower_exact),
         decimal_str(report.lower_corollary),
         decimal_str(report.upper)]
        for report in scan.bounds
    ]
    params = {"q": args.q, "n": args.n, "k": args.k, "out": args.out}
    _emit(args.out, "bound", params, None, BOUND_HEADER, rows)
    return EXIT_OK


def _cmd_taumax(args: argparse.Namespace) -> int:
    _build_field(args.q)
    if args.k_range is not None:
        lo, hi = _parse_k_range(args.k_range)
    else:
        lo, hi = 1, args.n - 1
    if hi >= args.n:
        raise _UsageError(f"--k-range: need k < n, got upper end {hi} with n={args.n}")
    _check_dims(args.q, args.n, hi)
    k_range_text = args.k_range if args.k_range is not None else f"{lo}..{hi}"
    rows = []
    for k in range(lo, hi + 1):
        scan = tau_scan(args.q, args.n, k)
        if scan.tau_max is None:
            rows.append([args.q, args.n, k, scan.d, scan.tau_gs, "", ""])
        else:
            best = next(
                r.lower_exact for r in scan.bounds if r.tau == scan.tau_max
            )
            rows.append([args.q, args.n, k, scan.d, scan.tau_gs, scan.tau_max,
                         decimal_str(best)])
    params = {"q": args.q, "n": args.n, "k_range": k_range_text, "out": args.out}
    _emit(args.out, "taumax", params, None, TAUMAX_HEADER, rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grscover",
        description="Covering algorithms, bounds, and experiments for GRS codes.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    cover = sub.add_parser("cover", help="cover one word with a nearby codeword")
    cover.add_argument("--q", type=int, required=True, help="field size (prime)")
    cover.add_argument("--n", type=int, required=True, help="code length")
    cover.add_argument("--k", type=int, required=True, help="code dimension")
    cover.add_argument("--y", required=True, help="word to cover, comma-separated")
    cover.add_argument("--alphas", help="evaluation points (default 0..n-1)")
    cover.add_argument("--vs", help="column multipliers (default all 1)")
    cover.add_argument("--decoder", choices=("bw", "gs", "map", "baseline"),
                       default="bw", help="covering strategy")
    cover.add_argument("--seed", type=int, default=0,
                       help="accepted for interface uniformity; covering is deterministic")
    cover.set_defaults(func=_cmd_cover)

    punctures = sub.add_parser("punctures", help="average puncture counts to CSV")
    punctures.add_argument("--q", type=int, required=True)
    punctures.add_argument("--n", type=int, required=True)
    punctures.add_argument("--k-range", required=True, help="dimensions, e.g. 1..5")
    punctures.add_argument("--trials", type=int, default=500)
    punctures.add_argument("--seed", type=int, default=0)
    punctures.add_argument("--workers", type=int, default=1)
    punctures.add_argument("--out", required=True)
    punctures.set_defaults(func=_cmd_punctures)

    radius = sub.add_parser("radius", help="average covering distance to CSV")
    radius.add_argument("--q", type=int, required=True)
    radius.add_argument("--n", type=int, required=True)
    radius.add_argument("--k-range", required=True)
    radius.add_argument("--trials", type=int, default=500)
    radius.add_argument("--seed", type=int, default=0)
    radius.add_argument("--algorithms", default=",".join(RADIUS_ALGORITHMS),
                        help="comma-separated subset of map,gs,bw,baseline")
    radius.add_argument("--workers", type=int, default=1)
    radius.add_argument("--out", required=True)
    radius.set_defaults(func=_cmd_radius)

    bound = sub.add_parser("bound", help="coverage bounds per radius to CSV")
    bound.add_argument("--q", type=int, required=True)
    bound.add_argument("--n", type=int, required=True)
    bound.add_argument("--k", type=int, required=True)
    bound.add_argument("--out", required=True)
    bound.set_defaults(func=_cmd_bound)

    taumax = sub.add_parser("taumax", help="best-bound radius vs list radius to CSV")
    taumax.add_argument("--q", type=int, required=True)
    taumax.add_argument("--n", type=int, required=True)
    taumax.add_argument("--k-range", help="dimensions (default 1..n-1)")
    taumax.add_argument("--out", required=True)
    taumax.set_defaults(func=_cmd_taumax)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed its message; fold into the taxonomy.
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MultiplicityOverflow, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DECODER_LIMIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
