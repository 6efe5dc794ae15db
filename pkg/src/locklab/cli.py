"""Command-line front end: run experiments, emit deterministic CSV or JSON.

Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 a numerical
invariant that must hold was violated.  Identical arguments and seed give
byte-identical output; the default seed is 42, overridable with --seed or
the LOCKLAB_SEED environment variable.  CSV is UTF-8 with LF line endings,
one header row, floats with six decimals; the JSON shapes are documented in
docs/output-schema.md.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

import numpy as np

from .accinfo import (
    OptimizerConfig,
    epsilon_of_n,
    key_length_bits,
    locking_gap,
    locking_bound_chain_check,
    locking_upper_bound,
    optimize_accessible_info,
)
from .attack import FIXED_BASIS_PRESET, run_blind_attack, run_header_attack
from .pauli import InvariantViolation
from .security import bell_key_experiment, maximally_entangled_vector, security_report
from .states import locking_state, random_density

DEFAULT_SEED = 42


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        return round(value, 6)
    return value


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _emit_table(header, rows, fmt: str, out: Optional[str]) -> None:
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        _write("\n".join(lines) + "\n", out)
    else:
        payload = [
            {key: _json_value(v) for key, v in zip(header, row)} for row in rows
        ]
        _write(json.dumps(payload, indent=2) + "\n", out)


def _parse_m_values(parser, args) -> list:
    if args.m is not None and args.m_range is not None:
        parser.error("give either --m or --m-range, not both")
    if args.m is not None:
        if args.m < 1:
            parser.error("--m must be >= 1")
        return [args.m]
    if args.m_range is not None:
        try:
            lo, hi = (int(part) for part in args.m_range.split(":"))
        except ValueError:
            parser.error("--m-range must look like A:B")
        if lo < 1 or hi < lo:
            parser.error(f"--m-range {args.m_range} is empty or invalid")
        return list(range(lo, hi + 1))
    parser.error("one of --m or --m-range is required")


def _resolve_seed(parser, args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("LOCKLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            parser.error(f"LOCKLAB_SEED={env!r} is not an integer")
    return DEFAULT_SEED


def cmd_bounds(ms, fmt: str, out: Optional[str]) -> None:
    header = ["m", "n", "locking_bound", "epsilon_of_n", "delta_lower", "key_entropy_bits"]
    rows = []
    for m in ms:
        n = key_length_bits(m)
        bound = locking_upper_bound(m)
        eps = epsilon_of_n(n)
        gap = locking_gap(m)
        if bound > eps:
            raise InvariantViolation(
                f"locking bound {bound} exceeds epsilon(n={n}) = {eps} at m={m}"
            )
        if gap.delta_lower <= m * math.log2(3.0):
            raise InvariantViolation(f"locking gap fails to exceed the y size at m={m}")
        rows.append([m, n, bound, eps, gap.delta_lower, gap.i_with_y])
    _emit_table(header, rows, fmt, out)


def cmd_attack(ms, trials: int, seed: int, blind: bool, fmt: str, out: Optional[str]) -> None:
    header = ["m", "trials", "successes", "success_rate", "mode"]
    rows = []
    for m in ms:
        if blind:
            stats = run_blind_attack(m, trials, FIXED_BASIS_PRESET, seed)
        else:
            stats = run_header_attack(m, trials, seed)
            if stats.success_rate != 1.0:
                raise InvariantViolation(
                    f"header attack succeeded in only {stats.successes}/{stats.trials} trials at m={m}"
                )
        rows.append(
            [m, stats.trials, stats.successes, stats.success_rate, "blind" if blind else "header"]
        )
    _emit_table(header, rows, fmt, out)


def cmd_iacc(ms, restarts: int, seed: int, fmt: str, out: Optional[str]) -> None:
    header = ["m", "best_value", "locking_bound", "restarts", "seed"]
    rows = []
    for m in ms:
        if m > 2:
            raise ValueError("the search covers m in 1..2")
        bound = locking_upper_bound(m)
        cfg = OptimizerConfig(restarts=restarts, seed=seed)
        est = optimize_accessible_info(locking_state(m), cfg, upper_bound=bound)
        rows.append([m, est.best_value, bound, est.restarts_used, seed])
    _emit_table(header, rows, fmt, out)


def cmd_security(m: int, restarts: int, seed: int, bound_only: bool, fmt: str, out: Optional[str]) -> None:
    cfg = OptimizerConfig(restarts=restarts, seed=seed)
    report = security_report(m, cfg, bound_only=bound_only)
    fields = [
        ("m", report.m),
        ("key_entropy_bits", report.key_entropy_bits),
        ("iacc_upper", report.iacc_upper),
        ("iacc_best_found", report.iacc_best_found),
        ("epsilon_distance", report.epsilon_distance),
        ("verdict_text", report.verdict_text),
    ]
    if fmt == "json":
        payload = {key: _json_value(v) for key, v in fields}
        _write(json.dumps(payload, indent=2) + "\n", out)
    else:
        header = [key for key, _ in fields]
        row = ["" if v is None else _fmt(v) for _, v in fields]
        quoted = [f'"{v}"' if "," in v else v for v in row]
        _write(",".join(header) + "\n" + ",".join(quoted) + "\n", out)


def cmd_bell(n: int, perturbation: float, trials: int, seed: int, fmt: str, out: Optional[str]) -> None:
    rng = np.random.default_rng(seed)
    target = maximally_entangled_vector(n)
    proj = np.outer(target, target.conj())
    header = ["trial", "fidelity", "epsilon_bound", "measured_distance", "pass"]
    rows = []
    for t in range(trials):
        rho = (1.0 - perturbation) * proj + perturbation * random_density(proj.shape[0], rng)
        res = bell_key_experiment(n, rho)
        ok = res.measured_key_distance <= res.epsilon_bound + 1e-9
        rows.append([t, res.fidelity, res.epsilon_bound, res.measured_key_distance, ok])
    _emit_table(header, rows, fmt, out)


def cmd_proofchain(m: int, samples: int, seed: int, fmt: str, out: Optional[str]) -> None:
    rng = np.random.default_rng(seed)
    d = 2 ** m
    header = [
        "m",
        "sample",
        "entropy_split_dev",
        "binary_entropy_slack",
        "cauchy_schwarz_slack",
        "bloch_norm_slack",
    ]
    rows = []
    for i in range(samples):
        psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        psi /= np.linalg.norm(psi)
        rep = locking_bound_chain_check(m, np.outer(psi, psi.conj()))
        if not rep.ok:
            raise InvariantViolation(f"chain inequality violated on sample {i} at m={m}")
        rows.append(
            [
                m,
                i,
                rep.entropy_split_dev,
                rep.binary_entropy_slack,
                rep.cauchy_schwarz_slack,
                rep.bloch_norm_slack,
            ]
        )
    _emit_table(header, rows, fmt, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locklab",
        description="Information-locking experiments: bounds, attacks, and security reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, m_flags=True):
        if m_flags:
            p.add_argument("--m", type=int, default=None, help="single ensemble size")
            p.add_argument("--m-range", default=None, help="inclusive range A:B of sizes")
        p.add_argument("--seed", type=int, default=None, help="root seed (default 42 or LOCKLAB_SEED)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("bounds", help="analytic bound table over a range of m")
    common(p)

    p = sub.add_parser("attack", help="header (default) or blind one-time-pad attack")
    common(p)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--blind", action="store_true", help="adversary without header knowledge")

    p = sub.add_parser("iacc", help="restart search for accessible information")
    common(p)
    p.add_argument("--restarts", type=int, default=200)

    p = sub.add_parser("security", help="both security criteria for one m")
    common(p)
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--bound-only", action="store_true", help="skip the search leg")

    p = sub.add_parser("bell", help="measured-key distance on perturbed entangled pairs")
    common(p, m_flags=False)
    p.add_argument("--n", type=int, default=1, choices=(1, 2))
    p.add_argument("--perturbation", type=float, default=0.1)
    p.add_argument("--trials", type=int, default=10)

    p = sub.add_parser("proofchain", help="per-state slack of the locking-bound steps")
    common(p)
    p.add_argument("--samples", type=int, default=100)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        seed = _resolve_seed(parser, args)
        if args.command == "bounds":
            cmd_bounds(_parse_m_values(parser, args), args.format, args.out)
        elif args.command == "attack":
            if args.trials < 1:
                parser.error("--trials must be >= 1")
            cmd_attack(_parse_m_values(parser, args), args.trials, seed, args.blind, args.format, args.out)
        elif args.command == "iacc":
            cmd_iacc(_parse_m_values(parser, args), args.restarts, seed, args.format, args.out)
        elif args.command == "security":
            ms = _parse_m_values(parser, args)
            if len(ms) != 1:
                parser.error("security takes a single --m")
            cmd_security(ms[0], args.restarts, seed, args.bound_only, args.format, args.out)
        elif args.command == "bell":
            if args.trials < 1:
                parser.error("--trials must be >= 1")
            if not 0.0 <= args.perturbation <= 1.0:
                parser.error("--perturbation must be in [0, 1]")
            cmd_bell(args.n, args.perturbation, args.trials, seed, args.format, args.out)
        elif args.command == "proofchain":
            ms = _parse_m_values(parser, args)
            if len(ms) != 1 or args.samples < 1:
                parser.error("proofchain takes a single --m and --samples >= 1")
            cmd_proofchain(ms[0], args.samples, seed, args.format, args.out)
    except SystemExit as exc:  # parser.error inside command dispatch
        return int(exc.code or 0)
    except InvariantViolation as exc:
        print(f"locklab: invariant violated: {exc}", file=sys.stderr)
        return 3
    except (ValueError, NotImplementedError) as exc:
        print(f"locklab: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"locklab: i/o failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
