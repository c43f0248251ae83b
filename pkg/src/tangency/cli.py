"""Batch command-line driver.

Subcommands:

* ``prove henon`` -- run the full tangency certification for the Henon
  family; exit 0 iff the verdict is VERIFIED.
* ``check-toy``   -- run the analytic model's certificate suite (covering
  chain, linear-link cones, switch blocks, transversality determinant).

A machine-readable JSON report goes to --report (or stdout when omitted);
a human summary always goes to stdout.  Exit codes: 0 verified,
1 inconclusive (failure locus printed), 2 bad configuration or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from tangency import report as report_mod
from tangency.cones import check_cone_link, rump_positive_definite
from tangency.covering import VerificationInconclusive, check_chain
from tangency.henon import HenonConfig, run_proof
from tangency.interval import Interval, IntervalError
from tangency.toy import (
    ToyParams,
    build_toy_chain,
    linear_link_indices,
    switch_cone_blocks,
    transversality_determinant,
)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tangency",
        description=(
            "Rigorous certification of quadratic homoclinic tangencies "
            "unfolding generically in planar map families."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    prove = sub.add_parser("prove", help="run a full tangency certification")
    prove.add_argument("family", choices=["henon"], help="map family to certify")
    prove.add_argument("--param-radius", type=float, default=None,
                       help="parameter interval radius (default 1e-5)")
    prove.add_argument("--grid", type=int, default=None,
                       help="wall subdivision count per axis (default 1)")
    prove.add_argument("--threads", type=int, default=None,
                       help="parallel workers for link verification")
    prove.add_argument("--a-tol", type=float, default=None,
                       help="bisection tolerance for the expansion bound A")
    prove.add_argument("--gamma-safety", type=float, default=None,
                       help="safety factor applied to the optimal Gamma")
    prove.add_argument("--config", type=str, default=None,
                       help="JSON file with configuration overrides")
    prove.add_argument("--report", type=str, default=None,
                       help="path for the JSON report (stdout when omitted)")

    toy = sub.add_parser("check-toy", help="run the analytic model suite")
    toy.add_argument("--lam", type=float, default=2.0)
    toy.add_argument("--mu", type=float, default=0.5)
    toy.add_argument("--delta", type=float, default=0.5)
    toy.add_argument("--eps", type=float, default=0.01)
    toy.add_argument("--grid", type=int, default=1)
    toy.add_argument("--report", type=str, default=None)
    return parser


def _usage_error(msg):
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _load_config_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        _usage_error(f"cannot read config file {path}: {exc}")


def _henon_config(args):
    overrides = {}
    if args.config:
        overrides.update(_load_config_file(args.config))
    flag_map = {
        "param_radius": args.param_radius,
        "grid": args.grid,
        "threads": args.threads,
        "a_tol": args.a_tol,
        "gamma_safety": args.gamma_safety,
    }
    for key, val in flag_map.items():
        if val is not None:
            overrides[key] = val
    corr = overrides.pop("correspondences", None)
    config = HenonConfig()
    for key, val in overrides.items():
        if not hasattr(config, key):
            _usage_error(f"unknown configuration key {key!r}")
        setattr(config, key, val)
    if corr is not None:
        config.correspondences = {int(k): v for k, v in corr.items()}
    try:
        config.validate()
    except ValueError as exc:
        _usage_error(str(exc))
    return config


def _emit(report, path):
    text = report_mod.dumps(report)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _config_echo(config):
    return {
        "param_radius": config.param_radius,
        "grid": config.grid,
        "threads": config.threads,
        "a_tol": config.a_tol,
        "gamma_safety": config.gamma_safety,
        "epsilon": config.epsilon,
    }


def _cmd_prove(args):
    config = _henon_config(args)
    t0 = time.perf_counter()
    try:
        cert = run_proof(config)
    except VerificationInconclusive as exc:
        elapsed = time.perf_counter() - t0
        report = report_mod.build_report(
            kind="proof",
            config=_config_echo(config),
            stages={},
            verdict="INCONCLUSIVE",
            timings={"total": elapsed},
            failure={"stage": exc.stage, "locus": exc.locus, "detail": exc.detail},
        )
        _emit(report, args.report)
        print(f"INCONCLUSIVE at {exc.stage}: {exc.locus}")
        if exc.detail:
            print(f"  {exc.detail}")
        return 1
    elapsed = time.perf_counter() - t0
    cert_dict = cert.to_dict()
    report = report_mod.build_report(
        kind="proof",
        config=_config_echo(config),
        stages={
            "covering": cert_dict["coverings"],
            "cones": cert_dict["cones"],
            "stable_disk": cert_dict["stable_disk"],
            "unstable_disk": cert_dict["unstable_disk"],
        },
        verdict="VERIFIED",
        timings={**cert.timings, "total": elapsed},
        extras={
            "conclusion": cert_dict["conclusion"],
            "hsets": cert_dict["hsets"],
            "forms": cert_dict["forms"],
        },
    )
    _emit(report, args.report)
    n_cov = len(cert.coverings)
    n_cone = len(cert.cones)
    print(f"covering chain: {n_cov} relations certified")
    print(f"cone conditions: {n_cone} links certified")
    print(
        "stable disk: A >= %.12g, M <= %.12g, L <= %.12g, delta in [%.12g, %.12g]"
        % (
            cert.stable_disk.constants.a_lower,
            cert.stable_disk.constants.m_upper,
            cert.stable_disk.constants.l_upper,
            *cert.stable_disk.constants.delta,
        )
    )
    print(
        "unstable disk: A >= %.12g, M <= %.12g, L <= %.12g, delta in [%.12g, %.12g]"
        % (
            cert.unstable_disk.constants.a_lower,
            cert.unstable_disk.constants.m_upper,
            cert.unstable_disk.constants.l_upper,
            *cert.unstable_disk.constants.delta,
        )
    )
    print(f"verdict: VERIFIED ({elapsed:.2f} s)")
    print(cert.conclusion["statement"])
    return 0


def _cmd_check_toy(args):
    try:
        params = ToyParams(lam=args.lam, mu=args.mu, delta=args.delta,
                           eps=args.eps).validate()
    except IntervalError as exc:
        _usage_error(str(exc))
    t0 = time.perf_counter()
    stages = {}
    failure = None
    verdict = "VERIFIED"
    try:
        chain = build_toy_chain(params)
        coverings = check_chain(list(chain.sets), list(chain.maps), grid=args.grid)
        stages["covering"] = [c.to_dict() for c in coverings]

        cone_certs = []
        for idx in linear_link_indices(chain):
            cone_certs.append(
                check_cone_link(
                    chain.sets[idx],
                    chain.sets[idx + 1],
                    chain.forms[idx],
                    chain.forms[idx + 1],
                    chain.maps[idx].derivative,
                )
            )
        stages["cones_linear_links"] = [c.to_dict() for c in cone_certs]

        q1, q2 = switch_cone_blocks()
        r1 = rump_positive_definite(q1)
        r2 = rump_positive_definite(q2)
        stages["switch_blocks"] = {
            "Q1": r1.to_dict(),
            "Q2": r2.to_dict(),
        }
        if not (r1.positive_definite and r2.positive_definite):
            raise VerificationInconclusive(
                "toy-switch", "tangency-point cone blocks", "not positive definite"
            )

        det = transversality_determinant(2.0, 3.0, 7.0)
        residual = det - Interval(2.0) * Interval(3.0)
        stages["transversality"] = {
            "det_sample": [det.lo, det.hi],
            "identity_residual": [residual.lo, residual.hi],
        }
        if not residual.contains(0.0):
            raise VerificationInconclusive(
                "toy-transversality", "determinant identity", "residual excludes 0"
            )
    except VerificationInconclusive as exc:
        verdict = "INCONCLUSIVE"
        failure = {"stage": exc.stage, "locus": exc.locus, "detail": exc.detail}
    elapsed = time.perf_counter() - t0
    report = report_mod.build_report(
        kind="toy-check",
        config={
            "lam": params.lam,
            "mu": params.mu,
            "delta": params.delta,
            "eps": params.eps,
            "grid": args.grid,
        },
        stages=stages,
        verdict=verdict,
        timings={"total": elapsed},
        failure=failure,
        extras={"flags": list(build_toy_chain(params).flags)},
    )
    _emit(report, args.report)
    if verdict == "VERIFIED":
        n = len(stages["covering"])
        print(f"toy chain: {n} coverings, "
              f"{len(stages['cones_linear_links'])} linear-link cones, "
              "switch blocks and determinant identity certified")
        print(f"verdict: VERIFIED ({elapsed:.2f} s)")
        return 0
    print(f"INCONCLUSIVE at {failure['stage']}: {failure['locus']}")
    return 1


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "prove":
        return _cmd_prove(args)
    if args.command == "check-toy":
        return _cmd_check_toy(args)
    parser.error(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
