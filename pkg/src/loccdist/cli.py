"""Command-line front end.

Subcommands:
  bounds    per-state bound report as flat JSON on stdout
  sweep     CSV of the bounds along a spectrum family
  optimize  two-way bound minimisation details, optionally grid-checked
  verify    self-checks of the constructions for one spectrum

Exit codes: 0 success, 1 verification failure, 2 unparseable input,
3 bound-ordering violation.  Diagnostics go to stderr; results to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bounds import pure_state_report
from .families import get_family, sweep
from .one_way import build_one_way_test
from .operators import eig_hermitian
from .optimize import OptimizerConfig, beta_two_way_upper, grid_oracle
from .separable import (
    beta_sep_pure,
    build_optimal_separable_povm,
    verify_appendix_identity,
)
from .states import (
    MaximallyCorrelatedState,
    SchmidtSpectrum,
    parse_spectrum,
    state_from_spectrum,
)
from .two_way import (
    DeltaMatrix,
    build_two_way_T,
    simulate_protocol,
    trace_T_closed_form,
    wilson_interval,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3


def _fail_parse(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_PARSE


def _parse_dims(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"dims must be 'dA,dB', got {text!r}")
    dA, dB = (int(p) for p in parts)
    if dA < 1 or dB < 1:
        raise ValueError("dims must be positive")
    return dA, dB


def cmd_bounds(args) -> int:
    try:
        s = parse_spectrum(args.schmidt)
        dims = _parse_dims(args.dims) if args.dims else None
        if dims is not None and dims[0] * dims[1] < s.rank**2:
            raise ValueError(
                f"dims {dims} too small for a Schmidt-rank-{s.rank} state"
            )
    except ValueError as exc:
        return _fail_parse(str(exc))
    report = pure_state_report(s, dims=dims, config=OptimizerConfig(seed=args.seed))
    print(json.dumps(report.to_dict()))
    if not report.ordering_ok():
        print("error: bound ordering violated", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        t_range = None
        if args.range:
            lo, hi = (float(x) for x in args.range.split(","))
            t_range = (lo, hi)
        family = get_family(args.family, t_range)
        family.validate()
        if args.points < 2:
            raise ValueError("--points must be at least 2")
    except ValueError as exc:
        return _fail_parse(str(exc))
    rows = sweep(family, args.points, config=OptimizerConfig(seed=args.seed))
    lines = ["t,beta_g,beta_one_way,beta_sep,beta_two_way_upper"]
    for t, report in rows:
        lines.append(
            ",".join(
                format(x, ".9g")
                for x in (
                    t,
                    report.beta_g,
                    report.beta_one_way,
                    report.beta_sep,
                    report.beta_two_way_upper,
                )
            )
        )
    text = "\n".join(lines) + "\n"
    with open(args.out, "w") as fh:
        fh.write(text)
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    for _, report in rows:
        if not report.ordering_ok():
            print("error: bound ordering violated in sweep", file=sys.stderr)
            return EXIT_INVARIANT
    return EXIT_OK


def cmd_optimize(args) -> int:
    try:
        s = parse_spectrum(args.schmidt)
    except ValueError as exc:
        return _fail_parse(str(exc))
    config = OptimizerConfig(starts=args.starts, tol=args.tol, seed=args.seed)
    result = beta_two_way_upper(s, config)
    payload = {
        "beta_two_way_upper": result.beta_value,
        "t_value": result.t_value,
        "D": result.D,
        "delta": ",".join(
            format(result.best_delta.table[k, i], ".9g")
            for k in range(result.best_delta.d)
            for i in range(k, result.best_delta.d)
        ),
        "method": result.method,
        "iterations": result.iterations,
        "converged": result.converged,
    }
    if args.grid_step:
        oracle = grid_oracle(s, args.grid_step)
        payload["grid_beta"] = oracle.beta_value
        payload["grid_gap"] = result.beta_value - oracle.beta_value
    print(json.dumps(payload))
    return EXIT_OK


def _verify_checks(s, mc_samples: int, seed: int):
    """Yield (name, deviation, tolerance) triples for one spectrum."""
    d = s.rank
    D = s.dim**2
    dev = verify_appendix_identity(s)
    yield "appendix-identity", dev, 1e-9

    pair = build_optimal_separable_povm(s)
    w, _ = eig_hermitian(pair.T)
    yield "povm-element-range", max(-w[-1], w[0] - 1.0, 0.0), 1e-9
    psi = state_from_spectrum(s).psi
    yield "perfect-detection-sep", abs(
        float(np.real(psi.conj() @ pair.T @ psi)) - 1.0
    ), 1e-10
    yield "trace-formula-sep", abs(
        float(np.trace(pair.T).real) - beta_sep_pure(s) * D
    ), 1e-10
    assembly = max(
        float(np.max(np.abs(pair.T_form.assemble() - pair.T))),
        float(
            np.max(np.abs(pair.complement_form.assemble() - (np.eye(s.dim**2) - pair.T)))
        ),
    )
    yield "separable-form-assembly", assembly, 1e-9
    yield "separable-form-psd", max(
        0.0,
        -min(pair.T_form.min_term_eigenvalue(), pair.complement_form.min_term_eigenvalue()),
    ), 1e-10

    mc = MaximallyCorrelatedState.from_spectrum(s)
    _, T_ow = build_one_way_test(mc)
    rho = mc.density()
    yield "perfect-detection-one-way", abs(float(np.trace(rho @ T_ow).real) - 1.0), 1e-10

    rng = np.random.default_rng(seed)
    deltas = [DeltaMatrix.uniform(d)] + [DeltaMatrix.random(d, rng) for _ in range(3)]
    worst_oracle = 0.0
    worst_detect = 0.0
    psi_eff = state_from_spectrum(SchmidtSpectrum(s.effective)).psi
    for delta in deltas:
        T, _ = build_two_way_T(s, delta)
        worst_oracle = max(
            worst_oracle, abs(float(np.trace(T).real) - trace_T_closed_form(s, delta))
        )
        worst_detect = max(
            worst_detect, abs(float(np.real(psi_eff.conj() @ T @ psi_eff)) - 1.0)
        )
    yield "two-way-trace-oracle", worst_oracle, 1e-9
    yield "two-way-perfect-detection", worst_detect, 1e-9

    result = beta_two_way_upper(s, OptimizerConfig(seed=seed))
    _, protocol = build_two_way_T(s, result.best_delta)
    rate_psi, _ = simulate_protocol(protocol, "psi", mc_samples, seed)
    yield "monte-carlo-type-1", abs(rate_psi - 1.0), 0.0
    rate_mix, _ = simulate_protocol(protocol, "mixed", mc_samples, seed + 1)
    beta = result.t_value / d**2
    lo, hi = wilson_interval(round(rate_mix * mc_samples), mc_samples, z=3.0)
    yield "monte-carlo-type-2", abs(rate_mix - beta), max(hi - lo, 1e-12)


def cmd_verify(args) -> int:
    try:
        s = parse_spectrum(args.schmidt)
    except ValueError as exc:
        return _fail_parse(str(exc))
    failures = 0
    for name, dev, tol in _verify_checks(s, args.mc_samples, args.seed):
        ok = dev <= tol
        failures += 0 if ok else 1
        print(f"{name:<28s} deviation={dev:.3e}  {'PASS' if ok else 'FAIL'}")
    if failures:
        print(f"{failures} check(s) failed", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loccdist",
        description="Local-discrimination error bounds against white noise.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="report the four bounds for one spectrum")
    p.add_argument("--schmidt", required=True, help="comma-separated Schmidt coefficients")
    p.add_argument("--dims", help="override embedding as 'dA,dB'")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", help="CSV sweep over a spectrum family")
    p.add_argument("--family", required=True, help="fig1..fig6 or 'a+bt,...' expression")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--range", help="t range 'lo,hi' (custom families)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="minimise the two-way bound for one spectrum")
    p.add_argument("--schmidt", required=True)
    p.add_argument("--starts", type=int, default=16)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--grid-step", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="run construction self-checks for one spectrum")
    p.add_argument("--schmidt", required=True)
    p.add_argument("--mc-samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
