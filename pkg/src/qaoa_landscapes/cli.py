"""Command-line front end: ``qaoa-landscape <command> [options]``.

Exit codes: 0 success, 2 configuration error, 3 numeric or guard error.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

import numpy as np

from .energy import EnergyEvaluator
from .estimators import check_hamiltonian
from .exceptions import (
    EnumerationLimitError,
    GraphGenerationError,
    HamiltonianError,
    IncommensurateCoefficientsError,
    UnsupportedOrderError,
)
from .fourier import (
    DEFAULT_PEAK_THRESHOLD,
    half_spectrum,
    leakage_expected,
    peaks,
    predict_toy_frequencies,
    remove_dc,
    spectrum,
    write_spectrum,
)
from .hamiltonian import IsingHamiltonian, beta_frequency_bound
from .library import three_body_interpolation
from .optimize import multistart, write_benchmark
from .roughness import (
    CONCENTRATION_SIZES,
    CONCENTRATION_WEIGHTS,
    DEFAULT_DIRECTIONS,
    DEFAULT_SAMPLES,
    analyze_hamiltonian,
    concentration_study,
    write_report,
)
from .scan import (
    BETA_PERIOD,
    DEFAULT_RESOLUTION,
    analysis_gamma_period,
    grid_scan,
    min_odd_resolution,
    recommended_scan_params,
    write_graymap,
    write_scan,
)

EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_PI_RE = re.compile(r"^([-+]?[0-9.eE+-]*)\*?pi(?:/([0-9.]+))?$")


class ConfigError(Exception):
    pass


def parse_length(text: str) -> float:
    """Float, or a multiple of pi such as ``pi``, ``2pi``, ``8*pi``, ``pi/2``."""
    text = text.strip().lower()
    match = _PI_RE.match(text)
    if match:
        factor = match.group(1)
        value = math.pi * (float(factor) if factor not in ("", "+", "-") else float(factor + "1"))
        if match.group(2):
            value /= float(match.group(2))
        return value
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"cannot parse length {text!r}") from None


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _load(args) -> IsingHamiltonian:
    path = Path(args.hamiltonian)
    if not path.is_file() and ("/" in args.hamiltonian or args.hamiltonian.endswith(".json")):
        raise ConfigError(f"Hamiltonian file {args.hamiltonian} does not exist")
    return check_hamiltonian(args.hamiltonian)


def _extent(args, hamiltonian) -> tuple[float, float]:
    values = args.extent
    if values == ["auto"]:
        if not hamiltonian.terms:
            return math.pi, BETA_PERIOD
        try:
            return recommended_scan_params(hamiltonian).extent_gamma, BETA_PERIOD
        except IncommensurateCoefficientsError:
            _warn("coefficients are incommensurate; no gamma period exists, using extent pi")
            return math.pi, BETA_PERIOD
    if len(values) == 1:
        return parse_length(values[0]), BETA_PERIOD
    if len(values) == 2:
        return parse_length(values[0]), parse_length(values[1])
    raise ConfigError("--extent takes 'auto', one gamma extent, or gamma and beta extents")


def _resolution(args, hamiltonian, extent) -> tuple[int, int]:
    params = recommended_scan_params(hamiltonian, extent[0])
    beta_min = min_odd_resolution(beta_frequency_bound(hamiltonian), extent[1])
    if args.res is None:
        res = (max(DEFAULT_RESOLUTION, params.min_res_gamma), max(DEFAULT_RESOLUTION, beta_min))
    else:
        res = (args.res, args.res)
    if res[0] < params.min_res_gamma or res[1] < beta_min:
        _warn(
            f"resolution {res[0]}x{res[1]} is below the alias-free minimum "
            f"{params.min_res_gamma}x{beta_min}; spurious frequencies may appear"
        )
    return res


def _echo(args) -> list[str]:
    items = {k: v for k, v in vars(args).items() if k != "func"}
    return ["config " + " ".join(f"{k}={_show(v)}" for k, v in items.items())]


def _show(value) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


def _scan(args):
    hamiltonian = _load(args)
    evaluator = EnergyEvaluator(hamiltonian, args.evaluator)
    extent = _extent(args, hamiltonian)
    res = _resolution(args, hamiltonian, extent)
    scan = grid_scan(evaluator, res[0], res[1], extent[0], extent[1])
    if not np.all(np.isfinite(scan.values)):
        raise FloatingPointError("scan produced non-finite energies")
    return hamiltonian, extent, scan


def cmd_scan(args) -> int:
    _, _, scan = _scan(args)
    write_scan(scan, args.out, _echo(args))
    if args.heatmap:
        write_graymap(scan, args.heatmap)
    print(f"wrote {scan.resolution[0]}x{scan.resolution[1]} scan to {args.out}")
    return 0


def cmd_spectrum(args) -> int:
    hamiltonian, extent, scan = _scan(args)
    leaky = leakage_expected(hamiltonian, *extent)
    if leaky:
        _warn("cost frequencies fall off the scan lattice; expect spectral leakage")
    s = half_spectrum(remove_dc(spectrum(scan, leakage_warning=leaky)))
    write_spectrum(s, args.out, _echo(args))
    found = peaks(s, args.threshold)
    print(f"# {len(found)} peaks at relative threshold {args.threshold:g}")
    print("f_gamma,f_beta,magnitude")
    for p in found:
        print(f"{p.f_gamma:.10g},{p.f_beta:.10g},{p.magnitude:.10g}")
    if hamiltonian.n_qubits == 2:
        coeffs = {t.qubits: t.coefficient for t in hamiltonian.terms}
        predicted = predict_toy_frequencies(
            coeffs.get((0, 1), 0.0), coeffs.get((0,), 0.0), coeffs.get((1,), 0.0)
        )
        observed = {(round(abs(p.f_gamma), 9) + 0.0, round(abs(p.f_beta), 9) + 0.0) for p in found}
        print("# predicted |f| pairs: " + " ".join(f"({g:g},{b:g})" for g, b in sorted(predicted)))
        print(f"# observed matches prediction: {'yes' if observed == predicted else 'no'}")
    return 0


def cmd_roughness(args) -> int:
    hamiltonian = _load(args)
    extent_gamma = None
    if args.extent != ["auto"]:
        extent_gamma = parse_length(args.extent[0])
    elif analysis_gamma_period(hamiltonian)[1]:
        _warn("coefficients are incommensurate; no gamma period exists, using extent pi")
    report = analyze_hamiltonian(
        hamiltonian, args.evaluator, args.res, args.directions, args.samples, args.seed,
        args.span_rule, extent_gamma,
    )
    extra = {"command": "roughness", "hamiltonian": args.hamiltonian, "evaluator": args.evaluator, "res": args.res}
    write_report(report, args.out, extra)
    print(report.to_text(), end="")
    return 0


def cmd_interpolate(args) -> int:
    if args.hamiltonian:
        sequence = [check_hamiltonian(h) for h in args.hamiltonian]
    else:
        sequence = three_body_interpolation()
    lines = [f"# {c}" for c in _echo(args)]
    lines.append("step,n_terms,tv_mean,tv_std,tv_index,tv_grid,fourier_density")
    for step, hamiltonian in enumerate(sequence):
        r = analyze_hamiltonian(
            hamiltonian, args.evaluator, args.res, args.directions, args.samples, args.seed, args.span_rule
        )
        lines.append(
            f"{step},{len(hamiltonian.terms)},{r.tv_mean:.17g},{r.tv_std:.17g},"
            f"{r.tv_index:.17g},{r.tv_grid:.17g},{r.fourier_density:.17g}"
        )
    Path(args.out).write_text("\n".join(lines) + "\n")
    print("\n".join(lines[len(_echo(args)):]))
    return 0


def cmd_concentration(args) -> int:
    summaries = concentration_study(
        args.sizes, args.n_seeds, args.seed, tuple(args.weights), res=args.res,
        n_dirs=args.directions, m=args.samples, span_rule=args.span_rule,
    )
    lines = [f"# {c}" for c in _echo(args)]
    lines.append("n,n_seeds,tv_mean,tv_std,fd_mean,fd_std")
    for s in summaries:
        lines.append(
            f"{s.n},{len(s.reports)},{s.tv_mean:.17g},{s.tv_std:.17g},{s.fd_mean:.17g},{s.fd_std:.17g}"
        )
    Path(args.out).write_text("\n".join(lines) + "\n")
    print("\n".join(lines[1:]))
    return 0


def cmd_optbench(args) -> int:
    hamiltonian = _load(args)
    evaluator = EnergyEvaluator(hamiltonian, args.evaluator)
    result = multistart(
        evaluator, n_runs=args.n_runs, seed=args.seed, max_iters=args.max_iters,
        grid_resolution=args.res or DEFAULT_RESOLUTION, n_bins=args.bins,
    )
    config = {k: v for k, v in vars(args).items() if k != "func"}
    write_benchmark(result, args.out, config)
    print(f"global_min_estimate={result.global_min_estimate:.17g}")
    print(f"success_count={result.success_count}/{len(result.runs)}")
    print(f"clusters={result.n_clusters()}")
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _resolution_arg(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"resolution must be at least 2, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qaoa-landscape", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, hamiltonian=True, seed=False, default_out="out.txt"):
        if hamiltonian:
            p.add_argument("--hamiltonian", required=True, help="JSON file or builtin name (H1, toy:1,1,5, ...)")
        p.add_argument("--evaluator", choices=("auto", "closed", "statevector"), default="auto")
        p.add_argument("--res", type=_resolution_arg, default=None, help="grid points per axis")
        p.add_argument("--out", default=default_out)
        if seed:
            p.add_argument("--seed", type=int, required=True)

    def sections(p):
        p.add_argument("--directions", type=_positive_int, default=DEFAULT_DIRECTIONS)
        p.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES)
        p.add_argument("--span-rule", choices=("fastest", "slowest"), default="fastest")

    extent_help = "'auto' (gamma period from the coefficient GCD, by pi) or explicit gamma [beta] extents, e.g. 2pi pi"

    p = sub.add_parser("scan", help="2D energy scan")
    common(p, default_out="scan.csv")
    p.add_argument("--extent", nargs="+", default=["auto"], help=extent_help)
    p.add_argument("--heatmap", default=None, help="also write a PGM graymap here")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("spectrum", help="Fourier spectrum and peak list")
    common(p, default_out="spectrum.csv")
    p.add_argument("--extent", nargs="+", default=["auto"], help=extent_help)
    p.add_argument("--threshold", type=float, default=DEFAULT_PEAK_THRESHOLD)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("roughness", help="TV and Fourier roughness report")
    common(p, seed=True, default_out="roughness.txt")
    p.add_argument("--extent", nargs="+", default=["auto"], help="'auto' or a gamma extent")
    sections(p)
    p.set_defaults(func=cmd_roughness)

    p = sub.add_parser("interpolate", help="roughness along the 1-body to 3-body term walk")
    common(p, hamiltonian=False, seed=True, default_out="interpolation.csv")
    p.add_argument("--hamiltonian", action="append", default=None,
                   help="custom sequence, repeat once per step (default: builtin 21-step walk)")
    sections(p)
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("concentration", help="roughness of random regular MaxCut instances per size")
    common(p, hamiltonian=False, seed=True, default_out="concentration.csv")
    p.set_defaults(res=DEFAULT_RESOLUTION)
    p.add_argument("--sizes", type=_positive_int, nargs="+", default=list(CONCENTRATION_SIZES))
    p.add_argument("--n-seeds", type=_positive_int, default=20)
    p.add_argument("--weights", type=float, nargs=2, default=list(CONCENTRATION_WEIGHTS))
    sections(p)
    p.set_defaults(func=cmd_concentration)

    p = sub.add_parser("optbench", help="multistart local optimization benchmark")
    common(p, seed=True, default_out="optbench.json")
    p.add_argument("--n-runs", type=_positive_int, default=100)
    p.add_argument("--max-iters", type=_positive_int, default=200)
    p.add_argument("--bins", type=_positive_int, default=50)
    p.set_defaults(func=cmd_optbench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "evaluator", None) == "closed":
        args.evaluator = "closed_form"
    try:
        return args.func(args)
    except (EnumerationLimitError, IncommensurateCoefficientsError, GraphGenerationError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, HamiltonianError, UnsupportedOrderError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
