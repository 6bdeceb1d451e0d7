"""Command-line interface for zarembapi."""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from . import __version__
from .config import RunConfig, load_config_file
from .constants import ARC_COVER_MAX_HORIZON, AUTO_DEPTH_CYLINDERS, ORACLE_MAX_HORIZON
from .exceptions import ValidationError, ZarembaError
from .reports import csv_text, envelope, meta_header, table, to_json, write_text

logger = logging.getLogger("zarembapi.cli")


# -------------------------------------------------------------------
# Output helpers
# -------------------------------------------------------------------
def _emit(config: RunConfig, payload: Dict[str, Any], headers: Sequence[str], rows: List[list], extra: str = "") -> None:
    """Write the result to stdout in the requested format and, with --out, to files."""
    meta = config.as_dict()
    document = envelope(config.command, meta, payload)
    if config.output == "json":
        sys.stdout.write(to_json(document) + "\n")
    elif config.output == "csv":
        sys.stdout.write(csv_text(headers, rows, meta))
    else:
        sys.stdout.write(table(headers, rows) + "\n")
        if extra:
            sys.stdout.write(extra + "\n")
    if config.out_dir:
        out = Path(config.out_dir)
        write_text(out / f"{config.command}.json", to_json(document))
        write_text(out / f"{config.command}.csv", csv_text(headers, rows, meta))


def _show_progress(config: RunConfig) -> bool:
    return config.progress and sys.stderr.isatty()


def _progress(iterable, config: RunConfig, desc: str):
    return tqdm(iterable, desc=desc, disable=not _show_progress(config), file=sys.stderr)


def _bracket(config: RunConfig):
    from .calculations.dimension.pressure import PressureBisection, auto_depth

    alphabet = config.alphabet_obj
    depth = config.depth or auto_depth(alphabet, AUTO_DEPTH_CYLINDERS)
    return PressureBisection(alphabet=alphabet, depth=depth, tol=config.tol).calculate()


# -------------------------------------------------------------------
# Commands
# -------------------------------------------------------------------
def cmd_census(config: RunConfig) -> int:
    """Proportion table of admissible denominators, optionally cross-checked."""
    from .calculations.census import CensusOracle, EnumerateDenominators, ProportionTable

    alphabet = config.alphabet_obj
    result = ProportionTable(alphabet=alphabet, horizons=config.horizons, workers=config.workers).calculate()
    headers, rows = result.csv_rows()
    payload = result.as_dict()

    if config.oracle:
        checked = [n for n in config.horizons if n <= ORACLE_MAX_HORIZON]
        agreement = {}
        for n in _progress(checked, config, "oracle"):
            fast = EnumerateDenominators(alphabet=alphabet, N=n).calculate()
            slow = CensusOracle(alphabet=alphabet, N=n).calculate()
            agreement[str(n)] = fast.to_list() == slow.to_list()
        payload["oracle_agrees"] = agreement
        if not all(agreement.values()):
            logger.error(f"[census] oracle disagreement: {agreement}")

    if config.witnesses:
        census = EnumerateDenominators(alphabet=alphabet, N=config.N, witnesses=True).calculate()
        if config.out_dir:
            lines = [meta_header(config.as_dict()), *census.witness_lines()]
            write_text(Path(config.out_dir) / "witnesses.txt", "\n".join(lines))

    _emit(config, payload, headers, rows, f"relative spread: {result.relative_spread():.6f}")
    return 0 if all(payload.get("oracle_agrees", {}).values()) else 1


def cmd_dimension(config: RunConfig) -> int:
    """Dimension bracket and threshold verdicts."""
    from .calculations.dimension import CheckThresholds

    report = CheckThresholds(bracket=_bracket(config)).calculate()
    headers = ["threshold", "value", "verdict"]
    rows = [[k, v, report.verdicts[k].value] for k, v in report.thresholds.as_dict().items()]
    b = report.bracket
    extra = f"bracket [{b.lower:.8f}, {b.upper:.8f}] depth={b.depth} cylinder_root={b.cylinder_root:.8f}"
    _emit(config, report.as_dict(), headers, rows, extra)
    return 0


def _factorization_params(config: RunConfig, N: int):
    from .calculations.ensemble import FactorizationParams, Q0

    q0 = Q0(A=config.alphabet_obj.A, eps0=config.eps0).calculate()
    default_m = max(config.q0_override, N**0.25)
    return FactorizationParams(
        M1=config.M1 or default_m,
        M3=config.M3 or default_m,
        eps0=config.eps0,
        Q0=q0.value,
        Q0_override=config.q0_override,
    )


def cmd_ensemble(config: RunConfig) -> int:
    """Build the norm-window ensemble and factorize its members."""
    from .calculations.ensemble import BuildEnsemble, Factorize

    N = config.N
    ensemble = BuildEnsemble(alphabet=config.alphabet_obj, N=N, window_ratio=config.window_ratio).calculate()
    report = Factorize(ensemble=ensemble, params=_factorization_params(config, N)).calculate()
    payload = {"ensemble": ensemble.as_dict(), "factorization": report.as_dict()}
    rows = [[k, v] for k, v in report.as_dict().items() if k != "params"]
    if config.out_dir:
        ensemble.write(Path(config.out_dir) / "members.txt", header=meta_header(config.as_dict()))
    _emit(config, payload, ["quantity", "value"], rows)
    return 0 if report.reconstructed_all else 1


def cmd_spectrum(config: RunConfig) -> int:
    """L2 trend, major-arc coverage and grid discretization of the exponential sum."""
    from .calculations.ensemble import BuildEnsemble
    from .calculations.expsum import (
        ArcCoverCheck,
        DirichletDecompose,
        ExponentialSum,
        L2Quadrature,
        L2RatioReport,
        LipschitzCheck,
        Spectrum,
    )

    alphabet = config.alphabet_obj
    rows, payload = [], {"horizons": {}}
    for N in _progress(config.horizons, config, "spectrum"):
        ensemble = BuildEnsemble(alphabet=alphabet, N=N, window_ratio=config.window_ratio).calculate()
        histogram = Spectrum(ensemble=ensemble).calculate()
        ratio = L2RatioReport(histogram=histogram, N=N).calculate()
        quadrature = L2Quadrature(histogram=histogram).calculate()
        T = config.lattice_T(N)
        lipschitz = LipschitzCheck(histogram=histogram, N=N, T=T, seed=config.seed).calculate()
        entry = {
            "l2": ratio.as_dict(),
            "quadrature": quadrature.as_dict(),
            "histogram": histogram.as_dict(),
            "lipschitz": lipschitz.as_dict(),
        }
        arcs_holds = None
        if N <= ARC_COVER_MAX_HORIZON:
            arcs = ArcCoverCheck(histogram=histogram, N=N, grid=config.grid).calculate()
            entry["arcs"] = arcs.as_dict()
            arcs_holds = arcs.holds
        else:
            logger.warning(f"[spectrum] arc cover skipped at N={N} > {ARC_COVER_MAX_HORIZON}")
        if config.theta is not None:
            value = ExponentialSum(histogram=histogram, theta=config.theta).calculate()
            point = DirichletDecompose(theta=config.theta, N=N).calculate()
            entry["theta"] = {"value": [value.real, value.imag], "abs": abs(value), "farey": point.as_dict()}
        payload["horizons"][str(N)] = entry
        rows.append([N, ratio.size, ratio.l2, ratio.baseline, ratio.c_emp, T, lipschitz.max_ratio, arcs_holds])
        if config.out_dir:
            h_headers, h_rows = histogram.csv_rows()
            write_text(Path(config.out_dir) / f"histogram_{N}.csv", csv_text(h_headers, h_rows, config.as_dict()))
    headers = ["N", "size", "l2", "baseline", "c_emp", "T", "lipschitz_ratio", "arcs_hold"]
    _emit(config, payload, headers, rows)
    return 0


def cmd_regions(config: RunConfig) -> int:
    """Region partition counts and masses of the first major-arc integral."""
    from .calculations.ensemble import BuildEnsemble
    from .calculations.expsum import RegionMass, RegionParams, Spectrum, partition_grid

    N = config.N
    gamma = config.gamma
    if gamma is None:
        gamma = 1.0 - _bracket(config).midpoint
        logger.info(f"[regions] gamma from dimension midpoint: {gamma:.6f}")
    params = RegionParams(N=N, gamma=gamma, eps0=config.eps0, nu=config.nu, Q0=config.q0_override)
    payload: Dict[str, Any] = {"params": params.as_dict()}
    if math.isqrt(N) > config.q0_override:
        payload["partition"] = partition_grid(params)
    ensemble = BuildEnsemble(alphabet=config.alphabet_obj, N=N, window_ratio=config.window_ratio).calculate()
    histogram = Spectrum(ensemble=ensemble).calculate()
    report = RegionMass(histogram=histogram, params=params, grid=config.grid).calculate()
    payload["mass"] = report.as_dict()
    headers, rows = report.csv_rows()
    _emit(config, payload, headers, rows, f"total={report.total:.6g} baseline={report.baseline:.6g}")
    return 0


def cmd_thresholds(config: RunConfig) -> int:
    """Gamma ceilings at nu and the optimal Kloosterman nu."""
    from .calculations.dimension import ThresholdSet
    from .calculations.expsum import ThresholdArithmetic, kloosterman_optimal_nu, optimal_nu_scan

    ceilings = ThresholdArithmetic(nu=config.nu, eps0=config.eps0).calculate()
    nu_scan, value_scan = optimal_nu_scan()
    payload = {
        "ceilings": ceilings.as_dict(),
        "dimension_thresholds": ThresholdSet().as_dict(),
        "kloosterman_nu": {"closed_form": kloosterman_optimal_nu(), "scan": nu_scan, "value": value_scan},
    }
    rows = [[k, v] for k, v in ceilings.as_dict().items()]
    _emit(config, payload, ["quantity", "value"], rows)
    return 0


def cmd_verify(config: RunConfig) -> int:
    """Run the desk-scale property suite."""
    from .verification import run_suite

    results = run_suite(seed=config.seed, progress=_show_progress(config))
    rows = [[name, "PASS" if ok else "FAIL", detail] for name, ok, detail in results]
    payload = {name: {"passed": ok, "detail": detail} for name, ok, detail in results}
    _emit(config, payload, ["property", "result", "detail"], rows)
    return 0 if all(ok for _, ok, _ in results) else 1


COMMANDS: Dict[str, Tuple[Callable[[RunConfig], int], str]] = {
    "census": (cmd_census, "Count admissible denominators along horizons"),
    "dimension": (cmd_dimension, "Bracket the Hausdorff dimension and check thresholds"),
    "ensemble": (cmd_ensemble, "Build the norm-window ensemble and factorize it"),
    "spectrum": (cmd_spectrum, "Exponential-sum L2 trend across horizons"),
    "regions": (cmd_regions, "Region partition and masses of the first major-arc integral"),
    "thresholds": (cmd_thresholds, "Gamma ceilings and the optimal nu"),
    "verify": (cmd_verify, "Run the property suite"),
}


# -------------------------------------------------------------------
# Parser
# -------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Flat key = value configuration file")
    common.add_argument("--alphabet", help='Letters, e.g. "1,2" or "1..5"')
    common.add_argument("--N", dest="horizons", help="Horizon or comma-separated increasing horizons")
    common.add_argument("--eps0", type=float)
    common.add_argument("--nu", type=float)
    common.add_argument("--q0-override", dest="q0_override", type=float)
    common.add_argument("--T", dest="T", type=int, help="Discretization parameter")
    common.add_argument("--grid", type=int, help="Quadrature nodes per unit of K")
    common.add_argument("--depth", type=int, help="Cylinder depth")
    common.add_argument("--tol", type=float, help="Bisection resolution")
    common.add_argument("--window-ratio", dest="window_ratio", type=float)
    common.add_argument("--gamma", type=float)
    common.add_argument("--M1", dest="M1", type=float)
    common.add_argument("--M3", dest="M3", type=float)
    common.add_argument("--theta", type=float)
    common.add_argument("--oracle", action="store_true", default=None)
    common.add_argument("--witnesses", action="store_true", default=None)
    common.add_argument("--workers", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out", dest="out_dir", help="Directory for result files")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="output", action="store_const", const="json")
    fmt.add_argument("--csv", dest="output", action="store_const", const="csv")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--no-progress", action="store_true")

    parser = argparse.ArgumentParser(
        prog="zarembapi",
        description="Computations around Zaremba's conjecture",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    for name, (_, help_text) in COMMANDS.items():
        subparsers.add_parser(name, parents=[common], help=help_text)
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("zarembapi")
    root.handlers[:] = [handler]
    root.setLevel(level)


_RUNTIME_KEYS = {"config", "verbose", "no_progress", "command"}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return 2

    configure_logging(args.verbose)
    try:
        file_values = load_config_file(args.config) if args.config else {}
        cli_values = {k: v for k, v in vars(args).items() if k not in _RUNTIME_KEYS}
        config = RunConfig.from_sources(
            file_values, command=args.command, progress=not args.no_progress, **cli_values
        )
    except ValidationError as exc:
        logger.error(f"configuration: {exc}")
        return 2

    handler, _ = COMMANDS[config.command]
    try:
        return handler(config)
    except ValidationError as exc:
        logger.error(str(exc))
        return 2
    except ZarembaError as exc:
        logger.error(str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
