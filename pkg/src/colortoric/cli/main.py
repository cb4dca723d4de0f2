from __future__ import annotations

import argparse
import csv
import io as _io
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from colortoric.chains import derive_map, derive_ensemble, map_verify, predicted_gap, single_chain_ensemble, ratio_grid
from colortoric.errors import ColortoricError
from colortoric.io import ResultCache, dumps_report, instance_hash, load, wrap_report
from colortoric.lattice import HexTorus, make_torus, validate, validate_dims, require_admissible
from colortoric.models import homology_check, interpolate
from colortoric.spectra import lowest_eigs, spectral_gap, ground_state_splitting, tc_ground_states
from colortoric.utils.parallel import parallel_map
from colortoric.utils.tolerances import set_tolerances
from colortoric.wilson import wilson_scan, length_dependence
from .config import RunConfig, load_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

COMMANDS = ("validate", "spectrum", "map-verify", "gap-scan", "wilson", "sectors", "logicals")


def _torus(cfg: RunConfig) -> HexTorus:
    if cfg.instance is not None:
        t = load(cfg.instance)
        report = validate(t)
        if not report.admissible:
            logger.warning(f"Instance `{cfg.instance}` fails checks {report.failed()}.")
        require_admissible(t)
        return t

    return make_torus(cfg.rows, cfg.cols)


class CommandResult(object):
    """
    Output of a subcommand: the JSON payload, optional CSV rows, and the exit code.
    """

    def __init__(self, result: Any, instance: Optional[str] = None, rows: Optional[List[Dict[str, Any]]] = None,
                 code: int = EXIT_OK):
        self.result = result
        self.instance = instance
        self.rows = rows
        self.code = code


## Subcommands ##

def cmd_validate(cfg: RunConfig) -> CommandResult:
    if cfg.instance is not None:
        t = load(cfg.instance)
        report = validate(t)
    else:
        report, t = validate_dims(cfg.rows, cfg.cols)

    digest = instance_hash(t) if report.admissible else None
    rows = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks]
    return CommandResult(report, digest, rows, EXIT_OK if report.admissible else EXIT_FAILURE)


def _cached(cfg: RunConfig, request: Dict[str, Any], compute: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
    cache = ResultCache(cfg.cache_dir, enabled = not cfg.no_cache)
    hit = cache.get(request)
    if hit is not None:
        return hit

    result = compute()
    cache.put(request, result)
    return result


def cmd_spectrum(cfg: RunConfig) -> CommandResult:
    t = _torus(cfg)
    digest = instance_hash(t)
    request = {"command": "spectrum", "instance": digest, "gt": cfg.gt, "gc": cfg.gc, "k": cfg.k,
               "tolerances": cfg.tolerances()}

    def compute():
        h = interpolate(t, cfg.gt, cfg.gc)
        report = lowest_eigs(h, cfg.k, tol = cfg.residual_tol, cluster_tol = cfg.cluster_tol, seed = cfg.seed,
                             return_vectors = False)
        out = report.to_dict()
        out["rank_degeneracy"] = h.ground_degeneracy() if cfg.gt == 0 or cfg.gc == 0 else None
        return out

    result = _cached(cfg, request, compute)
    rows = [{"index": i, "eigenvalue": e, "residual": r}
            for i, (e, r) in enumerate(zip(result["eigenvalues"], result["residuals"]))]
    return CommandResult(result, digest, rows)


def cmd_map_verify(cfg: RunConfig) -> CommandResult:
    t = _torus(cfg)
    report = map_verify(t, cfg.gt, cfg.gc, k = cfg.k, tol = cfg.residual_tol, cluster_tol = cfg.cluster_tol)
    rows = [{"index": i, "ed": a, "predicted": b, "naive_predicted": c}
            for i, (a, b, c) in enumerate(zip(report.ed, report.predicted, report.naive_predicted))]
    return CommandResult(report, instance_hash(t), rows, EXIT_OK if report.passed else EXIT_FAILURE)


def _ed_gap(args):
    t, ratio = args
    return spectral_gap(interpolate(t, ratio, 1.0))[2]


def cmd_gap_scan(cfg: RunConfig) -> CommandResult:
    ratios = ratio_grid(cfg.ratio_start, cfg.ratio_stop, cfg.ratio_step)
    digest = None
    ed_gaps = None
    if cfg.chain_n is not None:
        ensemble = single_chain_ensemble(cfg.chain_n)
    else:
        t = _torus(cfg)
        digest = instance_hash(t)
        ensemble = derive_ensemble(t)
        if cfg.ed:
            ed_gaps = parallel_map(_ed_gap, [(t, float(r)) for r in ratios], workers = cfg.workers,
                                   verbose = cfg.verbose, desc = "ed gap")

    curve = predicted_gap(ensemble, ratios, workers = cfg.workers, verbose = cfg.verbose)
    if ed_gaps is not None:
        curve.meta["ed_gaps"] = [float(g) for g in ed_gaps]

    rows = []
    for i, (ratio, gap) in enumerate(zip(curve.ratios, curve.gaps)):
        rows.append({"ratio": ratio, "ed_gap": ed_gaps[i] if ed_gaps is not None else "", "chain_gap": gap,
                     "argmin": int(ratio == curve.argmin)})

    return CommandResult(curve, digest, rows)


def cmd_wilson(cfg: RunConfig) -> CommandResult:
    t = _torus(cfg)
    gammas = np.linspace(cfg.gamma_start, cfg.gamma_stop, cfg.gamma_num)
    reports = wilson_scan(t, gammas, workers = cfg.workers, anchor = cfg.anchor, verbose = cfg.verbose)

    result = {"loops": [r.to_dict() for r in reports], "length_dependence": length_dependence(reports)}
    rows = []
    for r in reports:
        for g, ed, trial in zip(r.gammas, r.ed_values, r.trial_values()):
            rows.append({"loop": r.name, "L": r.length, "area": r.area, "gamma": g, "ed": ed, "trial": trial})

    return CommandResult(result, instance_hash(t), rows)


def cmd_sectors(cfg: RunConfig) -> CommandResult:
    t = _torus(cfg)
    derivation = derive_map(t, cfg.gt, cfg.gc)
    rows = [{"rule": i, "labels": " ".join(r.labels), "rhs": r.rhs} for i, r in enumerate(derivation.analysis.rules)]
    return CommandResult(derivation, instance_hash(t), rows)


def cmd_logicals(cfg: RunConfig) -> CommandResult:
    t = _torus(cfg)
    homology = homology_check(t)
    result = {
        "homology": homology.to_dict(),
        "tc_ground_states": tc_ground_states(t).to_dict(),
        "splitting": ground_state_splitting(t).to_dict()
    }
    rows = [{"check": k, "value": json.dumps(v)} for k, v in homology.to_dict().items()]
    return CommandResult(result, instance_hash(t), rows, EXIT_OK if homology.passed else EXIT_FAILURE)


HANDLERS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "validate": cmd_validate,
    "spectrum": cmd_spectrum,
    "map-verify": cmd_map_verify,
    "gap-scan": cmd_gap_scan,
    "wilson": cmd_wilson,
    "sectors": cmd_sectors,
    "logicals": cmd_logicals,
}


## Front-end ##

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog = "colortoric",
                                     description = "Color-code / toric-code interpolation on a hexagonal torus.")
    parser.add_argument("--log-level", default = "WARNING", choices = ["DEBUG", "INFO", "WARNING", "ERROR"])

    common = argparse.ArgumentParser(add_help = False)
    common.add_argument("--config", default = None, help = "File of `key = value` lines.")
    common.add_argument("--rows", type = int, default = None, help = "Hexagon rows (a multiple of 3).")
    common.add_argument("--cols", type = int, default = None, help = "Hexagon columns.")
    common.add_argument("--instance", default = None, help = "Load the torus from a `.cti` instance file.")
    common.add_argument("--gt", type = float, default = None, help = "TC coupling g_t.")
    common.add_argument("--gc", type = float, default = None, help = "CC coupling g_c.")
    common.add_argument("--k", type = int, default = None, help = "Number of levels.")
    common.add_argument("--residual-tol", type = float, default = None)
    common.add_argument("--cluster-tol", type = float, default = None)
    common.add_argument("--seed", type = int, default = None)
    common.add_argument("--workers", type = int, default = None)
    common.add_argument("--cache-dir", default = None)
    common.add_argument("--no-cache", action = "store_true", default = None)
    common.add_argument("--format", choices = ["json", "csv"], default = None)
    common.add_argument("--output", default = None, help = "Write to this file instead of stdout.")
    common.add_argument("--verbose", action = "store_true", default = None)

    subparsers = parser.add_subparsers(dest = "command", required = True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name, parents = [common])
        if name == "gap-scan":
            sub.add_argument("--chain-n", type = int, default = None, help = "Scan a single chain of this length.")
            sub.add_argument("--start", dest = "ratio_start", type = float, default = None)
            sub.add_argument("--stop", dest = "ratio_stop", type = float, default = None)
            sub.add_argument("--step", dest = "ratio_step", type = float, default = None)
            sub.add_argument("--ed", action = "store_true", default = None, help = "Also compute ED gaps.")
        if name == "wilson":
            sub.add_argument("--gamma-start", type = float, default = None)
            sub.add_argument("--gamma-stop", type = float, default = None)
            sub.add_argument("--gamma-num", type = int, default = None)
            sub.add_argument("--anchor", type = int, default = None)

    return parser


def _render_csv(rows: Sequence[Dict[str, Any]]) -> str:
    buffer = _io.StringIO()
    if len(rows) > 0:
        writer = csv.DictWriter(buffer, fieldnames = list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    return buffer.getvalue()


def _emit(text: str, output: Optional[str]):
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as f:
            f.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level = getattr(logging, args.log_level), stream = sys.stderr,
                        format = "%(asctime)s %(levelname)s %(name)s: %(message)s")

    overrides = {k: v for k, v in vars(args).items() if k in RunConfig.field_names()}
    try:
        file_values = load_config(args.config) if args.config is not None else None
        cfg = RunConfig.from_sources(file_values, overrides)
    except (ValueError, AssertionError, OSError) as err:
        sys.stderr.write(f"colortoric: error: {err}\n")
        return EXIT_USAGE

    logger.info(f"Running `{args.command}` with {cfg.as_dict()}.")
    try:
        with set_tolerances(**cfg.tolerances()):
            out = HANDLERS[args.command](cfg)
    except ColortoricError as err:
        payload = err.to_dict()
        payload["config"] = cfg.as_dict()
        _emit(dumps_report(payload), cfg.output)
        logger.error(f"`{args.command}` failed: {err.message}")
        return EXIT_FAILURE

    if cfg.format == "csv":
        _emit(_render_csv(out.rows or []), cfg.output)
    else:
        _emit(dumps_report(wrap_report(out.result, cfg.as_dict(), out.instance)), cfg.output)

    return out.code


if __name__ == "__main__":
    sys.exit(main())
