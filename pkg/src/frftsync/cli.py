"""Command-line experiment runner.

Subcommands:

* ``trial`` -- run one Monte-Carlo trial and print the report.
* ``sweep`` -- sweep one parameter over a grid, emit aggregated CSV.
* ``range`` -- print the unaliased CFO range for the configured geometry.

All flags can also be given in a TOML config file (``--config FILE``) using
the same names with underscores; explicit flags override the file.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .channel import ChannelConfig
from .harness import (ALGORITHMS, DEFAULT_CORR_LAG, DEFAULT_PAYLOAD_LEN,
                      SweepSpec, TsGeometry, report_range, rows_to_csv,
                      run_sweep, run_trial)

_PARAM_NAMES = {"phi2opt": "phi2opt", "ts-length": "ts_length",
                "cfo": "cfo", "osnr": "osnr"}


def _osnr(text: str):
    return None if text.lower() in ("none", "inf") else float(text)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="FILE", help="TOML config file")
    p.add_argument("--ts-length", type=int, help="total TS symbols (two chirps)")
    p.add_argument("--phi2opt", type=float, help="second chirp angle, radians")
    p.add_argument("--frame-offset", type=int, help="true frame offset, symbols")
    p.add_argument("--cfo-hz", type=float, help="true CFO, Hz")
    p.add_argument("--osnr-db", type=_osnr,
                   help="OSNR in dB over 12.5 GHz, or 'none' for noiseless")
    p.add_argument("--linewidth-hz", type=float, help="combined laser linewidth")
    p.add_argument("--trials", type=int, help="Monte-Carlo trials")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--algorithm", choices=ALGORITHMS,
                   help="synchronizer under test")
    rrc = p.add_mutually_exclusive_group()
    rrc.add_argument("--rrc", dest="rrc", action="store_true", default=None,
                     help="enable RRC pulse shaping at 2 samples/symbol")
    rrc.add_argument("--no-rrc", dest="rrc", action="store_false", default=None)
    p.add_argument("--payload-len", type=int, help="payload symbols per frame")
    p.add_argument("--workers", type=int, help="parallel worker processes")
    p.add_argument("--out", metavar="FILE", help="write output here, not stdout")


_DEFAULTS = {
    "ts_length": 1024, "phi2opt": np.pi / 4, "frame_offset": 100,
    "cfo_hz": 3e9, "osnr_db": 10.0, "linewidth_hz": 0.0, "trials": 1,
    "seed": 0, "algorithm": "proposed", "rrc": False,
    "payload_len": DEFAULT_PAYLOAD_LEN, "workers": 1, "out": None,
    "param": None, "grid": None,
}


def _settings(args: argparse.Namespace) -> dict:
    """defaults < config file < explicit flags."""
    merged = dict(_DEFAULTS)
    if args.config:
        with open(args.config, "rb") as fh:
            file_cfg = tomllib.load(fh)
        for key, value in file_cfg.items():
            key = key.replace("-", "_")
            if key not in merged:
                raise SystemExit(f"unknown config key {key!r}")
            merged[key] = value
    for key, value in vars(args).items():
        if key in merged and value is not None:
            merged[key] = value
    if isinstance(merged["osnr_db"], str):
        merged["osnr_db"] = _osnr(merged["osnr_db"])
    if isinstance(merged["grid"], str):
        merged["grid"] = [float(v) for v in merged["grid"].split(",")]
    return merged


def _build(merged: dict) -> tuple[ChannelConfig, TsGeometry]:
    cfg = ChannelConfig(frame_offset=merged["frame_offset"],
                        cfo_hz=merged["cfo_hz"], osnr_db=merged["osnr_db"],
                        linewidth_hz=merged["linewidth_hz"],
                        rrc_enabled=merged["rrc"], seed=merged["seed"])
    geom = TsGeometry(ts_length=merged["ts_length"],
                      phi2opt=merged["phi2opt"])
    return cfg, geom


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_trial(args) -> int:
    merged = _settings(args)
    cfg, geom = _build(merged)
    lines = []
    for i in range(merged["trials"]):
        rep = run_trial(cfg, geom, merged["algorithm"], trial_id=i,
                        payload_len=merged["payload_len"])
        lines.append(",".join(f"{k}={v}" for k, v in
                              dataclasses.asdict(rep).items()
                              if v is not None))
    _emit("\n".join(lines) + "\n", merged["out"])
    return 0


def _cmd_sweep(args) -> int:
    merged = _settings(args)
    if merged["param"] is None or merged["grid"] is None:
        raise SystemExit("sweep requires --param and --grid")
    cfg, geom = _build(merged)
    param = _PARAM_NAMES.get(merged["param"], merged["param"])
    spec = SweepSpec(param=param, grid=tuple(merged["grid"]),
                     trials=merged["trials"], base_cfg=cfg, geometry=geom,
                     algorithms=(merged["algorithm"],),
                     payload_len=merged["payload_len"])
    rows = run_sweep(spec, workers=merged["workers"])
    _emit(rows_to_csv(rows), merged["out"])
    return 0


def _cmd_range(args) -> int:
    merged = _settings(args)
    cfg, geom = _build(merged)
    _emit(f"{report_range(cfg, geom):.6e}\n", merged["out"])
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="frftsync",
        description="FRFT-based frame/CFO synchronization experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p_trial = sub.add_parser("trial", help="run individual trials")
    _add_common(p_trial)
    p_trial.set_defaults(func=_cmd_trial)

    p_sweep = sub.add_parser("sweep", help="sweep a parameter over a grid")
    _add_common(p_sweep)
    p_sweep.add_argument("--param", choices=sorted(_PARAM_NAMES),
                         help="parameter to sweep")
    p_sweep.add_argument("--grid", help="comma-separated grid values")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_range = sub.add_parser("range", help="print the unaliased CFO range")
    _add_common(p_range)
    p_range.set_defaults(func=_cmd_range)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
