"""Command-line experiment runner.

    qthermo run --config cfg.json
    qthermo run --experiment energy-clone --dim 3 --seed 42 --out report.json
    qthermo list

The config file is a JSON object mirroring ExperimentConfig. Exit code is 0
iff no experiment returned a FAIL verdict; REPORT-ONLY never affects it.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import InvalidConfigError, QThermoError
from .experiments import ExperimentConfig, experiment_names, run
from .reports import VERDICT_FAIL, render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qthermo",
        description="Seeded quantum-thermodynamics experiments with structured reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run one experiment and emit a report")
    runp.add_argument("--config", help="JSON config file mirroring ExperimentConfig")
    runp.add_argument("--experiment", choices=experiment_names(), help="experiment name")
    runp.add_argument("--dim", type=int)
    runp.add_argument("--seed", type=int)
    runp.add_argument("--restarts", type=int)
    runp.add_argument("--samples", type=int)
    runp.add_argument("--grid", type=int)
    runp.add_argument("--hamiltonian", help="comma-separated eigenvalue list")
    runp.add_argument("--jobs", type=int, help="parallel restarts (results unchanged)")
    runp.add_argument("--out", help="report output path (default: stdout only)")
    runp.add_argument("--format", choices=("json", "csv"), default="json")

    sub.add_parser("list", help="list registered experiments")
    return parser


def _config_from_args(args) -> ExperimentConfig:
    data = {}
    if args.config:
        data = json.loads(Path(args.config).read_text())
        if not isinstance(data, dict):
            raise InvalidConfigError("config file must hold a JSON object")
    if args.experiment:
        data["experiment"] = args.experiment
    for name in ("dim", "seed", "restarts", "samples", "grid", "jobs"):
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    if args.hamiltonian is not None:
        data["hamiltonian"] = [float(x) for x in args.hamiltonian.split(",")]
    if args.out is not None:
        data["output_path"] = args.out
    if "experiment" not in data:
        raise InvalidConfigError("provide --experiment or a config file naming one")
    return ExperimentConfig.from_dict(data)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "list":
        for name in experiment_names():
            print(name)
        return 0

    try:
        config = _config_from_args(args)
        report = run(config)
    except QThermoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    document = render([report], args.format)
    if config.output_path:
        Path(config.output_path).write_text(document)
        print(f"report written to {config.output_path}")
    else:
        sys.stdout.write(document)
    summary = ", ".join(f"{k}={v:.3e}" if isinstance(v, float) else f"{k}={v}"
                        for k, v in report.metrics.items())
    print(f"{config.experiment}: {report.verdict} ({summary})")
    return 1 if report.verdict == VERDICT_FAIL else 0


if __name__ == "__main__":
    raise SystemExit(main())
