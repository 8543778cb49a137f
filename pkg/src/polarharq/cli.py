"""Command-line entry points.

    polarharq construct --config cfg.json --out outdir
    polarharq simulate  --config cfg.json --out outdir
    polarharq harq      --config cfg.json --out outdir
    polarharq verify    [--config cfg.json] [--suites a,b] --out outdir

``--config preset:NAME`` loads a named preset. Exit codes: 0 success,
2 configuration error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import construct as construct_mod
from . import harness
from .harness import ConfigError, ExperimentConfig


def _load_config(value: str) -> ExperimentConfig:
    if value.startswith("preset:"):
        return harness.preset(value.split(":", 1)[1])
    return ExperimentConfig.from_json(value)


def _out_dir(value: str) -> Path:
    out = Path(value)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _cmd_construct(args) -> int:
    cfg = _load_config(args.config)
    out = _out_dir(args.out)
    t0 = time.perf_counter()
    snr = cfg.snr_start_db
    plan = harness._harq_point_setup(cfg, snr)
    construct_mod.export_reliability_csv(out / "reliability.csv", plan.reliability_history[-1])
    tables = {
        "design_es_n0_db": snr,
        "n_max": plan.n_max,
        "k_per_block": plan.k_per_block,
        "active_sets": [sorted(s) for s in plan.active.sets],
        "relocations": [[list(p) for p in r] for r in plan.active.relocations],
    }
    (out / "active_sets.json").write_text(json.dumps(tables, indent=2) + "\n")
    harness.write_manifest(out / "manifest.json", cfg, time.perf_counter() - t0)
    print(f"wrote {out/'reliability.csv'} and {out/'active_sets.json'}")
    return 0


def _cmd_simulate(args) -> int:
    cfg = _load_config(args.config)
    out = _out_dir(args.out)
    t0 = time.perf_counter()
    rows = harness.run_single(cfg)
    harness.write_rows_csv(out / "single.csv", rows)
    harness.write_manifest(out / "manifest.json", cfg, time.perf_counter() - t0)
    print(f"wrote {out/'single.csv'}")
    return 0


def _cmd_harq(args) -> int:
    cfg = _load_config(args.config)
    out = _out_dir(args.out)
    t0 = time.perf_counter()
    rows = harness.run_harq(cfg)
    t_max = len(cfg.transmissions)
    for t in range(1, t_max + 1):
        curve = [r for r in rows if r.transmissions_used == t]
        harness.write_rows_csv(out / f"harq_tx{t}.csv", curve)
    if cfg.baseline is not None:
        base_cfg = harness.replace(cfg, transmissions=[cfg.baseline], baseline=None)
        base_rows = harness.run_single(base_cfg)
        harness.write_rows_csv(out / "baseline.csv", base_rows)
    harness.write_manifest(out / "manifest.json", cfg, time.perf_counter() - t0)
    print(f"wrote {t_max} curve file(s) to {out}")
    return 0


def _cmd_verify(args) -> int:
    suites = None
    if args.suites:
        suites = [s.strip() for s in args.suites.split(",") if s.strip()]
    elif args.config:
        cfg_raw = json.loads(Path(args.config).read_text())
        suites = cfg_raw.get("suites")
    report = harness.verify(suites)
    out = _out_dir(args.out)
    (out / "verify_report.json").write_text(json.dumps(report, indent=2) + "\n")
    for name, suite in report["suites"].items():
        for check in suite["checks"]:
            status = "PASS" if check["passed"] else "FAIL"
            print(f"{status} {name}:{check['name']} {check['detail']}")
    if not report["passed"]:
        return 3
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="polarharq", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit reliability and active-set tables")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("simulate", help="BLER sweep of a single code")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("harq", help="BLER sweep of a HARQ session")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_harq)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--config", required=False)
    p.add_argument("--suites", required=False, help="comma-separated suite names")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_verify)

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
