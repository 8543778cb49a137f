"""Experiment driver: BLER sweeps, HARQ sessions, verification suites.

Sweeps run frame-by-frame with a counter-based RNG, so results are identical
for any worker count: the early-stop rule is "first frame index where the
stop curve reaches the error limit", evaluated in frame-index order after the
fact. The stop curve is the final cumulative-transmission curve.
"""
from __future__ import annotations

import csv
import json
import logging
import subprocess
import time
from dataclasses import dataclass, field, replace
from multiprocessing import get_context
from pathlib import Path

import numpy as np

from . import __version__, chansim, construct, gf2lin, oracle, polar, ratematch
from .arum import (
    ArumReceiver,
    ArumTransmitter,
    SessionPlan,
    TransmissionConfig,
    step1_combine,
    LlrBlock,
)
from .polar import CrcConfig, crc_attach
from .ratematch import RateMatchMode, apply_plan, de_rate_match, make_plan

log = logging.getLogger("polarharq")

CRC_WIDTH = 16


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep description; ``design_es_n0_db`` of None tracks the sweep point."""

    payload_k: int
    transmissions: list[TransmissionConfig]
    snr_start_db: float
    snr_stop_db: float
    snr_step_db: float
    crc_enabled: bool = True
    list_size: int = 8
    kernel: str = "FL"
    frame_budget: int = 100_000
    error_limit: int = 100
    seed: int = 1
    baseline: TransmissionConfig | None = None
    workers: int = 1

    def __post_init__(self):
        if self.payload_k < 1:
            raise ConfigError("payload_k must be positive")
        if self.crc_enabled and self.payload_k <= CRC_WIDTH:
            raise ConfigError("payload_k must exceed the CRC width")
        if not self.transmissions:
            raise ConfigError("at least one transmission is required")
        if self.frame_budget < 1:
            raise ConfigError("frame_budget must be >= 1")
        if self.error_limit < 1:
            raise ConfigError("error_limit must be >= 1")
        if self.list_size < 1:
            raise ConfigError("list_size must be >= 1")
        if self.snr_step_db <= 0:
            raise ConfigError("snr_step_db must be positive")
        try:
            gf2lin.KernelKind(self.kernel)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @property
    def info_len(self) -> int:
        return self.payload_k - CRC_WIDTH if self.crc_enabled else self.payload_k

    def snr_points(self) -> list[float]:
        pts = []
        x = self.snr_start_db
        while x <= self.snr_stop_db + 1e-9:
            pts.append(round(x, 9))
            x += self.snr_step_db
        return pts

    def to_dict(self) -> dict:
        out = {
            "payload_k": self.payload_k,
            "crc_enabled": self.crc_enabled,
            "list_size": self.list_size,
            "kernel": self.kernel,
            "transmissions": [t.to_dict() for t in self.transmissions],
            "snr_start_db": self.snr_start_db,
            "snr_stop_db": self.snr_stop_db,
            "snr_step_db": self.snr_step_db,
            "frame_budget": self.frame_budget,
            "error_limit": self.error_limit,
            "seed": self.seed,
            "baseline": self.baseline.to_dict() if self.baseline else None,
            "workers": self.workers,
        }
        return out

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        try:
            txs = [TransmissionConfig(**t) for t in raw["transmissions"]]
            baseline = raw.get("baseline")
            if baseline is not None:
                baseline = TransmissionConfig(**baseline)
            return cls(
                payload_k=raw["payload_k"],
                transmissions=txs,
                snr_start_db=raw["snr_start_db"],
                snr_stop_db=raw["snr_stop_db"],
                snr_step_db=raw["snr_step_db"],
                crc_enabled=raw.get("crc_enabled", True),
                list_size=raw.get("list_size", 8),
                kernel=raw.get("kernel", "FL"),
                frame_budget=raw.get("frame_budget", 100_000),
                error_limit=raw.get("error_limit", 100),
                seed=raw.get("seed", 1),
                baseline=baseline,
                workers=raw.get("workers", 1),
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"bad experiment config: {exc}") from None

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        return cls.from_dict(raw)


@dataclass(frozen=True)
class ResultRow:
    snr_db: float
    es_n0: float
    eb_n0: float
    transmissions_used: int
    frames: int
    block_errors: int
    bler: float
    crc_false_pass: int
    wall_time: float

    CSV_COLUMNS = (
        "snr_db",
        "es_n0",
        "eb_n0",
        "transmissions_used",
        "frames",
        "block_errors",
        "bler",
        "crc_false_pass",
        "wall_time",
    )

    def csv_values(self):
        return [
            repr(float(self.snr_db)),
            repr(float(self.es_n0)),
            repr(float(self.eb_n0)),
            self.transmissions_used,
            self.frames,
            self.block_errors,
            repr(float(self.bler)),
            self.crc_false_pass,
            f"{self.wall_time:.3f}",
        ]


def _resolve_design(tcfg: TransmissionConfig, snr_db: float) -> TransmissionConfig:
    if tcfg.design_es_n0_db is None:
        return TransmissionConfig(tcfg.n_mother, tcfg.m_tx, tcfg.mode, snr_db)
    return tcfg


def _frame_data(cfg: ExperimentConfig, rng: chansim.FrameRng):
    info = rng.bits(cfg.info_len)
    data = crc_attach(info) if cfg.crc_enabled else info
    return info, data


# ---------------------------------------------------------------------------
# single directly-constructed code


def _single_point_setup(cfg: ExperimentConfig, tcfg: TransmissionConfig, snr_db: float):
    tcfg = _resolve_design(tcfg, snr_db)
    plan = make_plan(tcfg.n_mother, tcfg.m_tx, tcfg.mode)
    mean = chansim.llr_mean_from_es_n0_db(tcfg.design_es_n0_db)
    init_means = de_rate_match(plan, np.full(plan.m_tx, mean))
    if plan.mode is RateMatchMode.SHORTEN:
        init_means[list(plan.affected)] = np.inf
    rel = construct.reliability_single(tcfg.n_mother, init_means)
    allowed = [i for i in range(tcfg.n_mother) if i not in plan.forced_frozen_u]
    if len(allowed) < cfg.payload_k:
        raise ConfigError("code cannot carry the payload")
    ranked = sorted(allowed, key=lambda i: (-rel[i], i))
    active = sorted(ranked[: cfg.payload_k])
    spec = polar.PolarSpec.from_sets(tcfg.n_mother, active)
    return plan, spec, np.array(active)


def _single_frame(args, frame: int):
    cfg, plan, spec, active, sigma2 = args
    rng = chansim.FrameRng(cfg.seed, frame)
    info, data = _frame_data(cfg, rng)
    u = np.zeros(spec.n_len, dtype=np.uint8)
    u[active] = data
    x = apply_plan(plan, polar.encode(u))
    y = chansim.transmit(chansim.modulate(x), sigma2, rng)
    llr = de_rate_match(plan, chansim.llr(y, sigma2))
    if plan.mode is RateMatchMode.SHORTEN:
        llr[list(plan.affected)] = np.inf
    paths = polar.scl_decode(llr, spec, cfg.list_size)
    candidates = [(p.decisions[active], p.metric) for p in paths]
    if cfg.crc_enabled:
        bits, _, ok = polar.select_by_crc(candidates, CrcConfig())
        decoded_info = bits[: cfg.info_len]
    else:
        bits, _ = candidates[0]
        ok = False
        decoded_info = bits
    err = not np.array_equal(decoded_info, info)
    false_pass = ok and err
    return [(err, false_pass)]


def run_single(cfg: ExperimentConfig) -> list[ResultRow]:
    """Sweep one directly constructed (rate-matched) polar code."""
    if len(cfg.transmissions) != 1:
        raise ConfigError("run_single needs exactly one transmission")
    tcfg = cfg.transmissions[0]
    rows = []
    for snr_db in cfg.snr_points():
        t0 = time.perf_counter()
        plan, spec, active = _single_point_setup(cfg, tcfg, snr_db)
        sigma2 = chansim.ChannelParams.from_es_n0_db(snr_db).sigma2
        outcomes = _drive_frames(
            cfg, (_single_frame, (cfg, plan, spec, active, sigma2)), n_curves=1
        )
        rate = cfg.info_len / tcfg.m_tx
        rows.extend(
            _rows_from_outcomes(cfg, snr_db, [rate], outcomes, time.perf_counter() - t0)
        )
        log.info("single %s dB: bler=%s", snr_db, rows[-1].bler)
    return rows


# ---------------------------------------------------------------------------
# HARQ sessions


def _harq_point_setup(cfg: ExperimentConfig, snr_db: float) -> SessionPlan:
    configs = [_resolve_design(t, snr_db) for t in cfg.transmissions]
    return SessionPlan(cfg.payload_k, cfg.kernel, configs)


def _harq_frame(args, frame: int):
    cfg, plan, sigma2 = args
    rng = chansim.FrameRng(cfg.seed, frame)
    info, data = _frame_data(cfg, rng)
    tx = ArumTransmitter(data, plan)
    rx = ArumReceiver(plan)
    crc = CrcConfig() if cfg.crc_enabled else None
    out = []
    for _ in range(plan.t_max):
        x = tx.tx_step()
        y = chansim.transmit(chansim.modulate(x), sigma2, rng)
        rx.ingest(chansim.llr(y, sigma2))
        res = rx.joint_decode(cfg.list_size, crc=crc)
        decoded_info = res.data[: cfg.info_len]
        err = not np.array_equal(decoded_info, info)
        out.append((err, res.crc_pass and err))
    return out


def run_harq(cfg: ExperimentConfig) -> list[ResultRow]:
    """Sweep a HARQ session; one curve per cumulative transmission count."""
    t_max = len(cfg.transmissions)
    rows = []
    for snr_db in cfg.snr_points():
        t0 = time.perf_counter()
        plan = _harq_point_setup(cfg, snr_db)
        sigma2 = chansim.ChannelParams.from_es_n0_db(snr_db).sigma2
        outcomes = _drive_frames(cfg, (_harq_frame, (cfg, plan, sigma2)), n_curves=t_max)
        cum_m = np.cumsum([t.m_tx for t in cfg.transmissions])
        rates = [cfg.info_len / m for m in cum_m]
        point_rows = _rows_from_outcomes(
            cfg, snr_db, rates, outcomes, time.perf_counter() - t0
        )
        rows.extend(point_rows)
        log.info(
            "harq %s dB: bler=%s",
            snr_db,
            [round(r.bler, 5) for r in point_rows],
        )
    return rows


# ---------------------------------------------------------------------------
# frame driving with deterministic early stop

_CHUNK = 128


def _eval_chunk(task):
    (frame_fn, args), lo, hi = task
    return [frame_fn(args, f) for f in range(lo, hi)]


def _drive_frames(cfg: ExperimentConfig, work, n_curves: int):
    """Evaluate frames in index order until the stop curve hits the error
    limit or the budget runs out. Returns (frames, errors[], false_pass[])."""
    frame_fn, args = work
    errors = np.zeros(n_curves, dtype=np.int64)
    false_pass = np.zeros(n_curves, dtype=np.int64)
    stop = n_curves - 1
    frames_done = 0
    if cfg.workers <= 1:
        while frames_done < cfg.frame_budget:
            out = frame_fn(args, frames_done)
            frames_done += 1
            for t, (err, fp) in enumerate(out):
                errors[t] += err
                false_pass[t] += fp
            if errors[stop] >= cfg.error_limit:
                break
        return frames_done, errors, false_pass
    ctx = get_context("fork")
    with ctx.Pool(cfg.workers) as pool:
        next_frame = 0
        stop_hit = False
        while not stop_hit and next_frame < cfg.frame_budget:
            tasks = []
            for _ in range(cfg.workers):
                if next_frame >= cfg.frame_budget:
                    break
                hi = min(next_frame + _CHUNK, cfg.frame_budget)
                tasks.append((work, next_frame, hi))
                next_frame = hi
            for chunk in pool.map(_eval_chunk, tasks):
                for out in chunk:
                    if stop_hit:
                        break
                    frames_done += 1
                    for t, (err, fp) in enumerate(out):
                        errors[t] += err
                        false_pass[t] += fp
                    if errors[stop] >= cfg.error_limit:
                        stop_hit = True
    return frames_done, errors, false_pass


def _rows_from_outcomes(cfg, snr_db, rates, outcomes, wall):
    frames, errors, false_pass = outcomes
    rows = []
    for t, rate in enumerate(rates):
        rows.append(
            ResultRow(
                snr_db=snr_db,
                es_n0=snr_db,
                eb_n0=chansim.eb_n0_db(snr_db, rate),
                transmissions_used=t + 1,
                frames=frames,
                block_errors=int(errors[t]),
                bler=errors[t] / frames,
                crc_false_pass=int(false_pass[t]),
                wall_time=wall,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# output files


def write_rows_csv(path, rows: list[ResultRow]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(ResultRow.CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.csv_values())


def write_manifest(path, cfg: ExperimentConfig, wall_time: float) -> None:
    manifest = {
        "config": cfg.to_dict(),
        "seed": cfg.seed,
        "version": _version_string(),
        "wall_time": wall_time,
    }
    Path(path).write_text(json.dumps(manifest, indent=2) + "\n")


def _version_string() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True,
            text=True,
            cwd=Path(__file__).parent,
            timeout=5,
        )
        if out.returncode == 0:
            return f"{__version__}+g{out.stdout.strip()}"
    except OSError:
        pass
    return __version__


def crossing_snr(rows: list[ResultRow], target_bler: float, transmissions_used: int | None = None) -> float:
    """SNR where the curve crosses a BLER level, by log-linear interpolation
    between the bracketing sweep points. NaN when the curve never crosses."""
    pts = [
        (r.snr_db, r.bler)
        for r in sorted(rows, key=lambda r: r.snr_db)
        if transmissions_used is None or r.transmissions_used == transmissions_used
    ]
    for (x0, b0), (x1, b1) in zip(pts, pts[1:]):
        if b0 >= target_bler >= b1 and b1 > 0:
            if b0 == b1:
                return x0
            f = (np.log10(b0) - np.log10(target_bler)) / (np.log10(b0) - np.log10(b1))
            return x0 + f * (x1 - x0)
    return float("nan")


# ---------------------------------------------------------------------------
# verification suites


def _check(name, fn):
    try:
        detail = fn()
        return {"name": name, "passed": True, "detail": detail or ""}
    except AssertionError as exc:
        return {"name": name, "passed": False, "detail": str(exc)}


def _suite_kernels():
    checks = []

    def nesting():
        for kind in ("IF", "FL", "ARIKAN"):
            big = gf2lin.kernel_matrix(kind, 16)
            for t in range(1, 16):
                sub = gf2lin.kernel_matrix(kind, t)
                assert np.array_equal(sub, big[:t, :t]), f"{kind} t={t} not nested"
                assert np.all(np.diag(sub) == 1), f"{kind} t={t} diagonal"
                assert not np.any(np.tril(sub, -1)), f"{kind} t={t} not triangular"
        return "nesting holds for t <= 16"

    def fl_arikan():
        for t in (1, 2, 3):
            assert np.array_equal(
                gf2lin.kernel_matrix("FL", t), gf2lin.kernel_matrix("ARIKAN", t)
            ), f"t={t}"
        return "FL == ARIKAN for t <= 3"

    def involution():
        for n in (2, 4, 8, 16, 32):
            g = gf2lin.transform_matrix(n)
            assert np.array_equal(gf2lin.mat_mul(g, g), np.eye(n, dtype=np.uint8)), n
        return "G*G = I for N <= 32"

    def encode_match():
        rng = np.random.default_rng(0)
        for n in (2, 8, 64, 256):
            g = gf2lin.transform_matrix(n)
            for _ in range(10):
                u = rng.integers(0, 2, n).astype(np.uint8)
                assert np.array_equal(polar.encode(u), gf2lin.mat_vec_mul(u, g)), n
        return "butterfly == matrix product"

    checks.append(_check("kernel_nesting", nesting))
    checks.append(_check("fl_equals_arikan_t3", fl_arikan))
    checks.append(_check("transform_involution", involution))
    checks.append(_check("encode_matches_matrix", encode_match))
    return checks


def _suite_oracle():
    checks = []

    def sc_llrs():
        rng = np.random.default_rng(1)
        for n in (2, 4, 8):
            spec = polar.PolarSpec.from_sets(n, active=range(n))
            for _ in range(30):
                llr = rng.normal(0, 3, n)
                u = rng.integers(0, 2, n).astype(np.uint8)
                got = polar.sc_bit_llrs(llr, spec, u)
                for i in range(n):
                    want = oracle.bit_channel_posteriors(llr, i, u[:i])
                    assert abs(got[i] - want) <= 1e-9 * max(1.0, abs(want)), (n, i)
        return "SC bit-LLRs within 1e-9 of brute force"

    def step1():
        rng = np.random.default_rng(2)
        for kind in ("IF", "FL", "ARIKAN"):
            for t in (2, 3):
                kern = gf2lin.kernel_matrix(kind, t)
                for _ in range(20):
                    blocks = [
                        LlrBlock(values=rng.normal(0, 2, 4), n_mother=4, shorten_mask=frozenset())
                        for _ in range(t)
                    ]
                    for s in range(t - 1, -1, -1):
                        dec = [rng.integers(0, 2, 4).astype(np.uint8) for _ in range(t - s - 1)]
                        got = step1_combine(blocks, dec, kern, s)
                        for j in range(4):
                            want = oracle.step1_marginal(
                                np.array([b.values[j] for b in blocks]),
                                s,
                                np.array([d[j] for d in dec], dtype=np.uint8),
                                kern,
                            )
                            assert abs(got[j] - want) <= 1e-9 * max(1.0, abs(want))
        return "step-one combining within 1e-9 of brute force"

    def scl_map():
        rng = np.random.default_rng(3)
        spec = polar.PolarSpec.from_sets(8, active=[3, 5, 6, 7])
        for _ in range(25):
            llr = rng.normal(0, 2, 8)
            got = polar.scl_decode(llr, spec, 16)[0].decisions
            assert np.array_equal(got, oracle.map_decode(spec, llr))
        return "exhausted list equals MAP"

    checks.append(_check("sc_vs_posteriors", sc_llrs))
    checks.append(_check("step1_vs_marginal", step1))
    checks.append(_check("scl_vs_map", scl_map))
    return checks


def _suite_ratematch():
    checks = []

    def plans():
        p = make_plan(8, 6, "PUNCTURE")
        assert p.affected == (0, 1), p.affected
        p = make_plan(4, 3, "SHORTEN")
        assert p.affected == (3,) and p.forced_frozen_u == (3,)
        p = make_plan(4, 6, "REPEAT")
        x = np.arange(4)
        assert np.array_equal(apply_plan(p, x), [0, 1, 2, 3, 0, 1])
        return "plan shapes match the rules"

    def shorten_zero():
        rng = np.random.default_rng(4)
        for n in (4, 8, 16):
            for m in range(n // 2, n):
                plan = make_plan(n, m, "SHORTEN")
                for _ in range(20):
                    u = rng.integers(0, 2, n).astype(np.uint8)
                    u[list(plan.forced_frozen_u)] = 0
                    x = polar.encode(u)
                    assert np.all(x[list(plan.affected)] == 0), (n, m)
        return "shortened coded bits are structurally zero"

    def soft_inverse():
        rng = np.random.default_rng(5)
        for n, m, mode in ((8, 6, "PUNCTURE"), (8, 5, "SHORTEN"), (8, 12, "REPEAT"), (8, 8, "NONE")):
            plan = make_plan(n, m, mode)
            counts = np.zeros(n)
            for j in range(n):
                onehot = np.zeros(m)
                sent = apply_plan(plan, np.arange(n))
                for k in range(m):
                    if sent[k] == j:
                        onehot[k] = 1.0
                counts[j] = de_rate_match(plan, onehot)[j]
            want = np.zeros(n)
            sent = apply_plan(plan, np.arange(n))
            for j in range(n):
                want[j] = np.sum(sent == j)
            assert np.array_equal(counts, want), mode
        return "each transmitted copy contributes exactly one LLR"

    checks.append(_check("plan_rules", plans))
    checks.append(_check("shorten_zero_guarantee", shorten_zero))
    checks.append(_check("soft_inverse_counts", soft_inverse))
    return checks


def _suite_arum_equivalence():
    checks = []

    def equivalence():
        import warnings

        n_half, k = 16, 10
        cfgs = [TransmissionConfig(n_half, n_half, "NONE", 0.0)] * 2
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            plan = SessionPlan(k, "FL", cfgs)
        n2 = 2 * n_half
        a1, a2 = plan.active.sets

        def conv_pos(g):
            b, i = g // plan.n_max, g % plan.n_max
            return i if b == 1 else n_half + i

        spec = polar.PolarSpec.from_sets(
            n2, [conv_pos(g) for g in a2], [conv_pos(g) for g in sorted(a1 - a2)]
        )
        copy_of = {conv_pos(o): conv_pos(nw) for o, nw in plan.active.relocations[1]}
        sigma2 = chansim.ChannelParams.from_es_n0_db(0.0).sigma2
        for f in range(100):
            rng = chansim.FrameRng(9, f)
            data = rng.bits(k)
            tx = ArumTransmitter(data, plan)
            x1 = tx.tx_step()
            x2 = tx.tx_step()
            l1 = chansim.llr(chansim.transmit(chansim.modulate(x1), sigma2, rng), sigma2)
            l2 = chansim.llr(chansim.transmit(chansim.modulate(x2), sigma2, rng), sigma2)
            rx = ArumReceiver(plan)
            rx.ingest(l1)
            rx.ingest(l2)
            res = rx.joint_decode(1, crc=None)
            l128 = np.empty(n2)
            l128[0::2] = l2
            l128[1::2] = l1
            pass1 = polar.sc_decode(l128, spec)
            vals = np.zeros(n2, dtype=np.uint8)
            for dup, cp in copy_of.items():
                vals[dup] = pass1[cp]
            u_conv = polar.sc_decode(l128, spec, known_values=vals)
            conv_data = np.zeros(k, dtype=np.uint8)
            for g in a2:
                conv_data[plan.bit_of[g]] = u_conv[conv_pos(g)]
            assert np.array_equal(res.data, conv_data), f"frame {f}"
        return "joint decode == conventional 2N SC on 100 noisy frames"

    checks.append(_check("two_block_equivalence", equivalence))
    return checks


VERIFY_SUITES = {
    "kernels": _suite_kernels,
    "oracle": _suite_oracle,
    "ratematch": _suite_ratematch,
    "arum-equivalence": _suite_arum_equivalence,
}


def verify(suites=None) -> dict:
    """Run the named invariant suites; report is JSON-compatible."""
    names = list(VERIFY_SUITES) if not suites else list(suites)
    report = {"suites": {}, "passed": True}
    for name in names:
        if name not in VERIFY_SUITES:
            raise ConfigError(f"unknown verify suite {name!r}")
        checks = VERIFY_SUITES[name]()
        ok = all(c["passed"] for c in checks)
        report["suites"][name] = {"passed": ok, "checks": checks}
        report["passed"] = report["passed"] and ok
    return report


# ---------------------------------------------------------------------------
# named presets (desk-scale analogs of the two-transmission and
# four-transmission studies)

PRESETS: dict[str, ExperimentConfig] = {}


def _register_presets():
    # desk-scale two-transmission study: K=108 payload (92 info + 16 CRC),
    # 128 then shortened 256->160, against the directly constructed (288,108)
    # punctured code; the grid brackets both 1e-2 crossings
    PRESETS["fig4_two_tx"] = ExperimentConfig(
        payload_k=108,
        kernel="FL",
        list_size=8,
        transmissions=[
            TransmissionConfig(128, 128, "NONE", None),
            TransmissionConfig(256, 160, "SHORTEN", None),
        ],
        baseline=TransmissionConfig(512, 288, "PUNCTURE", None),
        snr_start_db=-3.0,
        snr_stop_db=-2.5,
        snr_step_db=0.5,
        frame_budget=60_000,
        error_limit=120,
        seed=20240801,
    )
    PRESETS["fig4_two_tx_if"] = replace(PRESETS["fig4_two_tx"], kernel="IF")
    # four equal transmissions against the directly constructed (512,108)
    PRESETS["fig5_four_tx"] = ExperimentConfig(
        payload_k=108,
        kernel="FL",
        list_size=8,
        transmissions=[TransmissionConfig(128, 128, "NONE", None)] * 4,
        baseline=TransmissionConfig(512, 512, "NONE", None),
        snr_start_db=-6.0,
        snr_stop_db=-5.5,
        snr_step_db=0.5,
        frame_budget=60_000,
        error_limit=120,
        seed=20240802,
    )


_register_presets()


def preset(name: str) -> ExperimentConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}") from None
