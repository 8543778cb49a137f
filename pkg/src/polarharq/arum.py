"""HARQ engine: masked retransmissions with active-bit relocation.

Each transmission encodes part of the payload into its own polar block,
pads it to the session working length, XORs on a mask derived from earlier
blocks through the session kernel, and rate-matches the result. The receiver
combines all received blocks per coded position, then list-decodes block by
block from the latest to the first, passing the surviving paths down.

Transmitter and receiver are separate values sharing a deterministic
``SessionPlan``; the plan derives rate-match plans, reliabilities, active
sets, relocations, and bit placements for every transmission up front, so
both ends agree without any side channel beyond the configuration.

Alignment across blocks is by coded position 0..n_max-1; block b's positions
map to global indices b * n_max + i.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import polar
from ._kernels.llrmath import add_llrs, boxplus, softplus
from .chansim import llr_mean_from_es_n0_db
from .construct import (
    ActiveSets,
    BlockChannel,
    MC_DEFAULT_SAMPLES,
    reliability_arum,
    select_active,
)
from .gf2lin import KernelKind, as_bits, kernel_matrix
from .polar import CrcConfig, DecodePath, PolarSpec, select_by_crc
from .ratematch import RateMatchMode, RateMatchPlan, apply_plan, de_rate_match, make_plan


@dataclass(frozen=True)
class TransmissionConfig:
    """Shape of a single transmission: mother length, sent length, rate-match
    mode, and the SNR the construction designs for."""

    n_mother: int
    m_tx: int
    mode: RateMatchMode | str
    design_es_n0_db: float

    def __post_init__(self):
        object.__setattr__(self, "mode", RateMatchMode(self.mode))

    def to_dict(self) -> dict:
        return {
            "n_mother": self.n_mother,
            "m_tx": self.m_tx,
            "mode": self.mode.value,
            "design_es_n0_db": self.design_es_n0_db,
        }


@dataclass(frozen=True)
class LlrBlock:
    """De-rate-matched soft values for one received block, padded to the
    session working length; ``shorten_mask`` lists coded positions whose
    unmasked bit is known zero from shortening."""

    values: np.ndarray
    n_mother: int
    shorten_mask: frozenset[int]

    def known_zero(self) -> np.ndarray:
        mask = np.zeros(len(self.values), dtype=bool)
        mask[self.n_mother :] = True
        if self.shorten_mask:
            mask[list(self.shorten_mask)] = True
        return mask


def generate_mask(z_history: list[np.ndarray], kernel: np.ndarray) -> np.ndarray:
    """Mask for transmission t = len(z_history) + 1: the GF(2) inner product
    of the stored block vectors with the first t-1 entries of kernel column t."""
    t = len(z_history) + 1
    kernel = as_bits(kernel)
    if kernel.shape[0] < t or kernel.shape[1] < t:
        raise ValueError("kernel is smaller than the transmission index")
    if t < 2:
        raise ValueError("masks exist from the second transmission on")
    col = kernel[: t - 1, t - 1]
    out = np.zeros_like(z_history[0])
    for k in range(t - 1):
        if col[k]:
            out ^= z_history[k]
    return out


def _design_block(cfg: TransmissionConfig, plan: RateMatchPlan, n_max: int) -> BlockChannel:
    mean = llr_mean_from_es_n0_db(cfg.design_es_n0_db)
    vals = de_rate_match(plan, np.full(plan.m_tx, mean))
    means = np.zeros(n_max)
    means[: plan.n_mother] = vals
    kz = np.zeros(n_max, dtype=bool)
    kz[plan.n_mother :] = True
    if plan.mode is RateMatchMode.SHORTEN:
        kz[list(plan.affected)] = True
    return BlockChannel(means=means, known_zero=kz, n_mother=plan.n_mother)


class SessionPlan:
    """Deterministic per-transmission construction shared by both ends."""

    def __init__(
        self,
        payload_len: int,
        kernel: KernelKind | str,
        configs: list[TransmissionConfig],
        mc_samples: int = MC_DEFAULT_SAMPLES,
        mc_seed: int = 0,
    ):
        if not configs:
            raise ValueError("a session needs at least one transmission")
        self.k = int(payload_len)
        self.kernel_kind = KernelKind(kernel)
        self.configs = list(configs)
        self.t_max = len(configs)
        self.n_max = max(c.n_mother for c in configs)
        self.kernel = kernel_matrix(self.kernel_kind, self.t_max)
        self.mc_samples = mc_samples
        self.mc_seed = mc_seed
        self.plans = [make_plan(c.n_mother, c.m_tx, c.mode) for c in configs]
        self.active = ActiveSets(n_max=self.n_max, k=self.k)
        self.k_per_block: list[int] = []
        self.bit_of: dict[int, int] = {}
        self.reliability_history: list[list[np.ndarray]] = []
        self._layout_cache: dict = {}
        self._build()

    def global_index(self, block: int, pos: int) -> int:
        return block * self.n_max + pos

    def _build(self) -> None:
        design_blocks: list[BlockChannel] = []
        prev: frozenset[int] | None = None
        for t, (cfg, rm) in enumerate(zip(self.configs, self.plans)):
            design_blocks.append(_design_block(cfg, rm, self.n_max))
            rel = reliability_arum(
                self.kernel[: t + 1, : t + 1],
                design_blocks,
                mc_samples=self.mc_samples,
                mc_seed=self.mc_seed,
            )
            self.reliability_history.append(rel)
            reliab = {
                self.global_index(b, i): float(rel[b][i])
                for b in range(t + 1)
                for i in range(self.configs[b].n_mother)
            }
            excluded = set(rm.forced_frozen_u)
            new_candidates = [
                self.global_index(t, i) for i in range(cfg.n_mother) if i not in excluded
            ]
            sel = select_active(prev, reliab, self.k, new_candidates)
            if sel.warning:
                warnings.warn(
                    f"transmission {t + 1} carries no active bits", stacklevel=2
                )
                if self.kernel_kind is KernelKind.IF:
                    raise ValueError(
                        "an unmasked retransmission with no active bits conveys nothing"
                    )
            if t == 0:
                for bit, g in enumerate(sorted(sel.active)):
                    self.bit_of[g] = bit
            else:
                for old, new in sel.relocation:
                    self.bit_of[new] = self.bit_of[old]
            self.active.sets.append(sel.active)
            self.active.relocations.append(sel.relocation)
            self.k_per_block.append(sel.k_new)
            prev = sel.active

    def encode_spec(self, block: int) -> PolarSpec:
        """Roles at encode time: the block's share of its transmission's
        active set; everything else frozen."""
        cfg = self.configs[block]
        active = [
            g % self.n_max
            for g in self.active.sets[block]
            if g // self.n_max == block
        ]
        return PolarSpec.from_sets(cfg.n_mother, active)

    def decode_spec(self, block: int, t_received: int) -> PolarSpec:
        """Roles when decoding after ``t_received`` transmissions: positions
        relocated away since encode time become KNOWN."""
        return self.decode_layout(block, t_received)[0]

    def decode_layout(self, block: int, t_received: int):
        """(spec, active positions, their payload bit indices, known
        positions, their payload bit indices) for one block at decode time."""
        key = (block, t_received)
        cached = self._layout_cache.get(key)
        if cached is not None:
            return cached
        cfg = self.configs[block]
        final = self.active.sets[t_received - 1]
        roles = np.full(cfg.n_mother, polar.FROZEN, dtype=np.int8)
        act, act_bit, known, known_bit = [], [], [], []
        for g in sorted(self.active.sets[block]):
            if g // self.n_max != block:
                continue
            pos = g % self.n_max
            if g in final:
                roles[pos] = polar.ACTIVE
                act.append(pos)
                act_bit.append(self.bit_of[g])
            else:
                roles[pos] = polar.KNOWN
                known.append(pos)
                known_bit.append(self.bit_of[g])
        layout = (
            PolarSpec(cfg.n_mother, roles),
            np.array(act, dtype=np.int64),
            np.array(act_bit, dtype=np.int64),
            np.array(known, dtype=np.int64),
            np.array(known_bit, dtype=np.int64),
        )
        self._layout_cache[key] = layout
        return layout


class ArumTransmitter:
    """Transmitter-side session state: payload bits and the block history."""

    def __init__(self, data_bits: np.ndarray, plan: SessionPlan):
        data_bits = as_bits(data_bits)
        if len(data_bits) != plan.k:
            raise ValueError("payload length must match the plan")
        self.plan = plan
        self.data = data_bits
        self.z_history: list[np.ndarray] = []

    @property
    def t_sent(self) -> int:
        return len(self.z_history)

    def tx_step(self) -> np.ndarray:
        """Encode, pad, mask, and rate-match the next transmission."""
        plan = self.plan
        t = self.t_sent
        if t >= plan.t_max:
            raise RuntimeError("session exhausted: all transmissions sent")
        cfg = plan.configs[t]
        spec = plan.encode_spec(t)
        u = np.zeros(cfg.n_mother, dtype=np.uint8)
        for pos in spec.active_positions:
            u[pos] = self.data[plan.bit_of[plan.global_index(t, int(pos))]]
        z = np.zeros(plan.n_max, dtype=np.uint8)
        z[: cfg.n_mother] = polar.encode(u)
        x = z if t == 0 else z ^ generate_mask(self.z_history, plan.kernel)
        self.z_history.append(z)
        return apply_plan(plan.plans[t], x[: cfg.n_mother])

    def transcript(self) -> dict:
        """JSON-compatible session dump for debugging and the plots tooling."""
        plan = self.plan
        txs = []
        for t in range(self.t_sent):
            mask_hex = None
            if t > 0:
                mask = generate_mask(self.z_history[:t], plan.kernel)
                mask_hex = np.packbits(mask).tobytes().hex()
            txs.append(
                {
                    "config": plan.configs[t].to_dict(),
                    "rate_match": plan.plans[t].to_dict(),
                    "active": sorted(plan.active.sets[t]),
                    "k_new": plan.k_per_block[t],
                    "relocation": [list(pair) for pair in plan.active.relocations[t]],
                    "mask_hex": mask_hex,
                }
            )
        return {
            "kernel": plan.kernel_kind.value,
            "payload_len": plan.k,
            "n_max": plan.n_max,
            "transmissions": txs,
        }


def step1_combine(
    blocks: list[LlrBlock],
    decoded_z: list[np.ndarray],
    kernel: np.ndarray,
    s: int,
) -> np.ndarray:
    """Per-position LLRs of block ``s``'s unmasked bits given every received
    block, the re-encoded later blocks, and all known-zero structure.

    ``decoded_z`` holds the z-vectors of blocks s+1 .. t-1 (in that order).
    Positions known zero for block s itself (shortening, padding) return +inf.
    Identity and first-xor-latest kernels use closed forms; other kernels do
    the exact marginalization over the unknown earlier blocks (cost 2^s per
    position).
    """
    kernel = as_bits(kernel)
    t = len(blocks)
    if kernel.shape != (t, t):
        raise ValueError("kernel size must match the block count")
    if len(decoded_z) != t - s - 1:
        raise ValueError("need re-encoded vectors for every later block")
    n_max = len(blocks[0].values)
    kz = [b.known_zero() for b in blocks]
    if _kernel_is_identity(kernel):
        out = blocks[s].values.copy()
    elif _kernel_is_first_xor_latest(kernel):
        evidence = blocks[0].values.copy()
        for idx, k in enumerate(range(s + 1, t)):
            flipped = np.where(decoded_z[idx] == 1, -blocks[k].values, blocks[k].values)
            evidence = add_llrs(evidence, flipped)
        if s == 0:
            out = evidence
        else:
            evidence = np.where(kz[0], np.inf, evidence)
            out = boxplus(blocks[s].values, evidence)
    else:
        out = _exact_combine(blocks, decoded_z, kernel, s, kz)
    out = np.where(kz[s], np.inf, out)
    return out


def _kernel_is_identity(kernel: np.ndarray) -> bool:
    return bool(np.array_equal(kernel, np.eye(kernel.shape[0], dtype=np.uint8)))


def _kernel_is_first_xor_latest(kernel: np.ndarray) -> bool:
    t = kernel.shape[0]
    expect = np.eye(t, dtype=np.uint8)
    expect[0, :] = 1
    return bool(np.array_equal(kernel, expect))


def _exact_combine(blocks, decoded_z, kernel, s, kz) -> np.ndarray:
    """Marginalize the unknown earlier blocks exactly, vectorized over
    positions; assignments violating a known-zero constraint are excluded
    position-wise."""
    t = len(blocks)
    n_max = len(blocks[0].values)
    lp = []  # per block: (logP(x=0), logP(x=1)) arrays
    for b in blocks:
        lp.append((-softplus(-b.values), -softplus(b.values)))
    z_rows = np.zeros((t, n_max), dtype=np.uint8)
    for idx, k in enumerate(range(s + 1, t)):
        z_rows[k] = decoded_z[idx]
    totals = [np.full(n_max, -np.inf), np.full(n_max, -np.inf)]
    for hyp in (0, 1):
        z_rows[s] = hyp
        acc = np.full(n_max, -np.inf)
        for assign in range(1 << s):
            valid = np.ones(n_max, dtype=bool)
            for k in range(s):
                z_rows[k] = (assign >> k) & 1
                if (assign >> k) & 1:
                    valid &= ~kz[k]
            x = (kernel.T.astype(np.int64) @ z_rows.astype(np.int64)) % 2
            ll = np.zeros(n_max)
            for k in range(t):
                ll = ll + np.where(x[k] == 0, lp[k][0], lp[k][1])
            acc = np.logaddexp(acc, np.where(valid, ll, -np.inf))
        totals[hyp] = acc
    with np.errstate(invalid="ignore"):
        out = totals[0] - totals[1]
    out = np.where(np.isneginf(totals[0]) & np.isneginf(totals[1]), 0.0, out)
    out = np.where(np.isnan(out), 0.0, out)
    return out


@dataclass(frozen=True)
class DecodeResult:
    data: np.ndarray
    crc_pass: bool
    metric: float
    diagnostics: list[dict] = field(default_factory=list)


def _step1_paths(blocks, z_later: dict[int, np.ndarray], kernel, s: int, n_paths: int) -> np.ndarray:
    """step1_combine for all paths at once; ``z_later`` maps block index to a
    (P, n_max) array of per-path re-encoded vectors."""
    kernel = as_bits(kernel)
    t = len(blocks)
    n_max = len(blocks[0].values)
    kz = [b.known_zero() for b in blocks]
    if _kernel_is_identity(kernel):
        out = np.broadcast_to(blocks[s].values, (n_paths, n_max)).copy()
    elif _kernel_is_first_xor_latest(kernel):
        evidence = np.broadcast_to(blocks[0].values, (n_paths, n_max)).copy()
        for k in range(s + 1, t):
            flipped = np.where(z_later[k] == 1, -blocks[k].values, blocks[k].values)
            evidence = add_llrs(evidence, flipped)
        if s == 0:
            out = evidence
        else:
            evidence = np.where(kz[0], np.inf, evidence)
            out = boxplus(np.broadcast_to(blocks[s].values, evidence.shape), evidence)
    else:
        out = np.stack(
            [
                step1_combine(blocks, [z_later[k][p] for k in range(s + 1, t)], kernel, s)
                for p in range(n_paths)
            ]
        )
        return out
    out = np.where(kz[s], np.inf, out)
    return out


class ArumReceiver:
    """Receiver-side session state: ingested soft blocks and joint decoding."""

    def __init__(self, plan: SessionPlan):
        self.plan = plan
        self.blocks: list[LlrBlock] = []

    @property
    def t_received(self) -> int:
        return len(self.blocks)

    def ingest(self, received_llr: np.ndarray) -> None:
        """Store the de-rate-matched soft values of the next transmission."""
        plan = self.plan
        t = self.t_received
        if t >= plan.t_max:
            raise RuntimeError("session exhausted: no further transmission expected")
        rm = plan.plans[t]
        received_llr = np.asarray(received_llr, dtype=np.float64)
        if len(received_llr) != rm.m_tx:
            raise ValueError(
                f"transmission {t + 1} expects {rm.m_tx} values, got {len(received_llr)}"
            )
        vals = np.zeros(plan.n_max)
        vals[: rm.n_mother] = de_rate_match(rm, received_llr)
        shorten = frozenset(rm.affected) if rm.mode is RateMatchMode.SHORTEN else frozenset()
        self.blocks.append(LlrBlock(values=vals, n_mother=rm.n_mother, shorten_mask=shorten))

    def joint_decode(
        self, list_size: int, crc: CrcConfig | None = CrcConfig()
    ) -> DecodeResult:
        """Inter-block list decoding from the latest block to the first.

        Survivors of each block seed the next; relocated-away positions are
        treated as known bits valued per path. The payload estimate reads each
        bit from its latest copy, and the CRC picks among the final list.
        """
        plan = self.plan
        t = self.t_received
        if t < 1:
            raise RuntimeError("nothing received yet")
        kernel = plan.kernel[:t, :t]
        n_paths = 1
        metrics = np.zeros(1)
        data = np.zeros((1, plan.k), dtype=np.uint8)
        z_later: dict[int, np.ndarray] = {}
        diagnostics: list[dict] = []
        for b in range(t - 1, -1, -1):
            cfg = plan.configs[b]
            spec, act_pos, act_bit, known_pos, known_bit = plan.decode_layout(b, t)
            chan = _step1_paths(self.blocks, z_later, kernel, b, n_paths)[:, : cfg.n_mother]
            known = np.zeros((n_paths, cfg.n_mother), dtype=np.uint8)
            if len(known_pos):
                known[:, known_pos] = data[:, known_bit]
            seeds = [
                DecodePath(decisions=np.empty(0, dtype=np.uint8), metric=float(m))
                for m in metrics
            ]
            results = polar.scl_decode(
                chan, spec, list_size, initial_paths=seeds, known_values=known
            )
            parents = np.array([r.parent for r in results])
            decisions = np.stack([r.decisions for r in results])
            metrics = np.array([r.metric for r in results])
            data = data[parents]
            if len(act_pos):
                data[:, act_bit] = decisions[:, act_pos]
            z_new = np.zeros((len(results), plan.n_max), dtype=np.uint8)
            for i in range(len(results)):
                z_new[i, : cfg.n_mother] = polar.encode(decisions[i])
            z_later = {k: v[parents] for k, v in z_later.items()}
            z_later[b] = z_new
            n_paths = len(results)
            diagnostics.append(
                {
                    "block": b,
                    "active": int(spec.active_count),
                    "known": int(len(known_pos)),
                    "best_metric": float(metrics[0]),
                }
            )
        candidates = [(data[i], float(metrics[i])) for i in range(n_paths)]
        if crc is None:
            bits, metric = candidates[0]
            return DecodeResult(data=bits, crc_pass=False, metric=metric, diagnostics=diagnostics)
        bits, metric, ok = select_by_crc(candidates, crc)
        return DecodeResult(data=bits, crc_pass=ok, metric=metric, diagnostics=diagnostics)

    def genie_block_decisions(
        self, block: int, true_z: list[np.ndarray], true_data: np.ndarray
    ) -> np.ndarray:
        """Decode one block with true later z-vectors and true known-bit
        values; isolates the block's own error behavior for analysis."""
        plan = self.plan
        t = self.t_received
        spec = plan.decode_spec(block, t)
        combined = step1_combine(
            self.blocks, [true_z[kk] for kk in range(block + 1, t)], plan.kernel[:t, :t], block
        )
        known = np.zeros(plan.configs[block].n_mother, dtype=np.uint8)
        for pos in spec.known_positions:
            g = plan.global_index(block, int(pos))
            known[pos] = true_data[plan.bit_of[g]]
        return polar.sc_decode(combined[: plan.configs[block].n_mother], spec, known_values=known)
