"""Monte Carlo orchestration: batching, RNG substreams, statistics, artifacts.

Trials are split into fixed-size batches. Batch ``i`` draws from an independent
Philox substream derived from (seed, i), and partial results are merged in batch
order, so outputs are bit-identical for any thread count or parallel schedule.
Output files embed a config hash so downstream plotting can refuse to mix series
produced under different settings.
"""

from __future__ import annotations

import csv
import hashlib
import io
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from tncodes.channels import ChannelModel, parse_channel, sample_errors
from tncodes.circuits import build_bmera, build_polar, apply_circuit
from tncodes.decoder import block_outcomes, decode_batch
from tncodes.erasure import decode_erasure_batch
from tncodes.polarization import ChannelStats, FrozenMap, wilson_interval

BATCH_SIZE = 1024

BER_COLUMNS = (
    "n",
    "k",
    "channel",
    "decoder",
    "trials",
    "block_errors",
    "degenerate_only_events",
    "ber",
    "wilson95_low",
    "wilson95_high",
    "wall_seconds",
)


@dataclass(frozen=True)
class ExperimentConfig:
    family: str
    L: int
    channel: str
    decoder: str = "standard"
    trials: int = 1000
    seed: int = 0
    threads: int = 1
    k: int | None = None

    @property
    def n(self) -> int:
        return 2**self.L


@dataclass(frozen=True)
class BerRecord:
    n: int
    k: int
    channel: str
    decoder: str
    trials: int
    block_errors: int
    degenerate_only_events: int
    ber: float
    wilson95_low: float
    wilson95_high: float
    wall_seconds: float

    def csv_row(self) -> list[str]:
        return [
            str(self.n),
            str(self.k),
            self.channel,
            self.decoder,
            str(self.trials),
            str(self.block_errors),
            str(self.degenerate_only_events),
            f"{self.ber:.9g}",
            f"{self.wilson95_low:.9g}",
            f"{self.wilson95_high:.9g}",
            f"{self.wall_seconds:.3f}",
        ]


def config_hash(cfg: ExperimentConfig) -> str:
    """Short stable digest of everything that determines the output numbers."""
    payload = "\n".join(
        f"{key}={getattr(cfg, key)}"
        for key in ("family", "L", "channel", "decoder", "trials", "seed", "k")
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


def substream(seed: int, index: int) -> np.random.Generator:
    """Independent, reproducible RNG stream for one batch."""
    return np.random.Generator(np.random.Philox(key=seed).jumped(index))


def _batches(trials: int) -> list[tuple[int, int]]:
    out = []
    done = 0
    while done < trials:
        size = min(BATCH_SIZE, trials - done)
        out.append((len(out), size))
        done += size
    return out


def _run_batches(cfg: ExperimentConfig, worker) -> list:
    """Run worker(index, size) over all batches; results in batch order."""
    batches = _batches(cfg.trials)
    if cfg.threads <= 1:
        return [worker(i, size) for i, size in batches]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        futures = [pool.submit(worker, i, size) for i, size in batches]
        return [f.result() for f in futures]


def _decode_trials(
    cfg: ExperimentConfig,
    channel: ChannelModel,
    index: int,
    size: int,
    roles: tuple[str, ...] | None,
    genie: bool,
):
    """Sample one batch, decode it, and return (result, u_x, u_z)."""
    rng = substream(cfg.seed, index)
    build = build_polar if cfg.family == "polar" else build_bmera
    circuit = build(cfg.L)
    ex, ez, erased = sample_errors(channel, cfg.n, size, rng)
    u_x, u_z = apply_circuit(ex, ez, circuit, "decode")
    if channel.kind == "erasure":
        res = decode_erasure_batch(
            cfg.n, cfg.family, erased, u_x, u_z, cfg.decoder, roles, genie
        )
    else:
        res = decode_batch(
            cfg.n, cfg.family, channel.prior(), u_x, u_z, cfg.decoder, roles, genie
        )
    return res, u_x, u_z


def run_polarize(cfg: ExperimentConfig) -> ChannelStats:
    """Genie per-channel decision-error rates by Monte Carlo."""
    channel = parse_channel(cfg.channel)

    def worker(index: int, size: int):
        res, _, _ = _decode_trials(cfg, channel, index, size, None, genie=True)
        return res.err_x.sum(axis=0), res.err_z.sum(axis=0)

    parts = _run_batches(cfg, worker)
    sum_x = np.zeros(cfg.n)
    sum_z = np.zeros(cfg.n)
    for px, pz in parts:  # fixed merge order: bit-reproducible float sums
        sum_x += px
        sum_z += pz
    return ChannelStats(
        cfg.n,
        sum_x / cfg.trials,
        sum_z / cfg.trials,
        cfg.trials,
        channel=cfg.channel,
        family=cfg.family,
        decoder=cfg.decoder,
    )


def run_simulate(cfg: ExperimentConfig, fmap: FrozenMap) -> BerRecord:
    """Honest decoding against a frozen map; one BER record."""
    if fmap.n != cfg.n:
        raise ValueError("frozen map size does not match configured L")
    channel = parse_channel(cfg.channel)
    t0 = time.perf_counter()

    def worker(index: int, size: int):
        res, u_x, u_z = _decode_trials(cfg, channel, index, size, fmap.roles, False)
        block, degen = block_outcomes(res, u_x, u_z, fmap.roles)
        failed = getattr(res, "failed", None)
        if failed is not None:
            degen = degen & ~failed
            block = block | failed
        return int(block.sum()), int(degen.sum())

    parts = _run_batches(cfg, worker)
    blocks = sum(p[0] for p in parts)
    degens = sum(p[1] for p in parts)
    low, high = wilson_interval(blocks, cfg.trials)
    return BerRecord(
        cfg.n,
        fmap.k,
        cfg.channel,
        cfg.decoder,
        cfg.trials,
        blocks,
        degens,
        blocks / cfg.trials,
        low,
        high,
        time.perf_counter() - t0,
    )


def ber_csv(records: list[BerRecord], comments: list[str] | None = None) -> str:
    buf = io.StringIO()
    for line in comments or []:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BER_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def read_ber_csv(text: str) -> list[dict]:
    rows = [
        r
        for r in csv.reader(io.StringIO(text))
        if r and not r[0].lstrip().startswith("#")
    ]
    if tuple(rows[0]) != BER_COLUMNS:
        raise ValueError("not a block-error-rate CSV")
    return [dict(zip(BER_COLUMNS, r)) for r in rows[1:]]


def run_bench(
    family: str, decoder: str, Ls: list[int], trials: int = 20, seed: int = 0
) -> list[tuple[int, float]]:
    """Mean single-trial decode seconds per L (trials decoded in one batch)."""
    out = []
    for L in Ls:
        cfg = ExperimentConfig(family, L, "depol:0.05", decoder, trials, seed)
        channel = parse_channel(cfg.channel)
        t0 = time.perf_counter()
        _decode_trials(cfg, channel, 0, trials, None, genie=False)
        out.append((L, (time.perf_counter() - t0) / trials))
    return out
