"""Cached experiment artifacts (genie stats, frozen maps, honest BER curves).

Each helper loads its artifact from ``results_dir`` when present and otherwise
runs the Monte Carlo harness and writes the file, so expensive runs happen at
most once.  File formats are the frozen CSV/JSON interfaces from
:mod:`tncodes.polarization` and :mod:`tncodes.harness`.
"""

from __future__ import annotations

import os
from pathlib import Path

from tncodes.harness import (
    BerRecord,
    ExperimentConfig,
    ber_csv,
    config_hash,
    read_ber_csv,
    run_polarize,
    run_simulate,
)
from tncodes.polarization import ChannelStats, FrozenMap, select_channels

DEFAULT_RESULTS = Path(__file__).resolve().parents[2] / "results"


def _channel_tag(channel: str) -> str:
    return channel.replace(":", "-").replace(",", "_")


def stats_path(results_dir: Path, cfg: ExperimentConfig) -> Path:
    tag = _channel_tag(cfg.channel)
    return results_dir / f"genie_{cfg.family}_{cfg.decoder}_L{cfg.L}_{tag}.csv"


def map_path(results_dir: Path, cfg: ExperimentConfig, k: int) -> Path:
    tag = _channel_tag(cfg.channel)
    return results_dir / f"map_{cfg.family}_{cfg.decoder}_L{cfg.L}_{tag}_k{k}.json"


def ber_path(results_dir: Path, family: str, decoder: str, L: int) -> Path:
    return results_dir / f"ber_{family}_{decoder}_L{L}.csv"


def ensure_genie_stats(
    cfg: ExperimentConfig, results_dir: Path = DEFAULT_RESULTS
) -> ChannelStats:
    """Per-wire genie decision-error rates for ``cfg``, cached as CSV."""
    path = stats_path(results_dir, cfg)
    if path.exists():
        return ChannelStats.from_csv(
            path.read_text(),
            channel=cfg.channel,
            family=cfg.family,
            decoder=cfg.decoder,
        )
    stats = run_polarize(cfg)
    results_dir.mkdir(parents=True, exist_ok=True)
    comments = [
        f"config_hash={config_hash(cfg)}",
        f"family={cfg.family} decoder={cfg.decoder} channel={cfg.channel} "
        f"trials={cfg.trials} seed={cfg.seed}",
    ]
    _atomic_write(path, stats.to_csv(comments))
    return stats


def ensure_frozen_map(
    cfg: ExperimentConfig, k: int, results_dir: Path = DEFAULT_RESULTS
) -> FrozenMap:
    """Frozen map of rate k/n selected from the cached genie stats for ``cfg``."""
    path = map_path(results_dir, cfg, k)
    if path.exists():
        return FrozenMap.from_json(path.read_text())
    fmap = select_channels(ensure_genie_stats(cfg, results_dir), k)
    _atomic_write(path, fmap.to_json() + "\n")
    return fmap


def ensure_ber_point(
    cfg: ExperimentConfig, fmap: FrozenMap, results_dir: Path = DEFAULT_RESULTS
) -> BerRecord:
    """One honest block-error-rate point, appended to the per-code BER CSV."""
    path = ber_path(results_dir, cfg.family, cfg.decoder, cfg.L)
    rows = read_ber_csv(path.read_text()) if path.exists() else []
    for row in rows:
        if row["channel"] == cfg.channel and int(row["trials"]) == cfg.trials:
            return ber_record_from_row(row)
    rec = run_simulate(cfg, fmap)
    results_dir.mkdir(parents=True, exist_ok=True)
    if path.exists():
        with open(path, "a") as fh:
            fh.write(",".join(rec.csv_row()) + "\n")
    else:
        _atomic_write(path, ber_csv([rec], [f"config_hash={config_hash(cfg)}"]))
    return rec


def ber_record_from_row(row: dict) -> BerRecord:
    """Rebuild a typed BerRecord from a read_ber_csv row of strings."""
    return BerRecord(
        n=int(row["n"]),
        k=int(row["k"]),
        channel=row["channel"],
        decoder=row["decoder"],
        trials=int(row["trials"]),
        block_errors=int(row["block_errors"]),
        degenerate_only_events=int(row["degenerate_only_events"]),
        ber=float(row["ber"]),
        wilson95_low=float(row["wilson95_low"]),
        wilson95_high=float(row["wilson95_high"]),
        wall_seconds=float(row["wall_seconds"]),
    )


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)
