"""Channel selection, analytic bounds, and erasure density evolution.

Per-wire genie statistics (``ChannelStats``) drive everything here: the frozen-map
construction ranks wires by their worst quadrature; the union bound sums the
per-decision error rates that can break a block; the degenerate bound sums the
best-quadrature rates. For the polar family on the erasure channel the statistics
can be computed exactly by the classical density-evolution recursion
worse(z) = 2z - z^2, better(z) = z^2.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

ROLES = ("data", "freeze0", "freezeplus")

# Frozen-wire orientation. A |0>-frozen wire's syndrome reveals the x component
# of the de-encoded error and leaves z to be decided (z errors on it are
# degenerate); |+> is the mirror image. With REVEAL_WORSE_QUADRATURE the syndrome
# is assigned to the worse quadrature, so the still-decided (degenerate)
# quadrature is the better one — this is what makes the union and degenerate
# bounds shrink with code size. Set False to protect the better quadrature
# instead.
REVEAL_WORSE_QUADRATURE = True


@dataclass(frozen=True)
class ChannelStats:
    """Per-wire genie decision-error rates; trials == 0 marks exact (DE) stats."""

    n: int
    err_x: np.ndarray  # (n,) rate in [0,1]
    err_z: np.ndarray
    trials: int
    channel: str = ""
    family: str = ""
    decoder: str = ""

    def worst(self) -> np.ndarray:
        return np.maximum(self.err_x, self.err_z)

    def to_csv(self, comments: list[str] | None = None) -> str:
        buf = io.StringIO()
        for line in comments or []:
            buf.write(f"# {line}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["wire", "err_x", "err_z", "trials"])
        for w in range(self.n):
            writer.writerow(
                [w, f"{self.err_x[w]:.9g}", f"{self.err_z[w]:.9g}", self.trials]
            )
        return buf.getvalue()

    @staticmethod
    def from_csv(text: str, **meta) -> "ChannelStats":
        rows = [
            r
            for r in csv.reader(io.StringIO(text))
            if r and not r[0].lstrip().startswith("#")
        ]
        if rows[0] != ["wire", "err_x", "err_z", "trials"]:
            raise ValueError("not a channel-stats CSV")
        body = sorted((int(r[0]), float(r[1]), float(r[2]), int(r[3])) for r in rows[1:])
        err_x = np.array([r[1] for r in body])
        err_z = np.array([r[2] for r in body])
        return ChannelStats(len(body), err_x, err_z, body[0][3] if body else 0, **meta)


@dataclass(frozen=True)
class FrozenMap:
    """Role per wire: 'data', 'freeze0' (|0>, x syndrome) or 'freezeplus' (|+>)."""

    n: int
    k: int
    roles: tuple[str, ...]
    channel: str = ""
    family: str = ""
    decoder: str = ""

    def __post_init__(self) -> None:
        if len(self.roles) != self.n or any(r not in ROLES for r in self.roles):
            raise ValueError("bad role vector")
        if sum(r == "data" for r in self.roles) != self.k:
            raise ValueError("role vector does not contain exactly k data wires")

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "k": self.k,
                "channel": self.channel,
                "family": self.family,
                "decoder": self.decoder,
                "roles": list(self.roles),
            },
            indent=2,
        )

    @staticmethod
    def from_json(text: str) -> "FrozenMap":
        obj = json.loads(text)
        return FrozenMap(
            obj["n"],
            obj["k"],
            tuple(obj["roles"]),
            obj.get("channel", ""),
            obj.get("family", ""),
            obj.get("decoder", ""),
        )


def select_channels(stats: ChannelStats, k: int) -> FrozenMap:
    """Freeze all but the k wires with the lowest worst-quadrature error rate.

    Each frozen wire's syndrome quadrature follows REVEAL_WORSE_QUADRATURE;
    freeze0 measures x, freezeplus measures z.
    """
    if not 0 <= k <= stats.n:
        raise ValueError("k out of range")
    order = np.lexsort((np.arange(stats.n), stats.worst()))
    data = set(order[:k].tolist())

    def frozen_role(w: int) -> str:
        x_worse = stats.err_x[w] >= stats.err_z[w]
        return ("freeze0" if x_worse else "freezeplus") if REVEAL_WORSE_QUADRATURE else (
            "freezeplus" if x_worse else "freeze0"
        )

    roles = tuple("data" if w in data else frozen_role(w) for w in range(stats.n))
    return FrozenMap(stats.n, k, roles, stats.channel, stats.family, stats.decoder)


def union_bound(stats: ChannelStats, fmap: FrozenMap) -> tuple[float, float]:
    """(raw, clamped) union bound on the block error rate.

    Sums both quadrature rates on data wires plus the unprotected quadrature rate
    on each frozen wire.
    """
    if stats.n != fmap.n:
        raise ValueError("stats/map size mismatch")
    raw = 0.0
    for w, role in enumerate(fmap.roles):
        if role == "data":
            raw += float(stats.err_x[w] + stats.err_z[w])
        elif role == "freeze0":
            raw += float(stats.err_z[w])
        else:
            raw += float(stats.err_x[w])
    return raw, min(raw, 1.0)


def degenerate_bound(stats: ChannelStats) -> float:
    """Sum of best-quadrature rates: bound on degenerate-only decoding errors."""
    return float(np.minimum(stats.err_x, stats.err_z).sum())


def bec_density_evolution(eps, L: int) -> tuple[list, list]:
    """Exact per-wire erasure probabilities of the de-encoded bits (polar only).

    Returns (erase_x, erase_z) in wire order; entries are Fractions when ``eps``
    is a Fraction. erase_x follows the polarization recursion along the x decode
    sweep (wire 0 decoded first, so the worst channel sits at wire 0); erase_z is
    its reflection erase_z[i] = erase_x[n-1-i]. The genie decision-error rate of a
    wire is half its erasure probability.
    """
    if isinstance(eps, Fraction):
        if not 0 <= eps <= 1:
            raise ValueError("eps out of range")
    elif not 0.0 <= eps <= 1.0:
        raise ValueError("eps out of range")
    rates = [eps]
    for _ in range(L):
        nxt = []
        for z in rates:
            nxt.append(2 * z - z * z)  # combined first-decoded bit: worse
            nxt.append(z * z)  # second bit, combined bit known: better
        rates = nxt
    return rates, rates[::-1]


def bec_channel_stats(eps: float, L: int) -> ChannelStats:
    """Density-evolution genie statistics as ChannelStats (trials = 0 = exact)."""
    ex, ez = bec_density_evolution(float(eps), L)
    return ChannelStats(
        2**L,
        np.asarray(ex) / 2.0,
        np.asarray(ez) / 2.0,
        0,
        channel=f"erasure:{eps:g}",
        family="polar",
        decoder="erasure-exact",
    )


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson 95% score interval for a binomial rate; valid at zero successes."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)
