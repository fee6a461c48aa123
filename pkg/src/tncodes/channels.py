"""Single-qubit i.i.d. channel models and their spec strings.

Pauli channels carry a length-4 probability vector over (I, X, Y, Z).
The erasure channel replaces a qubit by a uniformly random Pauli at a *known*
position; sampling therefore returns an erasure mask alongside the Pauli draw.

Spec strings: ``depol:0.0992``, ``xz:0.05,0.05``, ``erasure:0.25``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChannelModel:
    kind: str  # 'pauli' or 'erasure'
    p4: tuple[float, float, float, float]  # per-qubit label probabilities
    erasure_rate: float = 0.0
    spec: str = ""

    def prior(self) -> np.ndarray:
        return np.asarray(self.p4, dtype=np.float64)


def depolarizing(p: float) -> ChannelModel:
    """Depolarizing channel: each Pauli with probability p/4, identity 1 - 3p/4.

    Under this convention p = 1 is the completely depolarizing channel and the
    coherent information at p = 0.0992 is exactly 1/2.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("depolarizing rate must be in [0, 1]")
    q = p / 4.0
    return ChannelModel("pauli", (1.0 - 3.0 * q, q, q, q), spec=f"depol:{p:g}")


def independent_xz(px: float, pz: float) -> ChannelModel:
    if not (0.0 <= px <= 1.0 and 0.0 <= pz <= 1.0):
        raise ValueError("flip rates must be in [0, 1]")
    p4 = ((1 - px) * (1 - pz), px * (1 - pz), px * pz, (1 - px) * pz)
    return ChannelModel("pauli", p4, spec=f"xz:{px:g},{pz:g}")


def erasure(eps: float) -> ChannelModel:
    if not 0.0 <= eps <= 1.0:
        raise ValueError("erasure rate must be in [0, 1]")
    return ChannelModel("erasure", (0.25, 0.25, 0.25, 0.25), erasure_rate=eps, spec=f"erasure:{eps:g}")


def parse_channel(spec: str) -> ChannelModel:
    """Parse a channel spec string (see module docstring)."""
    try:
        name, _, args = spec.partition(":")
        if name == "depol":
            return depolarizing(float(args))
        if name == "erasure":
            return erasure(float(args))
        if name == "xz":
            px, pz = (float(a) for a in args.split(","))
            return independent_xz(px, pz)
    except ValueError as exc:
        raise ValueError(f"bad channel spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown channel kind in spec {spec!r}")


def sample_errors(
    channel: ChannelModel, n: int, batch: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sample physical errors: (x_bits, z_bits, erased) with shape (batch, n) each.

    For Pauli channels ``erased`` is all-zero. For the erasure channel each erased
    position holds a uniformly random Pauli; non-erased positions are identity.
    """
    if channel.kind == "erasure":
        erased = (rng.random((batch, n)) < channel.erasure_rate).astype(np.uint8)
        x = (rng.integers(0, 2, size=(batch, n), dtype=np.int64).astype(np.uint8)) & erased
        z = (rng.integers(0, 2, size=(batch, n), dtype=np.int64).astype(np.uint8)) & erased
        return x, z, erased
    p = np.asarray(channel.p4)
    u = rng.random((batch, n))
    labels = np.searchsorted(np.cumsum(p), u, side="right").clip(0, 3)
    x = np.isin(labels, (1, 2)).astype(np.uint8)
    z = np.isin(labels, (2, 3)).astype(np.uint8)
    return x, z, np.zeros((batch, n), dtype=np.uint8)
