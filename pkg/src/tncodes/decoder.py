"""Successive-cancellation decoders and the exhaustive decision-marginal oracle.

Two decode schedules are provided:

- ``standard``: decide every x quadrature bit in ascending wire order, then every z
  quadrature bit in descending wire order;
- ``symmetric``: alternate single decisions between the ascending x front and the
  descending z front, starting with x.

Decisions are on the *de-encoded* error bits U^{-1} E U. A frozen-wire role map turns
one quadrature of each frozen wire into a syndrome (its true value is measured, not
decided); the complementary quadrature of a frozen wire is still decided but a
mistake there is recorded separately since it does not affect the protected data.

``brute_force_marginal`` recomputes any decision marginal by enumerating all 4^n
physical errors; it shares nothing with the contraction engine apart from the
circuit definition and is the ground truth used in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tncodes.circuits import CodeCircuit, apply_circuit
from tncodes.engine import SweepEngine
from tncodes.pauli import LABEL_OF_BITS, LeafTensor


def schedule(decoder: str, n: int) -> list[tuple[str, int]]:
    """Decision order as (quadrature, wire) pairs."""
    xs = [("x", i) for i in range(n)]
    zs = [("z", i) for i in range(n - 1, -1, -1)]
    if decoder == "standard":
        return xs + zs
    if decoder == "symmetric":
        out = []
        for a, b in zip(xs, zs):
            out.append(a)
            out.append(b)
        return out
    raise ValueError(f"unknown decoder {decoder!r}")


@dataclass(frozen=True)
class DecodeBatchResult:
    """Per-trial decisions and diagnostics for one decoded batch."""

    dec_x: np.ndarray  # (batch, n) decided/syndrome x bits of U^-1 E U
    dec_z: np.ndarray  # (batch, n)
    err_x: np.ndarray  # (batch, n) bool: posterior argmax disagreed with truth
    err_z: np.ndarray
    decided_x: np.ndarray  # (n,) bool: wire was decided (False = syndrome-given)
    decided_z: np.ndarray


def decode_batch(
    n: int,
    family: str,
    priors: np.ndarray,
    u_x: np.ndarray,
    u_z: np.ndarray,
    decoder: str = "standard",
    roles: tuple[str, ...] | None = None,
    genie: bool = False,
) -> DecodeBatchResult:
    """Run one successive-cancellation sweep over a batch of trials.

    ``u_x``/``u_z`` are the true de-encoded bits, shape (batch, n). With
    ``genie=True`` every decision is corrected to the truth after its posterior is
    recorded, so ``err_*`` are per-wire genie error indicators. ``roles`` entries are
    'data', 'freeze0' (x syndrome) or 'freezeplus' (z syndrome); None decides all.
    """
    u = {"x": np.asarray(u_x, dtype=np.uint8), "z": np.asarray(u_z, dtype=np.uint8)}
    batch = u["x"].shape[0]
    eng = SweepEngine(n, family, priors)
    dec = {"x": np.zeros((batch, n), np.uint8), "z": np.zeros((batch, n), np.uint8)}
    err = {"x": np.zeros((batch, n), bool), "z": np.zeros((batch, n), bool)}
    decided = {"x": np.ones(n, bool), "z": np.ones(n, bool)}
    syndrome_quad = {"freeze0": "x", "freezeplus": "z", "data": None}
    # Syndromes are measured before decoding starts, so every decision — in
    # particular each x decision — conditions on all of them from the outset.
    if roles is not None:
        for w, role in enumerate(roles):
            quad = syndrome_quad[role]
            if quad is not None:
                decided[quad][w] = False
                dec[quad][:, w] = u[quad][:, w]
                eng.set_known(w, quad, u[quad][:, w])
    for quad, w in schedule(decoder, n):
        truth = u[quad][:, w]
        if roles is not None and syndrome_quad[roles[w]] == quad:
            continue
        post = eng.posterior(w, quad)
        guess = (post[:, 1] > post[:, 0]).astype(np.uint8)
        err[quad][:, w] = guess != truth
        chosen = truth if genie else guess
        dec[quad][:, w] = chosen
        eng.set_known(w, quad, chosen)
    return DecodeBatchResult(
        dec["x"], dec["z"], err["x"], err["z"], decided["x"], decided["z"]
    )


def block_outcomes(
    res: DecodeBatchResult,
    u_x: np.ndarray,
    u_z: np.ndarray,
    roles: tuple[str, ...],
) -> tuple[np.ndarray, np.ndarray]:
    """(block_error, degenerate_only) boolean vectors for a decoded batch.

    A block error is any wrong decision on a data wire (either quadrature). A
    degenerate-only event has all data decisions right but a wrong decision on the
    unprotected quadrature of some frozen wire.
    """
    roles_arr = np.asarray(roles)
    data = roles_arr == "data"
    mism_x = res.dec_x != u_x
    mism_z = res.dec_z != u_z
    block = (mism_x[:, data] | mism_z[:, data]).any(axis=1)
    unprot = (mism_z[:, roles_arr == "freeze0"]).any(axis=1) | (
        mism_x[:, roles_arr == "freezeplus"]
    ).any(axis=1)
    return block, ~block & unprot


def decision_marginal(
    circuit: CodeCircuit,
    priors: np.ndarray,
    leaves: dict[int, LeafTensor],
    query_wire: int,
    query_quad: str,
) -> tuple[float, float]:
    """Exact posterior (p0, p1) of one de-encoded quadrature bit via the engine.

    ``leaves`` fixes already-decided bits: a 'point' leaf fixes both quadratures,
    'bimodal_x' fixes the x-bit, 'bimodal_z' the z-bit, 'uniform' nothing. The known-x
    set must be a wire prefix and the known-z set a wire suffix (any state reachable
    by the provided schedules); 'prior'-kind leaves are not supported here.
    """
    n = circuit.n
    known: dict[str, dict[int, int]] = {"x": {}, "z": {}}
    for w, leaf in leaves.items():
        if leaf.kind == "uniform":
            continue
        if leaf.kind == "point":
            known["x"][w] = leaf.label in (1, 2)
            known["z"][w] = leaf.label in (2, 3)
        elif leaf.kind == "bimodal_x":
            known["x"][w] = leaf.bit
        elif leaf.kind == "bimodal_z":
            known["z"][w] = leaf.bit
        else:
            raise ValueError(f"unsupported leaf kind {leaf.kind!r} for the sweep engine")
    kx, kz = sorted(known["x"]), sorted(known["z"])
    if kx != list(range(len(kx))):
        raise ValueError("known x bits must form a wire prefix")
    if kz != list(range(n - len(kz), n)):
        raise ValueError("known z bits must form a wire suffix")
    eng = SweepEngine(n, circuit.family, priors)
    for w in kx:
        eng.set_known(w, "x", known["x"][w])
    for w in reversed(kz):
        eng.set_known(w, "z", known["z"][w])
    post = eng.posterior(query_wire, query_quad)
    return float(post[0, 0]), float(post[0, 1])


def brute_force_marginal(
    circuit: CodeCircuit,
    priors: np.ndarray,
    leaves: dict[int, LeafTensor],
    query_wire: int,
    query_quad: str,
) -> tuple[float, float]:
    """Ground-truth decision marginal by enumerating all 4^n physical errors."""
    n = circuit.n
    priors = np.asarray(priors, dtype=np.float64)
    if priors.ndim == 1:
        priors = np.broadcast_to(priors, (n, 4))
    labels = np.zeros((4**n, n), dtype=np.int64)
    idx = np.arange(4**n)
    for w in range(n):
        labels[:, w] = (idx // 4**w) % 4
    x_bits = np.isin(labels, (1, 2)).astype(np.uint8)
    z_bits = np.isin(labels, (2, 3)).astype(np.uint8)
    weight = np.prod(priors[np.arange(n)[None, :], labels], axis=1)
    ux, uz = apply_circuit(x_bits, z_bits, circuit, "decode")
    u_labels = np.asarray(LABEL_OF_BITS)[ux, uz]
    for w, leaf in leaves.items():
        weight = weight * leaf.as_vector()[u_labels[:, w]]
    qbit = ux[:, query_wire] if query_quad == "x" else uz[:, query_wire]
    p0 = float(weight[qbit == 0].sum())
    p1 = float(weight[qbit == 1].sum())
    total = p0 + p1
    if total <= 0:
        raise ValueError("leaves are inconsistent: zero total mass")
    return p0 / total, p1 / total
