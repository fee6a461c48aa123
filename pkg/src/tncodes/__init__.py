"""Quantum polar and branching-MERA codes decoded by exact windowed tensor-network
contraction.

The package is organized as:

- :mod:`tncodes.pauli`    -- Pauli labels, weighted label distributions, leaf tensors
- :mod:`tncodes.gf2`      -- dense GF(2) bit-matrix linear algebra
- :mod:`tncodes.circuits` -- CNOT-only encoding circuits for both code families
- :mod:`tncodes.channels` -- i.i.d. single-qubit Pauli / erasure channel models
- :mod:`tncodes.engine`   -- the successive-cancellation contraction engine
- :mod:`tncodes.decoder`  -- decoding entry points, genie statistics, oracles
- :mod:`tncodes.erasure`  -- exact GF(2) knowledge-state decoding of erasures
- :mod:`tncodes.polarization` -- channel statistics, selection, bounds, density evolution
- :mod:`tncodes.harness`  -- Monte Carlo simulation harness with frozen file formats
- :mod:`tncodes.cli`      -- command-line interface
"""

from tncodes.pauli import (
    PauliOp,
    QuadDist,
    LeafTensor,
    InconsistentEvidenceError,
    cnot_conjugate,
    dist_apply_cnot,
    condition,
    marginalize,
)
from tncodes.circuits import CodeCircuit, build_polar, build_bmera, strip_disentanglers
from tncodes.channels import ChannelModel, parse_channel

__all__ = [
    "PauliOp",
    "QuadDist",
    "LeafTensor",
    "InconsistentEvidenceError",
    "cnot_conjugate",
    "dist_apply_cnot",
    "condition",
    "marginalize",
    "CodeCircuit",
    "build_polar",
    "build_bmera",
    "strip_disentanglers",
    "ChannelModel",
    "parse_channel",
]
