"""CNOT-only encoding circuits for the polar and branching-MERA families.

Both families act on n = 2**L wires. The recursive block construction on wires
``ws`` (in encoding direction):

1. branching-MERA only, for blocks of size >= 4: a *disentangler* sublayer
   ``CNOT(control=ws[2j+2], target=ws[2j+1])`` for j = 0..m/2-2 (open boundary);
2. a *tree* sublayer ``CNOT(control=ws[2j+1], target=ws[2j])`` for j = 0..m/2-1
   (classical kernel (a, b) -> (a^b, b));
3. recurse on the even-position wires and on the odd-position wires.

Gates are listed scale-major (coarsest block first in encoding direction), then
block-major, then position-major. Stripping the disentangler gates from a bMERA
circuit yields exactly the polar circuit of the same size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from tncodes import gf2


@dataclass(frozen=True)
class Gate:
    control: int
    target: int
    scale: int
    sublayer: str  # 'tree' or 'disentangler'


@dataclass(frozen=True)
class CodeCircuit:
    n: int
    family: str  # 'polar' or 'bmera'
    gates: tuple[Gate, ...]

    @property
    def L(self) -> int:
        return self.n.bit_length() - 1

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "family": self.family,
                "gates": [
                    {"c": g.control, "t": g.target, "scale": g.scale, "sublayer": g.sublayer}
                    for g in self.gates
                ],
            },
            indent=2,
        )

    @staticmethod
    def from_json(text: str) -> "CodeCircuit":
        obj = json.loads(text)
        gates = tuple(
            Gate(g["c"], g["t"], g["scale"], g["sublayer"]) for g in obj["gates"]
        )
        return CodeCircuit(obj["n"], obj["family"], gates)


def _block_gates(ws: list[int], scale: int, family: str) -> list[Gate]:
    m = len(ws)
    gates: list[Gate] = []
    if family == "bmera" and m >= 4:
        for j in range(m // 2 - 1):
            gates.append(Gate(ws[2 * j + 2], ws[2 * j + 1], scale, "disentangler"))
    for j in range(m // 2):
        gates.append(Gate(ws[2 * j + 1], ws[2 * j], scale, "tree"))
    return gates


def _build(n: int, family: str) -> CodeCircuit:
    L = n.bit_length() - 1
    if n < 2 or 2**L != n:
        raise ValueError("n must be a power of two, n >= 2")
    gates: list[Gate] = []
    # breadth-first over blocks: scale-major, block-major, position-major
    level = [list(range(n))]
    scale = 0
    while level and len(level[0]) >= 2:
        nxt: list[list[int]] = []
        for ws in level:
            gates.extend(_block_gates(ws, scale, family))
            nxt.append(ws[0::2])
            nxt.append(ws[1::2])
        level = nxt
        scale += 1
    return CodeCircuit(n, family, tuple(gates))


def build_polar(L: int) -> CodeCircuit:
    return _build(2**L, "polar")


def build_bmera(L: int) -> CodeCircuit:
    return _build(2**L, "bmera")


def strip_disentanglers(circuit: CodeCircuit) -> CodeCircuit:
    gates = tuple(g for g in circuit.gates if g.sublayer == "tree")
    return CodeCircuit(circuit.n, "polar", gates)


def apply_circuit(
    x_bits: np.ndarray, z_bits: np.ndarray, circuit: CodeCircuit, direction: str
) -> tuple[np.ndarray, np.ndarray]:
    """Conjugate a Pauli (given as GF(2) bit arrays, last axis = wire) through the
    circuit. 'encode' maps input-side labels to physical labels; 'decode' is the
    inverse conjugation. Arrays may carry leading batch axes."""
    x = np.array(x_bits, dtype=np.uint8, copy=True)
    z = np.array(z_bits, dtype=np.uint8, copy=True)
    gates = circuit.gates if direction == "encode" else circuit.gates[::-1]
    if direction not in ("encode", "decode"):
        raise ValueError("direction must be 'encode' or 'decode'")
    for g in gates:
        x[..., g.target] ^= x[..., g.control]
        z[..., g.control] ^= z[..., g.target]
    return x, z


def gf2_matrices(circuit: CodeCircuit) -> tuple[np.ndarray, np.ndarray]:
    """Propagation matrices (Mx, Mz) with x_out = x_in . Mx over GF(2) (row-vector
    convention: Mx[i, j] is the coefficient of input bit i in output bit j). The
    symplectic duality Mz == (Mx^{-1})^T holds for every CNOT circuit."""
    n = circuit.n
    mx = gf2.identity(n)
    mz = gf2.identity(n)
    for g in circuit.gates:
        mx[:, g.target] ^= mx[:, g.control]
        mz[:, g.control] ^= mz[:, g.target]
    return mx, mz
