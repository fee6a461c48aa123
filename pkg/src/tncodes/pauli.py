"""Pauli labels, n-wire Pauli operators and weighted distributions over labels.

Labels use the fixed order ``I, X, Y, Z`` (0..3). A label's GF(2) coordinates are the
x-bit (set for X, Y) and z-bit (set for Y, Z); signs/phases are irrelevant throughout
because everything acts by conjugation with CNOTs.

Multi-wire distributions are wire-major: axis 0 of :class:`QuadDist` weights is the
first wire in ``wires``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

I, X, Y, Z = 0, 1, 2, 3
LABELS = "IXYZ"

# label -> (x-bit, z-bit), and back
X_BIT = np.array([0, 1, 1, 0], dtype=np.uint8)
Z_BIT = np.array([0, 0, 1, 1], dtype=np.uint8)
LABEL_OF_BITS = np.array([[0, 3], [1, 2]], dtype=np.uint8)  # [x][z]


class InconsistentEvidenceError(Exception):
    """Raised when conditioning removes all probability mass."""


def label_from_bits(x: int, z: int) -> int:
    return int(LABEL_OF_BITS[x, z])


@dataclass(frozen=True)
class PauliOp:
    """An n-wire Pauli operator as GF(2) bit vectors (phases ignored)."""

    x_bits: np.ndarray
    z_bits: np.ndarray

    @property
    def n(self) -> int:
        return len(self.x_bits)

    @staticmethod
    def identity(n: int) -> "PauliOp":
        return PauliOp(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @staticmethod
    def from_labels(labels) -> "PauliOp":
        labels = np.asarray(labels, dtype=np.uint8)
        return PauliOp(X_BIT[labels].copy(), Z_BIT[labels].copy())

    def labels(self) -> np.ndarray:
        return LABEL_OF_BITS[self.x_bits, self.z_bits]

    def compose(self, other: "PauliOp") -> "PauliOp":
        """Group product up to phase: bitwise XOR of the symplectic coordinates."""
        return PauliOp(self.x_bits ^ other.x_bits, self.z_bits ^ other.z_bits)

    def __str__(self) -> str:
        return "".join(LABELS[k] for k in self.labels())


def _build_cnot_table() -> np.ndarray:
    """16-entry permutation for conjugating a 2-wire label by CNOT(control, target).

    Conjugation adds the control's x-bit into the target and the target's z-bit into
    the control; the paper's truth-table rows (I,X)->(I,X), (X,I)->(X,X),
    (I,Z)->(Z,Z), (Z,I)->(Z,I) pin the direction.
    """
    table = np.zeros(16, dtype=np.int64)
    for c in range(4):
        for t in range(4):
            xc, zc = int(X_BIT[c]), int(Z_BIT[c])
            xt, zt = int(X_BIT[t]), int(Z_BIT[t])
            c2 = label_from_bits(xc, zc ^ zt)
            t2 = label_from_bits(xt ^ xc, zt)
            table[c * 4 + t] = c2 * 4 + t2
    return table


CNOT_TABLE = _build_cnot_table()


def cnot_conjugate(control_label: int, target_label: int) -> tuple[int, int]:
    """Image of a 2-wire Pauli label under conjugation by CNOT (control first)."""
    img = int(CNOT_TABLE[control_label * 4 + target_label])
    return img // 4, img % 4


@dataclass
class QuadDist:
    """Unnormalized weights over joint Pauli labels of a small wire set."""

    wires: tuple[int, ...]
    weights: np.ndarray  # shape (4,) * len(wires), float64

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.weights.shape != (4,) * len(self.wires):
            raise ValueError("weights shape does not match wire count")

    @property
    def width(self) -> int:
        return len(self.wires)

    def mass(self) -> float:
        return float(self.weights.sum())

    def axis(self, wire: int) -> int:
        return self.wires.index(wire)

    @staticmethod
    def product(dists: list["QuadDist"]) -> "QuadDist":
        wires: tuple[int, ...] = ()
        w = np.array(1.0)
        for d in dists:
            wires = wires + d.wires
            w = np.multiply.outer(w, d.weights)
        return QuadDist(wires, w.reshape((4,) * len(wires)))


def dist_apply_cnot(dist: QuadDist, control: int, target: int) -> QuadDist:
    """Push a distribution through conjugation by CNOT(control, target).

    The output assigns d'(conj(sigma)) = d(sigma); both wires must belong to ``dist``.
    """
    ax_c, ax_t = dist.axis(control), dist.axis(target)
    w = dist.weights
    moved = np.moveaxis(w, (ax_c, ax_t), (0, 1))
    flat = moved.reshape(16, -1)
    out = np.empty_like(flat)
    out[CNOT_TABLE] = flat
    out = out.reshape(moved.shape)
    return QuadDist(dist.wires, np.moveaxis(out, (0, 1), (ax_c, ax_t)))


def condition(dist: QuadDist, wire: int, leaf: np.ndarray) -> QuadDist:
    """Contract one wire with a 4-vector leaf, removing the wire.

    Raises :class:`InconsistentEvidenceError` if the remaining mass is exactly zero.
    """
    ax = dist.axis(wire)
    w = np.tensordot(dist.weights, np.asarray(leaf, dtype=np.float64), axes=([ax], [0]))
    if w.size and float(np.abs(w).sum()) == 0.0:
        raise InconsistentEvidenceError(f"conditioning wire {wire} removed all mass")
    wires = dist.wires[:ax] + dist.wires[ax + 1 :]
    return QuadDist(wires, w)


def marginalize(dist: QuadDist, wire: int) -> QuadDist:
    """Sum a wire out (contract with the uniform leaf)."""
    return condition(dist, wire, UNIFORM)


# ---------------------------------------------------------------------------
# Canonical leaf tensors. Bimodal leaves condition one quadrature bit:
#   b_z  selects x-bit = 0 (support I, Z),   b_z-bar selects x-bit = 1 (X, Y)
#   b_x  selects z-bit = 0 (support I, X),   b_x-bar selects z-bit = 1 (Y, Z)
UNIFORM = np.ones(4)
B_Z = np.array([1.0, 0.0, 0.0, 1.0])
B_Z_BAR = np.array([0.0, 1.0, 1.0, 0.0])
B_X = np.array([1.0, 1.0, 0.0, 0.0])
B_X_BAR = np.array([0.0, 0.0, 1.0, 1.0])


def point_leaf(label: int) -> np.ndarray:
    v = np.zeros(4)
    v[label] = 1.0
    return v


def bimodal_leaf(quadrature: str, bit: int) -> np.ndarray:
    """Indicator leaf for one quadrature bit: 'x' conditions the x-bit (b_z family),
    'z' conditions the z-bit (b_x family)."""
    if quadrature == "x":
        return B_Z if bit == 0 else B_Z_BAR
    if quadrature == "z":
        return B_X if bit == 0 else B_X_BAR
    raise ValueError(f"unknown quadrature {quadrature!r}")


@dataclass(frozen=True)
class LeafTensor:
    """A knowledge leaf on one input wire.

    kind is one of 'uniform', 'point', 'bimodal_x', 'bimodal_z', 'prior'. For the
    bimodal kinds ``bit`` is the conditioned quadrature bit; 'bimodal_x' conditions the
    x-bit (the b_z / b_z-bar pair). 'point' uses ``label``; 'prior' uses ``vector``.
    """

    kind: str
    bit: int = 0
    label: int = 0
    vector: tuple[float, float, float, float] = field(default=(1.0, 1.0, 1.0, 1.0))

    def as_vector(self) -> np.ndarray:
        if self.kind == "uniform":
            return UNIFORM.copy()
        if self.kind == "point":
            return point_leaf(self.label)
        if self.kind == "bimodal_x":
            return bimodal_leaf("x", self.bit)
        if self.kind == "bimodal_z":
            return bimodal_leaf("z", self.bit)
        if self.kind == "prior":
            return np.asarray(self.vector, dtype=np.float64)
        raise ValueError(f"unknown leaf kind {self.kind!r}")
