"""Exact GF(2) decoding for the erasure channel.

Erasure positions are known, so each quadrature reduces to linear algebra over
GF(2): the unknowns are the error bits on erased wires, every measured or decided
de-encoded bit is a linear functional of those unknowns (a column of Mx or Mz
restricted to erased rows), and the decoder's state of knowledge is the span of
the functionals seen so far. A queried bit is either determined by that span
(posterior 0 or 1) or completely undetermined (posterior exactly 1/2, decided by
the fixed tie-break to 0). In genie mode the per-decision error indicator is
therefore exact: 0 if determined, 1/2 if not.

Since determinedness depends only on the erasure pattern (never on the sampled
error values), genie statistics can be computed by exhaustive enumeration over
all 2^n patterns at small n, exactly in rational arithmetic -- this is the
independent check against density evolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from tncodes.circuits import apply_circuit, build_bmera, build_polar
from tncodes.decoder import schedule
from tncodes.pauli import InconsistentEvidenceError


class Gf2System:
    """Growing row basis of known linear functionals over GF(2) bit masks."""

    __slots__ = ("rows",)

    def __init__(self) -> None:
        self.rows: dict[int, tuple[int, int]] = {}  # pivot (lowest bit) -> (mask, val)

    def _reduce(self, mask: int, val: int) -> tuple[int, int]:
        rows = self.rows
        while mask:
            row = rows.get(mask & -mask)
            if row is None:
                return mask, val
            mask ^= row[0]
            val ^= row[1]
        return 0, val

    def query(self, mask: int) -> int | None:
        """Value of the functional if it lies in the known span, else None."""
        m, v = self._reduce(mask, 0)
        return None if m else v

    def insert(self, mask: int, val: int) -> bool:
        """Add one known functional; True if it increased the rank."""
        m, v = self._reduce(mask, int(val))
        if m == 0:
            if v:
                raise InconsistentEvidenceError("contradictory erasure constraints")
            return False
        self.rows[m & -m] = (m, v)
        return True


def _column_masks(mat: np.ndarray) -> list[int]:
    """Each de-encoded bit as an int bitmask over physical wire indices."""
    n = mat.shape[0]
    return [sum(int(mat[i, j]) << i for i in range(n)) for j in range(mat.shape[1])]


def quadrature_masks(n: int, family: str) -> dict[str, list[int]]:
    """Decode-direction transforms as column bitmasks: u_q[w] = <masks[q][w], e_q>.

    These are the inverses of the encode matrices; for the polar x transform the
    two coincide (F^{(x) L} is involutory over GF(2)) but not in general.
    """
    build = build_polar if family == "polar" else build_bmera
    circuit = build(n.bit_length() - 1)
    eye = np.eye(n, dtype=np.uint8)
    zero = np.zeros_like(eye)
    dx, _ = apply_circuit(eye, zero, circuit, "decode")
    _, dz = apply_circuit(zero, eye, circuit, "decode")
    return {"x": _column_masks(dx), "z": _column_masks(dz)}


@dataclass(frozen=True)
class ErasureDecodeResult:
    """Mirror of DecodeBatchResult for the GF(2) erasure decoder.

    err_* are exact per-decision error probabilities: in genie mode each entry is
    0 or 0.5; in honest mode 0/1 indicators against the truth.
    """

    dec_x: np.ndarray  # (batch, n) uint8
    dec_z: np.ndarray
    err_x: np.ndarray  # (batch, n) float
    err_z: np.ndarray
    decided_x: np.ndarray  # (n,) bool
    decided_z: np.ndarray
    failed: np.ndarray  # (batch,) bool: inconsistent system (counts as block error)


def decode_erasure_batch(
    n: int,
    family: str,
    erased: np.ndarray,
    u_x: np.ndarray,
    u_z: np.ndarray,
    decoder: str = "standard",
    roles: tuple[str, ...] | None = None,
    genie: bool = False,
) -> ErasureDecodeResult:
    """Successive-cancellation erasure decoding of a batch of trials.

    ``erased`` is the (batch, n) erasure pattern; ``u_x``/``u_z`` are the true
    de-encoded bits. The x and z systems are independent, so the symmetric and
    standard schedules give identical results; both are accepted.
    """
    masks = quadrature_masks(n, family)
    u = {"x": np.asarray(u_x, np.uint8), "z": np.asarray(u_z, np.uint8)}
    batch = u["x"].shape[0]
    dec = {"x": np.zeros((batch, n), np.uint8), "z": np.zeros((batch, n), np.uint8)}
    err = {"x": np.zeros((batch, n)), "z": np.zeros((batch, n))}
    decided = {"x": np.ones(n, bool), "z": np.ones(n, bool)}
    failed = np.zeros(batch, bool)
    syndrome_quad = {"freeze0": "x", "freezeplus": "z", "data": None}
    order = schedule(decoder, n)
    for b in range(batch):
        pattern = sum(int(bit) << i for i, bit in enumerate(erased[b]))
        sys = {"x": Gf2System(), "z": Gf2System()}
        try:
            for quad, w in order:
                mask = masks[quad][w] & pattern
                truth = int(u[quad][b, w])
                if roles is not None and syndrome_quad[roles[w]] == quad:
                    decided[quad][w] = False
                    dec[quad][b, w] = truth
                    sys[quad].insert(mask, truth)
                    continue
                known = sys[quad].query(mask)
                if known is None:
                    guess = 0  # undetermined: fixed tie-break
                    err[quad][b, w] = 0.5 if genie else float(truth != guess)
                else:
                    guess = known
                    err[quad][b, w] = 0.0 if genie else float(truth != guess)
                chosen = truth if genie else guess
                dec[quad][b, w] = chosen
                sys[quad].insert(mask, chosen)
        except InconsistentEvidenceError:
            failed[b] = True
    return ErasureDecodeResult(
        dec["x"], dec["z"], err["x"], err["z"], decided["x"], decided["z"], failed
    )


def genie_pattern_indicators(
    n: int, family: str, patterns: list[int], decoder: str = "standard"
) -> tuple[np.ndarray, np.ndarray]:
    """Exact genie error indicators (0 or 1/2) per wire for given erasure patterns.

    Determinedness depends only on the pattern, so no error values are needed.
    Returns (ind_x, ind_z) of shape (len(patterns), n).
    """
    masks = quadrature_masks(n, family)
    out = {"x": np.zeros((len(patterns), n)), "z": np.zeros((len(patterns), n))}
    order = schedule(decoder, n)
    for b, pattern in enumerate(patterns):
        sys = {"x": Gf2System(), "z": Gf2System()}
        for quad, w in order:
            if sys[quad].insert(masks[quad][w] & pattern, 0):
                out[quad][b, w] = 0.5
    return out["x"], out["z"]


def exhaustive_erasure_genie(
    n: int, family: str, eps, decoder: str = "standard"
) -> tuple[list, list]:
    """Genie decision-error rates, exactly weighted over all 2^n erasure patterns.

    With a Fraction ``eps`` the result is exact rational; with a float it is exact
    up to rounding. Returns (err_x, err_z) lists of length n.
    """
    half = Fraction(1, 2) if isinstance(eps, Fraction) else 0.5
    one = eps * 0 + 1
    err = {"x": [eps * 0] * n, "z": [eps * 0] * n}
    masks = quadrature_masks(n, family)
    order = schedule(decoder, n)
    for pattern in range(1 << n):
        k = pattern.bit_count()
        weight = eps**k * (one - eps) ** (n - k)
        sys = {"x": Gf2System(), "z": Gf2System()}
        for quad, w in order:
            if sys[quad].insert(masks[quad][w] & pattern, 0):
                err[quad][w] += weight * half
    return err["x"], err["z"]
