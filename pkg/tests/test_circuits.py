import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tncodes.circuits import (
    CodeCircuit,
    apply_circuit,
    build_bmera,
    build_polar,
    gf2_matrices,
    strip_disentanglers,
)

F2 = np.array([[1, 0], [1, 1]], dtype=np.uint8)


def _kron_power(m, L):
    out = np.array([[1]], dtype=np.uint8)
    for _ in range(L):
        out = np.kron(out, m)
    return out


def _bit_reversal(L):
    idx = np.arange(2**L)
    rev = np.zeros_like(idx)
    for b in range(L):
        rev |= ((idx >> b) & 1) << (L - 1 - b)
    return rev


@pytest.mark.parametrize("L", range(1, 11))
def test_strip_disentanglers_recovers_polar(L):
    assert strip_disentanglers(build_bmera(L)) == build_polar(L)


@pytest.mark.parametrize("L", range(1, 9))
def test_polar_x_transform_is_kronecker_power(L):
    mx, _ = gf2_matrices(build_polar(L))
    kron = _kron_power(F2, L)
    rev = _bit_reversal(L)
    assert np.array_equal(mx, kron) or np.array_equal(mx, kron[rev][:, rev])


@pytest.mark.parametrize("family", ["polar", "bmera"])
@pytest.mark.parametrize("L", range(1, 11))
def test_quadrature_transforms_are_symplectic(family, L):
    build = build_polar if family == "polar" else build_bmera
    mx, mz = gf2_matrices(build(L))
    # Mz must equal the inverse-transpose of Mx over GF(2): Mx Mz^T = I.
    prod = (mx.astype(np.int64) @ mz.T.astype(np.int64)) % 2
    assert np.array_equal(prod, np.eye(2**L, dtype=np.int64))


@pytest.mark.parametrize("family", ["polar", "bmera"])
def test_gate_counts(family):
    L = 5
    circ = build_polar(L) if family == "polar" else build_bmera(L)
    tree = sum(g.sublayer == "tree" for g in circ.gates)
    # one tree CNOT per pair per scale: n/2 * L
    assert tree == (2**L // 2) * L
    if family == "polar":
        assert tree == len(circ.gates)
    else:
        assert len(circ.gates) > tree


@settings(deadline=None, max_examples=25)
@given(
    st.integers(1, 6),
    st.sampled_from(["polar", "bmera"]),
    st.integers(0, 2**31 - 1),
)
def test_apply_circuit_decode_inverts_encode(L, family, seed):
    build = build_polar if family == "polar" else build_bmera
    circ = build(L)
    rng = np.random.default_rng(seed)
    x = rng.integers(0, 2, size=(3, 2**L), dtype=np.int64).astype(np.uint8)
    z = rng.integers(0, 2, size=(3, 2**L), dtype=np.int64).astype(np.uint8)
    ex, ez = apply_circuit(x, z, circ, "encode")
    dx, dz = apply_circuit(ex, ez, circ, "decode")
    assert np.array_equal(dx, x) and np.array_equal(dz, z)


def test_apply_circuit_matches_gf2_matrices():
    circ = build_bmera(4)
    n = circ.n
    mx, mz = gf2_matrices(circ)
    x = np.eye(n, dtype=np.uint8)
    z = np.zeros_like(x)
    ex, _ = apply_circuit(x, z, circ, "encode")
    assert np.array_equal(ex, mx)
    _, ez = apply_circuit(z, x, circ, "encode")
    assert np.array_equal(ez, mz)


def test_json_roundtrip():
    circ = build_bmera(3)
    assert CodeCircuit.from_json(circ.to_json()) == circ


def test_apply_circuit_rejects_bad_direction():
    with pytest.raises(ValueError):
        apply_circuit(np.zeros((1, 2), np.uint8), np.zeros((1, 2), np.uint8),
                      build_polar(1), "sideways")
