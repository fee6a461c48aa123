import numpy as np
import pytest
from hypothesis import given, strategies as st

from tncodes.pauli import (
    B_X,
    B_X_BAR,
    B_Z,
    B_Z_BAR,
    CNOT_TABLE,
    UNIFORM,
    InconsistentEvidenceError,
    PauliOp,
    QuadDist,
    bimodal_leaf,
    cnot_conjugate,
    condition,
    dist_apply_cnot,
    label_from_bits,
    marginalize,
    point_leaf,
)

I, X, Y, Z = 0, 1, 2, 3

# 2x2 Pauli matrices and the CNOT unitary, for the independent matrix oracle.
_P = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]
_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def _matrix_conjugate(c: int, t: int) -> tuple[int, int]:
    """Conjugate kron(P_c, P_t) by CNOT and identify the image up to phase."""
    img = _CNOT @ np.kron(_P[c], _P[t]) @ _CNOT.conj().T
    for c2 in range(4):
        for t2 in range(4):
            cand = np.kron(_P[c2], _P[t2])
            ratio = img[np.abs(cand) > 0.5] / cand[np.abs(cand) > 0.5]
            if np.allclose(img, ratio[0] * cand):
                return c2, t2
    raise AssertionError("image is not a Pauli product")


def test_cnot_documented_rows():
    assert cnot_conjugate(I, X) == (I, X)
    assert cnot_conjugate(X, I) == (X, X)
    assert cnot_conjugate(I, Z) == (Z, Z)
    assert cnot_conjugate(Z, I) == (Z, I)


def test_cnot_table_matches_matrix_oracle():
    for c in range(4):
        for t in range(4):
            assert cnot_conjugate(c, t) == _matrix_conjugate(c, t)


def test_cnot_table_is_a_permutation():
    assert sorted(CNOT_TABLE.tolist()) == list(range(16))
    # conjugation by CNOT is an involution
    assert np.array_equal(CNOT_TABLE[CNOT_TABLE], np.arange(16))


def test_label_bit_conventions():
    assert label_from_bits(0, 0) == I
    assert label_from_bits(1, 0) == X
    assert label_from_bits(1, 1) == Y
    assert label_from_bits(0, 1) == Z


@given(st.lists(st.integers(0, 3), min_size=1, max_size=16))
def test_pauliop_label_roundtrip(labels):
    op = PauliOp.from_labels(labels)
    assert op.labels().tolist() == labels
    assert op.compose(op).labels().tolist() == [0] * len(labels)


weights2 = st.lists(
    st.floats(0.001, 1.0, allow_nan=False), min_size=16, max_size=16
).map(lambda v: np.array(v).reshape(4, 4))


@given(weights2)
def test_dist_apply_cnot_preserves_mass_and_inverts(w):
    d = QuadDist((0, 1), w)
    pushed = dist_apply_cnot(d, 0, 1)
    assert pushed.mass() == pytest.approx(d.mass())
    # CNOT conjugation is an involution on labels, so pushing twice is identity.
    back = dist_apply_cnot(pushed, 0, 1)
    np.testing.assert_allclose(back.weights, d.weights)


@given(st.integers(0, 3), st.integers(0, 3))
def test_dist_apply_cnot_moves_point_masses(c, t):
    d = QuadDist((5, 9), np.outer(point_leaf(c), point_leaf(t)))
    pushed = dist_apply_cnot(d, 5, 9)
    c2, t2 = cnot_conjugate(c, t)
    assert pushed.weights[c2, t2] == 1.0
    assert pushed.mass() == 1.0


@given(weights2)
def test_marginalize_is_uniform_condition(w):
    d = QuadDist((3, 7), w)
    np.testing.assert_allclose(
        marginalize(d, 3).weights, condition(d, 3, UNIFORM).weights
    )
    assert marginalize(d, 3).wires == (7,)


def test_condition_zero_mass_raises():
    d = QuadDist((0,), point_leaf(I))
    with pytest.raises(InconsistentEvidenceError):
        condition(d, 0, B_Z_BAR)  # identity has x-bit 0


def test_bimodal_leaves_partition_uniform():
    np.testing.assert_allclose(B_Z + B_Z_BAR, UNIFORM)
    np.testing.assert_allclose(B_X + B_X_BAR, UNIFORM)
    # 'x' conditions the x-bit: support where x-bit equals the requested value
    assert bimodal_leaf("x", 0).tolist() == [1, 0, 0, 1]
    assert bimodal_leaf("x", 1).tolist() == [0, 1, 1, 0]
    assert bimodal_leaf("z", 0).tolist() == [1, 1, 0, 0]
    assert bimodal_leaf("z", 1).tolist() == [0, 0, 1, 1]


def test_quaddist_product():
    a = QuadDist((0,), point_leaf(X))
    b = QuadDist((1,), UNIFORM)
    prod = QuadDist.product([a, b])
    assert prod.wires == (0, 1)
    assert prod.mass() == 4.0
