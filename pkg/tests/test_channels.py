import numpy as np
import pytest

from tncodes.channels import (
    depolarizing,
    erasure,
    independent_xz,
    parse_channel,
    sample_errors,
)


def test_parse_depolarizing():
    ch = parse_channel("depol:0.12")
    assert ch.kind == "pauli"
    np.testing.assert_allclose(ch.p4, [0.91, 0.03, 0.03, 0.03])
    np.testing.assert_allclose(sum(ch.p4), 1.0)


def test_parse_independent_xz():
    ch = parse_channel("xz:0.1,0.2")
    px, pz = 0.1, 0.2
    np.testing.assert_allclose(
        ch.p4, [(1 - px) * (1 - pz), px * (1 - pz), px * pz, (1 - px) * pz]
    )


def test_parse_erasure():
    ch = parse_channel("erasure:0.25")
    assert ch.kind == "erasure"
    assert ch.erasure_rate == 0.25


@pytest.mark.parametrize("bad", ["", "depol", "wat:0.1", "depol:x", "xz:0.1"])
def test_parse_rejects_bad_specs(bad):
    with pytest.raises(ValueError):
        parse_channel(bad)


def test_prior_matches_p4():
    ch = depolarizing(0.3)
    np.testing.assert_allclose(ch.prior(), ch.p4)


def test_pauli_sample_frequencies():
    ch = depolarizing(0.3)
    rng = np.random.default_rng(7)
    x, z, er = sample_errors(ch, 8, 20000, rng)
    assert er.sum() == 0
    # each Pauli at p/4: X-bit rate = p/2, Z-bit rate = p/2, Y rate = p/4
    assert x.mean() == pytest.approx(0.15, abs=0.01)
    assert z.mean() == pytest.approx(0.15, abs=0.01)
    assert (x & z).mean() == pytest.approx(0.075, abs=0.01)


def test_erasure_sample_structure():
    ch = erasure(0.4)
    rng = np.random.default_rng(3)
    x, z, er = sample_errors(ch, 16, 5000, rng)
    # errors live only on erased wires, uniform over the 4 Paulis there
    assert not (x & ~er).any() and not (z & ~er).any()
    assert er.mean() == pytest.approx(0.4, abs=0.02)
    erased = er.astype(bool)
    assert x[erased].mean() == pytest.approx(0.5, abs=0.02)
    assert z[erased].mean() == pytest.approx(0.5, abs=0.02)


def test_sampling_is_reproducible():
    ch = independent_xz(0.05, 0.1)
    a = sample_errors(ch, 8, 100, np.random.default_rng(11))
    b = sample_errors(ch, 8, 100, np.random.default_rng(11))
    for u, v in zip(a, b):
        assert np.array_equal(u, v)
