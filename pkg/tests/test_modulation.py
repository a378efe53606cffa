"""Constellation geometry, dispersion constant, and the transmit model."""

import math

import numpy as np
import numpy.testing as npt
import pytest

from sparseq.channel import SparseChannel, generate_sparse_channel
from sparseq.modulation import (
    Constellation,
    apsk8_constellation,
    dispersion_constant,
    transmit,
)


class TestApsk8Geometry:
    def test_eight_symbols_two_rings(self):
        c = apsk8_constellation()
        assert len(c.symbols) == 8
        radii = np.sort(np.abs(c.symbols))
        npt.assert_allclose(radii[:4], math.sqrt(0.4), rtol=1e-12)
        npt.assert_allclose(radii[4:], math.sqrt(1.6), rtol=1e-12)

    def test_unit_mean_power(self):
        for ratio in (1.5, 2.0, 3.0, 10.0):
            c = apsk8_constellation(ratio)
            assert abs(c.mean_power() - 1.0) < 1e-12

    def test_ring_phases(self):
        c = apsk8_constellation()
        inner = c.symbols[:4]
        outer = c.symbols[4:]
        # inner ring on the diagonals, outer ring on the axes
        npt.assert_allclose(np.abs(inner.real), np.abs(inner.imag), rtol=1e-9)
        assert np.all(np.minimum(np.abs(outer.real), np.abs(outer.imag)) < 1e-12)

    def test_closed_under_quarter_turn(self):
        c = apsk8_constellation()
        rotated = np.sort_complex(np.round(1j * c.symbols, 12))
        original = np.sort_complex(np.round(c.symbols, 12))
        npt.assert_allclose(rotated, original, atol=1e-9)

    @pytest.mark.parametrize("ratio", [1.0, 0.5, 0.0, -2.0])
    def test_degenerate_ratio_rejected(self, ratio):
        with pytest.raises(ValueError, match="invalid geometry"):
            apsk8_constellation(ratio)


class TestDispersionConstant:
    def test_reference_value_for_default_ring_ratio(self):
        # squared radii 0.4 and 1.6: E|s|^4 = (0.16 + 2.56)/2, E|s|^2 = 1
        assert dispersion_constant(apsk8_constellation(2.0)) == pytest.approx(
            1.36, abs=1e-12
        )

    def test_unit_modulus_constellation_gives_one(self):
        qpsk = Constellation(
            "qpsk", np.exp(1j * (np.pi / 4 + np.pi / 2 * np.arange(4)))
        )
        assert dispersion_constant(qpsk) == pytest.approx(1.0, abs=1e-12)

    def test_quadratic_scale_homogeneity(self):
        c = apsk8_constellation(2.0)
        scaled = Constellation("scaled", 3.0 * c.symbols)
        assert dispersion_constant(scaled) == pytest.approx(
            9.0 * dispersion_constant(c), rel=1e-12
        )


IDENTITY = SparseChannel(np.array([1.0 + 0j]), [0])


class TestTransmit:
    def test_identity_channel_noiseless_returns_symbols(self):
        c = apsk8_constellation()
        stream = transmit(IDENTITY, c, 256, math.inf, seed=9)
        npt.assert_array_equal(stream.x, stream.s)

    def test_symbols_come_from_constellation(self):
        c = apsk8_constellation()
        stream = transmit(IDENTITY, c, 1000, math.inf, seed=3)
        dists = np.abs(stream.s[:, None] - c.symbols[None, :]).min(axis=1)
        assert dists.max() == 0.0

    def test_output_length_matches_symbol_count(self):
        ch = generate_sparse_channel(0)
        stream = transmit(ch, apsk8_constellation(), 500, 20.0, seed=1)
        assert len(stream.x) == 500
        assert len(stream.s) == 500

    def test_deterministic_in_seed(self):
        ch = generate_sparse_channel(4)
        c = apsk8_constellation()
        a = transmit(ch, c, 300, 25.0, seed=77)
        b = transmit(ch, c, 300, 25.0, seed=77)
        d = transmit(ch, c, 300, 25.0, seed=78)
        npt.assert_array_equal(a.x, b.x)
        assert not np.array_equal(a.x, d.x)

    def test_convolution_model(self):
        # noiseless output must equal the causal convolution truncation
        ch = generate_sparse_channel(12)
        c = apsk8_constellation()
        stream = transmit(ch, c, 400, math.inf, seed=5)
        expected = np.convolve(ch.taps, stream.s)[:400]
        npt.assert_array_equal(stream.x, expected)

    def test_noise_power_calibration(self):
        # at 30 dB over 1e5 samples the injected noise power is 1e-3 +- 5%
        ch = generate_sparse_channel(8)
        c = apsk8_constellation()
        stream = transmit(ch, c, 100_000, 30.0, seed=21)
        clean = np.convolve(ch.taps, stream.s)[:100_000]
        noise_power = np.mean(np.abs(stream.x - clean) ** 2)
        assert noise_power == pytest.approx(1e-3, rel=0.05)

    @pytest.mark.parametrize("snr_db", [10.0, 20.0, 30.0])
    def test_measured_snr_within_02_db(self, snr_db):
        ch = generate_sparse_channel(8)
        c = apsk8_constellation()
        stream = transmit(ch, c, 100_000, snr_db, seed=33)
        clean = np.convolve(ch.taps, stream.s)[:100_000]
        signal_power = np.mean(np.abs(clean) ** 2)
        noise_power = np.mean(np.abs(stream.x - clean) ** 2)
        measured = 10.0 * math.log10(signal_power / noise_power)
        assert abs(measured - snr_db) <= 0.2

    def test_rejects_empty_stream(self):
        with pytest.raises(ValueError):
            transmit(IDENTITY, apsk8_constellation(), 0, 30.0, seed=0)
