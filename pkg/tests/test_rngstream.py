import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadsim import ChainSpec, SiteParams, chain
from dyadsim.errors import (ConfigurationError, LowYieldError,
                            TooFewSamplesError)
from dyadsim.rngstream import (ChainSample, decode, encode, generate_stream,
                               mutual_information_bits, pack_bits,
                               _chi_square_uniformity, _monobit, _runs)
from dyadsim.rngstream import test_suite as statistical_suite
from tests.conftest import FAIR_COIN


class TestEncoding:
    def test_examples(self):
        assert encode([1, 0, 1]) == 5
        assert encode([0, 0, 0, 1]) == 1
        assert encode([1, 0, 0, 0]) == 8
        assert decode(5, 3) == (1, 0, 1)

    def test_thirty_bit_value(self):
        bits = tuple(int(c) for c in format(679_416_442, "030b"))
        assert encode(bits) == 679_416_442
        assert decode(679_416_442, 30) == bits

    @given(value=st.integers(0, 2 ** 20 - 1), n=st.integers(20, 24))
    @settings(max_examples=100, deadline=None)
    def test_roundtrip(self, value, n):
        assert encode(decode(value, n)) == value

    def test_nonbinary_rejected(self):
        with pytest.raises(ConfigurationError):
            encode([0, 2, 1])

    def test_decode_out_of_range(self):
        with pytest.raises(ConfigurationError):
            decode(8, 3)


class TestPackBits:
    def test_msb_first_padding(self):
        samples = [ChainSample(bits=(1, 0, 1), value=5, seed=0),
                   ChainSample(bits=(1, 1, 0), value=6, seed=1)]
        # concatenated bits 101110 pad to 10111000 = 0xB8
        assert pack_bits(samples) == b"\xb8"

    def test_two_bytes(self):
        samples = [ChainSample(bits=(1,) * 9, value=511, seed=0)]
        assert pack_bits(samples) == b"\xff\x80"


class TestStatisticalTests:
    def test_monobit_balanced_passes(self):
        rng = np.random.default_rng(0)
        assert _monobit(rng.integers(0, 2, 10_000).astype(np.uint8)).passed

    def test_monobit_constant_fails(self):
        report = _monobit(np.ones(1000, dtype=np.uint8))
        assert not report.passed
        assert report.p_value < 1e-10

    def test_runs_alternating_fails(self):
        bits = np.tile([0, 1], 500).astype(np.uint8)
        assert not _runs(bits, "runs").passed

    def test_runs_random_passes(self):
        rng = np.random.default_rng(1)
        assert _runs(rng.integers(0, 2, 5000).astype(np.uint8), "runs").passed

    def test_runs_biased_prerequisite(self):
        rng = np.random.default_rng(2)
        bits = (rng.random(2000) < 0.8).astype(np.uint8)
        report = _runs(bits, "runs")
        assert not report.passed and report.p_value == 0.0

    def test_chi_square_uniform_passes(self):
        rng = np.random.default_rng(3)
        values = rng.integers(0, 32, 3200)
        assert _chi_square_uniformity(values, 32).passed

    def test_chi_square_skewed_fails(self):
        values = np.zeros(3200, dtype=int)
        assert not _chi_square_uniformity(values, 32).passed

    def test_chi_square_too_few_samples(self):
        with pytest.raises(TooFewSamplesError):
            _chi_square_uniformity(np.arange(32), 32)

    def test_suite_needs_samples(self):
        samples = [ChainSample(bits=(0, 1), value=1, seed=k) for k in range(50)]
        with pytest.raises(TooFewSamplesError):
            statistical_suite(samples)

    def test_suite_on_synthetic_fair_source(self):
        rng = np.random.default_rng(4)
        samples = []
        for k in range(400):
            bits = tuple(int(b) for b in rng.integers(0, 2, 3))
            samples.append(ChainSample(bits=bits, value=encode(bits), seed=k))
        reports = statistical_suite(samples)
        names = [r.name for r in reports]
        assert names[0] == "monobit"
        assert sum(n.startswith("runs") for n in names) == 3
        assert names[-1] == "chi_square_uniformity"
        assert all(r.passed for r in reports)


class TestMutualInformation:
    def test_independent_bits_near_zero(self):
        rng = np.random.default_rng(5)
        samples = [ChainSample(bits=tuple(int(b) for b in rng.integers(0, 2, 2)),
                               value=0, seed=k) for k in range(4000)]
        assert mutual_information_bits(samples, 0, 1) < 0.002

    def test_copied_bit_is_one(self):
        rng = np.random.default_rng(6)
        samples = []
        for k in range(2000):
            b = int(rng.integers(0, 2))
            samples.append(ChainSample(bits=(b, b), value=0, seed=k))
        assert mutual_information_bits(samples, 0, 1) == pytest.approx(1.0,
                                                                       abs=0.01)


class TestGenerateStream:
    def _chain_config(self, n_dyads):
        spec = ChainSpec(n_dyads=n_dyads, intra_coupling=FAIR_COIN["J"])
        return chain(spec, SiteParams(FAIR_COIN["gamma"], FAIR_COIN["g"]),
                     FAIR_COIN["xi"])

    def test_samples_are_reproducible(self):
        config = self._chain_config(3)
        a = generate_stream(config, 5, base_seed=10)
        b = generate_stream(config, 5, base_seed=10)
        assert [s.bits for s in a] == [s.bits for s in b]
        assert all(s.value == encode(s.bits) for s in a)

    def test_seed_bookkeeping_skips_unresolved(self):
        config = self._chain_config(2)
        samples = generate_stream(config, 8, base_seed=0)
        assert len(samples) == 8
        seeds = [s.seed for s in samples]
        assert seeds == sorted(seeds)
        assert len(set(seeds)) == 8

    def test_odd_site_count_rejected(self):
        from dyadsim import CouplingMatrix, NetworkConfig
        config = NetworkConfig(sites=(SiteParams(2.0, 0.5),),
                               coupling=CouplingMatrix(np.zeros((1, 1))),
                               xi=1.0)
        with pytest.raises(ConfigurationError):
            generate_stream(config, 1, base_seed=0)

    def test_low_yield_aborts(self):
        # symmetric-regime chain never resolves a bit
        spec = ChainSpec(n_dyads=1, intra_coupling=0.45)
        config = chain(spec, SiteParams(1.8, 0.4), 2.0)
        with pytest.raises(LowYieldError):
            generate_stream(config, 1, base_seed=0)
