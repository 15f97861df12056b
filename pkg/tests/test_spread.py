"""Spreading sequences from H columns; spread/despread round trips."""

import numpy as np
import pytest

import ldpc_dsss as ld
from ldpc_dsss.spread import SpreadingSequence


class TestRuleValidation:
    def test_unknown_mode(self):
        with pytest.raises(ValueError, match="mode"):
            ld.SpreadingRule("and", (0,), 4)

    def test_empty_columns(self):
        with pytest.raises(ValueError, match="at least one column"):
            ld.SpreadingRule("xor", (), 4)

    def test_duplicate_columns(self):
        with pytest.raises(ValueError, match="distinct"):
            ld.SpreadingRule("xor", (1, 1), 4)

    def test_negative_column(self):
        with pytest.raises(ValueError, match="non-negative"):
            ld.SpreadingRule("xor", (-1,), 4)

    def test_not_mode_single_column_only(self):
        with pytest.raises(ValueError, match="exactly one"):
            ld.SpreadingRule("not", (0, 1), 4)

    def test_pg_at_least_one(self):
        with pytest.raises(ValueError, match="processing gain"):
            ld.SpreadingRule("xor", (0,), 0)


class TestDeriveSequence:
    def test_xor_of_first_two_columns(self, h_ref):
        seq = ld.derive_sequence(h_ref, ld.SpreadingRule("xor", (0, 1), 4))
        # columns 0 and 1 hit checks {0,1} and {0,2}; XOR = (0,1,1,0,0)
        assert seq.chips.tolist() == [1.0, -1.0, -1.0, 1.0]

    def test_not_of_first_column(self, h_ref):
        seq = ld.derive_sequence(h_ref, ld.SpreadingRule("not", (0,), 5))
        assert seq.chips.tolist() == [1.0, 1.0, -1.0, -1.0, -1.0]

    def test_deterministic(self, h_ref):
        rule = ld.SpreadingRule("xor", (0, 3), 5)
        a = ld.derive_sequence(h_ref, rule)
        b = ld.derive_sequence(h_ref, rule)
        assert np.array_equal(a.chips, b.chips)

    @pytest.mark.parametrize("pg", [1, 3, 5, 12])
    def test_alphabet_and_length(self, h_ref, pg):
        seq = ld.derive_sequence(h_ref, ld.SpreadingRule("xor", (0, 1), pg))
        assert seq.chips.shape == (pg,)
        assert set(np.unique(seq.chips)) <= {-1.0, 1.0}

    def test_cyclic_tiling_beyond_column_length(self, h_ref):
        short = ld.derive_sequence(h_ref, ld.SpreadingRule("xor", (0, 1), 5))
        tiled = ld.derive_sequence(h_ref, ld.SpreadingRule("xor", (0, 1), 12))
        assert np.array_equal(tiled.chips, np.resize(short.chips, 12))

    def test_xor_to_zero_rejected(self):
        # two identical columns cancel, leaving no key material
        h = ld.ParityCheckMatrix(2, 2, [[0, 1], [0, 1]])
        with pytest.raises(ValueError, match="degenerate sequence"):
            ld.derive_sequence(h, ld.SpreadingRule("xor", (0, 1), 2))

    def test_not_mode_may_produce_all_plus_one(self):
        h = ld.ParityCheckMatrix(2, 2, [[0, 1], [0, 1]])
        seq = ld.derive_sequence(h, ld.SpreadingRule("not", (0,), 2))
        assert seq.chips.tolist() == [1.0, 1.0]

    def test_column_out_of_range(self, h_ref):
        with pytest.raises(ValueError, match="out of range"):
            ld.derive_sequence(h_ref, ld.SpreadingRule("xor", (10,), 4))

    def test_chips_read_only(self, h_ref):
        seq = ld.derive_sequence(h_ref, ld.SpreadingRule("xor", (0, 1), 4))
        with pytest.raises(ValueError):
            seq.chips[0] = 5.0


class TestSpreadDespread:
    @pytest.fixture
    def seq(self, h_ref):
        return ld.derive_sequence(h_ref, ld.SpreadingRule("xor", (0, 1), 4))

    def test_identity_symbol(self, seq):
        assert ld.spread([1.0], seq).tolist() == [1.0, -1.0, -1.0, 1.0]

    def test_sign_flip(self, seq):
        assert ld.spread([-1.0], seq).tolist() == [-1.0, 1.0, 1.0, -1.0]

    def test_concatenation(self, h_ref):
        seq2 = SpreadingSequence(np.array([1.0, -1.0]), ld.SpreadingRule("xor", (0, 1), 2))
        assert ld.spread([1.0, -1.0], seq2).tolist() == [1.0, -1.0, -1.0, 1.0]

    def test_output_length(self, seq):
        assert ld.spread(np.ones(7), seq).shape == (28,)

    def test_round_trip_plain_symbols(self, seq):
        x = np.array([1.0, -1.0, 1.0])
        assert np.array_equal(ld.despread(ld.spread(x, seq), seq), x)

    def test_round_trip_exact_on_arbitrary_reals(self, h_ref):
        rng = np.random.default_rng(31)
        for pg in (1, 2, 3, 4, 7, 10):
            seq = ld.derive_sequence(h_ref, ld.SpreadingRule("xor", (0, 1), pg))
            x = rng.normal(0, 1, 50)
            assert np.array_equal(ld.despread(ld.spread(x, seq), seq), x)
        # awkward decimals must survive untouched as well
        seq3 = ld.derive_sequence(h_ref, ld.SpreadingRule("xor", (0, 1), 3))
        x = np.array([0.1, -0.3, 1e-17, 7.7])
        assert np.array_equal(ld.despread(ld.spread(x, seq3), seq3), x)

    def test_all_zero_chips_give_zero_symbols(self, seq):
        assert not ld.despread(np.zeros(8), seq).any()

    def test_length_must_divide(self, seq):
        with pytest.raises(ValueError, match="multiple"):
            ld.despread(np.ones(7), seq)

    def test_noise_variance_shrinks_by_pg(self, h_ref):
        rng = np.random.default_rng(32)
        sigma2 = 0.7
        for pg in (4, 10):
            seq = ld.derive_sequence(h_ref, ld.SpreadingRule("xor", (0, 1), pg))
            n = 1_000_000
            noise = rng.normal(0, np.sqrt(sigma2), n * pg)
            out = ld.despread(noise, seq)
            assert out.var() == pytest.approx(sigma2 / pg, rel=0.02)

    def test_flat_sequence(self):
        seq = SpreadingSequence.flat(4)
        assert seq.pg == 4 and seq.rule is None
        assert seq.chips.tolist() == [1.0] * 4
        x = np.array([0.25, -1.5])
        assert np.array_equal(ld.despread(ld.spread(x, seq), seq), x)

    def test_flat_requires_positive_pg(self):
        with pytest.raises(ValueError, match="processing gain"):
            SpreadingSequence.flat(0)
