"""Commutator witnesses: Shoda construction, pair splitting, block pairs."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from posfactor import rng as prng
from posfactor.errors import TraceObstruction
from posfactor.factorlab import (
    hermitian_pair_split,
    shoda_commutator,
    zero_diagonal_commutators,
)
from posfactor.matcore import hermitian_defect, operator_norm

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=2, max_value=7)


def _traceless(g, n):
    c = prng.complex_gaussian(g, n)
    return c - (np.trace(c) / n) * np.eye(n)


def test_zero_input_gives_zero_y():
    x, y = shoda_commutator(np.zeros((3, 3)))
    assert np.array_equal(y, np.zeros((3, 3)))
    assert operator_norm(x @ y - y @ x) == 0.0


def test_diag_1_minus_1():
    c = np.diag([1.0, -1.0]).astype(complex)
    x, y = shoda_commutator(c)
    assert operator_norm(x @ y - y @ x - c) <= 1e-10 * operator_norm(c)


def test_identity_raises_trace_obstruction():
    with pytest.raises(TraceObstruction):
        shoda_commutator(np.eye(3))


@given(seeds, dims)
def test_random_traceless_reconstruction(seed, n):
    g = prng.stream(seed, 80, n)
    c = _traceless(g, n)
    x, y = shoda_commutator(c)
    assert operator_norm(x @ y - y @ x - c) <= 1e-10 * operator_norm(c)


@given(seeds, dims)
def test_hermitian_input_gives_hermitian_x(seed, n):
    """Hermitian traceless input routes through a unitary frame."""
    g = prng.stream(seed, 81, n)
    c = _traceless(g, n)
    c = (c + c.conj().T) / 2.0
    x, y = shoda_commutator(c)
    assert hermitian_defect(x) <= 1e-12 * max(operator_norm(x), 1.0)
    assert operator_norm(x @ y - y @ x - c) <= 1e-10 * operator_norm(c)
    # for a Hermitian commutator target the second slot is skew-Hermitian
    assert operator_norm(y + y.conj().T) <= 1e-10 * max(operator_norm(y), 1.0)


@given(seeds, dims)
def test_skew_hermitian_input_gives_hermitian_pair(seed, n):
    """Skew-Hermitian traceless input yields x and y both Hermitian."""
    g = prng.stream(seed, 82, n)
    c = _traceless(g, n)
    c = (c - c.conj().T) / 2.0
    x, y = shoda_commutator(c)
    assert hermitian_defect(x) <= 1e-12 * max(operator_norm(x), 1.0)
    assert hermitian_defect(y) <= 1e-12 * max(operator_norm(y), 1.0)
    assert operator_norm(x @ y - y @ x - c) <= 1e-10 * operator_norm(c)


def test_tiny_scale_keeps_relative_accuracy():
    g = prng.stream(1, 83)
    c = 1e-9 * _traceless(g, 4)
    x, y = shoda_commutator(c)
    assert operator_norm(x @ y - y @ x - c) <= 1e-10 * operator_norm(c)


class TestHermitianPairSplit:
    @given(seeds, dims)
    def test_split_is_exact_and_hermitian(self, seed, n):
        g = prng.stream(seed, 84, n)
        x = prng.complex_gaussian(g, n)
        y = prng.complex_gaussian(g, n)
        dec = hermitian_pair_split(x, y)
        comm = x @ y - y @ x
        assert dec.residual <= 1e-12 * max(operator_norm(comm), 1.0)
        assert 1 <= len(dec.pairs) <= 2
        for _, yk in dec.pairs:
            assert hermitian_defect(yk) <= 1e-12 * max(operator_norm(yk), 1.0)

    def test_hermitian_y_collapses_to_one_pair(self):
        g = prng.stream(2, 85)
        x = prng.complex_gaussian(g, 3)
        y = prng.hermitian(g, 3)
        dec = hermitian_pair_split(x, y)
        assert len(dec.pairs) == 1

    def test_commutator_sum_matches_target(self):
        g = prng.stream(3, 86)
        x = prng.complex_gaussian(g, 4)
        y = prng.complex_gaussian(g, 4)
        dec = hermitian_pair_split(x, y)
        total = dec.commutator_sum()
        assert operator_norm(total - (x @ y - y @ x)) <= 1e-12


class TestZeroDiagonalCommutators:
    @given(seeds, dims)
    def test_exact_reconstruction(self, seed, n):
        g = prng.stream(seed, 87, n)
        a = prng.complex_gaussian(g, n)
        np.fill_diagonal(a, 0.0)
        dec = zero_diagonal_commutators(a)
        assert dec.residual <= 1e-12 * max(operator_norm(a), 1.0)
        assert len(dec.pairs) <= n * (n - 1)

    def test_block_variant(self):
        g = prng.stream(4, 88)
        a = prng.complex_gaussian(g, 6)
        k = 2
        for i in range(0, 6, k):
            a[i : i + k, i : i + k] = 0.0
        dec = zero_diagonal_commutators(a, block_size=k)
        assert dec.residual <= 1e-12 * max(operator_norm(a), 1.0)

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError):
            zero_diagonal_commutators(np.eye(3))

    def test_rejects_bad_block_size(self):
        a = np.zeros((4, 4))
        with pytest.raises(ValueError):
            zero_diagonal_commutators(a, block_size=3)
