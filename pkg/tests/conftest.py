"""Shared fixtures: a small hand-checkable code and a mid-size PEG code."""

import pytest

import ldpc_dsss as ld

# 5 checks x 10 columns, rank 4, shortest Tanner cycle of length 6. Small
# enough to enumerate all 2^6 codewords by hand or brute force.
REF_ROWS = [
    [0, 1, 2, 3],
    [0, 4, 5, 6],
    [1, 4, 7, 8],
    [2, 5, 7, 9],
    [3, 6, 8, 9],
]


@pytest.fixture
def h_ref() -> ld.ParityCheckMatrix:
    return ld.ParityCheckMatrix(5, 10, [list(r) for r in REF_ROWS])


@pytest.fixture(scope="session")
def code_256():
    """(H, G) for a degree-3 PEG code with 128 checks over 256 columns."""
    h = ld.peg_construct(256, 128, 3, seed=1)
    return h, ld.derive_generator(h)
