"""Shared oracles and helpers.

The oracles here are deliberately dumb: direct index loops and full
enumeration, independent of the library's vectorized paths.
"""

import itertools

import numpy as np
import pytest

from gbswitch import DimSpec, SignTensor, evaluate, make_assignment, make_tensor


def loop_form_value(tensor: SignTensor, vectors) -> float:
    """m-fold sum by explicit index loops (no numpy contraction)."""
    m, n = tensor.dims.m, tensor.dims.n
    flat = tensor.entries
    total = 0.0
    for index in itertools.product(range(n), repeat=m):
        pos = 0
        for i in index:
            pos = pos * n + i
        term = float(flat[pos])
        for k, i in enumerate(index):
            term *= float(vectors[k][i])
        total += term
    return total


def brute_force_max(tensor: SignTensor) -> int:
    """Exact maximum by enumerating all 2**(m*n) sign assignments."""
    m, n = tensor.dims.m, tensor.dims.n
    best = None
    for bits in itertools.product((-1, 1), repeat=m * n):
        vecs = np.array(bits, dtype=np.int8).reshape(m, n)
        v = evaluate(tensor, make_assignment(tensor.dims, vecs))
        best = v if best is None else max(best, v)
    return best


def board_from_code(n: int, code: int) -> SignTensor:
    """The code-th 2-axis sign board, bit j of code driving flat entry j."""
    entries = [1 if (code >> j) & 1 else -1 for j in range(n * n)]
    return make_tensor(DimSpec(2, n), entries)


def all_boards(n: int):
    for code in range(1 << (n * n)):
        yield board_from_code(n, code)


def all_sign_vectors(n: int) -> np.ndarray:
    """All 2**n sign vectors of length n, one per row."""
    idx = np.arange(1 << n)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.int64) * 2 - 1


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
