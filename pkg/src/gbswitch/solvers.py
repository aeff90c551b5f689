"""Switching-game solvers over +/-1 assignments.

The exact solver enumerates sign assignments of axes 0..m-2 with the first
coordinate of axis 0 pinned to +1 (a global sign flip of one axis never
changes the achievable value, so half the vertex set is redundant) and
closes the last axis analytically: for partial sums c, the optimal last
vector is sign(c) with value sum|c|. Enumeration runs in chunked,
vectorized passes over a fixed binary ordering chosen so that index order
equals lexicographic witness order (-1 before +1); ties between equal
values therefore always resolve to the lexicographically smallest witness,
independent of chunking or worker scheduling.

Sign convention everywhere: sign(0) = +1. The achieved value is unaffected
(a zero partial sum contributes nothing), but witnesses stay reproducible.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, NonUnimodularEntry
from .rng import generator, sign_vector
from .tensor import (
    SignTensor,
    SwitchAssignment,
    evaluate,
    make_assignment,
    partial_contraction,
)

#: Refuse exact enumeration beyond 2**30 assignments unless overridden.
EXACT_BUDGET_BITS = 30

_CHUNK_BITS = 14


class Method(enum.Enum):
    EXACT = "exact"
    MAJORITY = "majority"
    LOCAL_SEARCH = "local-search"
    RANDOM_RESTART = "random-restart"


@dataclass(frozen=True)
class SolveResult:
    """Achieved value with its witness; the witness re-evaluates to the value."""

    value: int
    witness: SwitchAssignment
    method: Method
    evaluations: int


def _checked_result(tensor: SignTensor, value: int, vectors, method: Method, evaluations: int) -> SolveResult:
    witness = make_assignment(tensor.dims, vectors)
    achieved = evaluate(tensor, witness)
    if achieved != value:
        raise AssertionError(f"witness re-evaluation mismatch: {achieved} != {value}")
    return SolveResult(value=value, witness=witness, method=method, evaluations=evaluations)


def _sign_of(c: np.ndarray) -> np.ndarray:
    return np.where(c < 0, -1, 1).astype(np.int8)


@functools.lru_cache(maxsize=16)
def _enum_block(nbits: int) -> np.ndarray:
    """All 2**nbits sign rows; row index order equals lex order (-1 < +1)."""
    idx = np.arange(1 << nbits, dtype=np.int64)
    shifts = nbits - 1 - np.arange(nbits, dtype=np.int64)
    bits = ((idx[:, None] >> shifts) & 1).astype(np.int64) * 2 - 1
    bits.setflags(write=False)
    return bits


def _signs_for_indices(idx: np.ndarray, nbits: int) -> np.ndarray:
    shifts = nbits - 1 - np.arange(nbits, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(np.int64) * 2 - 1


def _partial_vectors(bits_row: np.ndarray, m: int, n: int) -> list[np.ndarray]:
    """Free-coordinate row -> m-1 pinned sign vectors (axis 0 leads with +1)."""
    full = np.concatenate(([1], bits_row)).astype(np.int8)
    return [full[a * n:(a + 1) * n] for a in range(m - 1)]


def _batch_values(view64: np.ndarray, signs: np.ndarray, m: int, n: int) -> np.ndarray:
    """values[b] = sum_i |c_i| for the b-th partial assignment in ``signs``."""
    batch = signs.shape[0]
    full = np.concatenate((np.ones((batch, 1), dtype=np.int64), signs), axis=1)
    cur = None
    for a in range(m - 1):
        block = full[:, a * n:(a + 1) * n]
        if cur is None:
            cur = np.einsum("bi,i...->b...", block, view64)
        else:
            cur = np.einsum("bi,bi...->b...", block, cur)
    return np.abs(cur).sum(axis=1)


def exact_max(tensor: SignTensor, *, allow_large: bool = False) -> SolveResult:
    """Exact maximum of the switching form over all +/-1 assignments.

    Enumerates 2**(n(m-1)-1) partial assignments and closes the last axis
    with the majority step; refuses instances with n(m-1)-1 >
    EXACT_BUDGET_BITS unless ``allow_large`` is set.
    """
    m, n = tensor.dims.m, tensor.dims.n
    if m == 1:
        c = tensor.view().astype(np.int64)
        return _checked_result(tensor, int(np.abs(c).sum()), [_sign_of(c)], Method.EXACT, 1)
    nbits = n * (m - 1) - 1
    if nbits > EXACT_BUDGET_BITS and not allow_large:
        raise BudgetExceeded(
            f"2**{nbits} assignments exceed the 2**{EXACT_BUDGET_BITS} budget; pass allow_large=True to force"
        )
    view64 = tensor.view().astype(np.int64)
    total = 1 << nbits
    best_value = -1
    best_index = 0
    if nbits <= _CHUNK_BITS:
        values = _batch_values(view64, _enum_block(nbits), m, n)
        best_index = int(values.argmax())
        best_value = int(values[best_index])
    else:
        chunk = 1 << _CHUNK_BITS
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            values = _batch_values(view64, _signs_for_indices(idx, nbits), m, n)
            j = int(values.argmax())
            if int(values[j]) > best_value:
                best_value = int(values[j])
                best_index = start + j
    bits_row = _signs_for_indices(np.array([best_index], dtype=np.int64), nbits)[0]
    partial = _partial_vectors(bits_row, m, n)
    c = partial_contraction(tensor, m - 1, partial)
    vectors = partial + [_sign_of(c)]
    return _checked_result(tensor, best_value, vectors, Method.EXACT, total)


def majority_fix(tensor: SignTensor, partial) -> tuple[np.ndarray, int]:
    """Optimal last-axis vector for fixed +/-1 vectors on axes 0..m-2.

    Returns (sign(c), sum|c|) for the partial sums c; no other +/-1 choice
    of the last axis can do better.
    """
    vecs = [np.asarray(v) for v in partial]
    for v in vecs:
        if not np.isin(v, (-1, 1)).all():
            raise NonUnimodularEntry("majority_fix requires +/-1 partial vectors")
    c = partial_contraction(tensor, tensor.dims.m - 1, vecs)
    return _sign_of(c), int(np.abs(c).sum())


def random_restart_greedy(tensor: SignTensor, restarts: int, seed: int) -> SolveResult:
    """Best of ``restarts`` random partial assignments closed by majority_fix.

    Per-restart randomness derives from (seed, restart index); the result
    is a deterministic function of (tensor, restarts, seed), and ties keep
    the earliest restart.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    m, n = tensor.dims.m, tensor.dims.n
    best_value = -1
    best_vectors = None
    for r in range(restarts):
        rng = generator(seed, r)
        partial = [sign_vector(rng, n) for _ in range(m - 1)]
        last, value = majority_fix(tensor, partial)
        if value > best_value:
            best_value = value
            best_vectors = partial + [last]
    return _checked_result(tensor, best_value, best_vectors, Method.RANDOM_RESTART, restarts)


def local_search(tensor: SignTensor, start: SwitchAssignment, max_sweeps: int = 10_000) -> SolveResult:
    """Best-improvement hill climbing over single switch flips.

    Each sweep scores every (axis, index) flip and applies the largest
    strictly improving one, ties broken by lowest (axis, index); stops when
    no flip improves or after ``max_sweeps`` flips. The value sequence is
    strictly increasing, so termination is guaranteed.
    """
    m, n = tensor.dims.m, tensor.dims.n
    vectors = np.array(start.vectors, dtype=np.int64)
    value = evaluate(tensor, start)
    evaluations = 1
    for _ in range(max_sweeps):
        best_gain = 0
        best_pos = None
        for a in range(m):
            others = [vectors[j] for j in range(m) if j != a]
            c = partial_contraction(tensor, a, others)
            gains = -2 * vectors[a] * c
            evaluations += n
            j = int(gains.argmax())
            if int(gains[j]) > best_gain:
                best_gain = int(gains[j])
                best_pos = (a, j)
        if best_pos is None:
            break
        vectors[best_pos[0], best_pos[1]] *= -1
        value += best_gain
    return _checked_result(tensor, value, vectors.astype(np.int8), Method.LOCAL_SEARCH, evaluations)


# The eight 2x2 boards whose exact value is 2**(-1/2) * n**(3/2) = 2: the
# sign patterns with entry product -1 (row-major).
_EXTREMAL_FLAT = (
    (1, 1, 1, -1), (-1, -1, -1, 1),
    (1, 1, -1, 1), (-1, -1, 1, -1),
    (1, -1, 1, 1), (-1, 1, -1, -1),
    (-1, 1, 1, 1), (1, -1, -1, -1),
)


def classify_extremal(tensor: SignTensor) -> bool:
    """True iff the board is 2x2 and attains the minimal exact value 2.

    Exactly eight boards qualify (each equal to one listed pattern or its
    negative); no board of any other size attains 2**(-1/2) * n**(3/2).
    """
    if tensor.dims.m != 2 or tensor.dims.n != 2:
        return False
    return tuple(int(e) for e in tensor.entries) in _EXTREMAL_FLAT
