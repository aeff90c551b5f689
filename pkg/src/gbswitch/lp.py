"""Maximization of the switching form over lp unit balls.

With all axes but one frozen, the form is linear in the remaining vector
and its maximizer over the lp ball has a closed form through Holder
duality. Cycling that update over the axes gives a monotone ascent; the
terminal witness is feasible, so the achieved value is a certified lower
bound on the true lp game value (never claimed to attain it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import INF, as_exponent, km_constant
from .errors import InvalidExponent
from .rng import generator, sign_vector
from .tensor import SignTensor, evaluate_real, partial_contraction

_UNIT_TOL = 1e-12


def lp_norm(v: np.ndarray, p: float) -> float:
    """lp norm of a vector, overflow-safe for large p."""
    a = np.abs(np.asarray(v, dtype=np.float64))
    if a.size == 0 or not a.any():
        return 0.0
    if math.isinf(p):
        return float(a.max())
    top = float(a.max())
    return top * float(((a / top) ** p).sum() ** (1.0 / p))


@dataclass(frozen=True)
class LpPoint:
    """Point on the unit lp sphere; construction re-checks the norm."""

    p: float
    coords: np.ndarray

    def __post_init__(self) -> None:
        coords = np.asarray(self.coords, dtype=np.float64)
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        if abs(lp_norm(coords, self.p) - 1.0) > _UNIT_TOL:
            raise ValueError(f"coords are not on the unit l{self.p} sphere")


@dataclass(frozen=True)
class AscentTrace:
    """Per-sweep values of one ascent run; the sequence is nondecreasing."""

    values: tuple[float, ...]
    converged: bool
    sweeps: int


@dataclass(frozen=True)
class AscentResult:
    value: float
    points: tuple[LpPoint, ...]
    trace: AscentTrace


def _exponent_float(p) -> float:
    pc = as_exponent(p)
    if pc != INF and pc < 1:
        raise InvalidExponent(f"lp exponent must satisfy p >= 1, got {pc}")
    return math.inf if pc == INF else float(pc)


def _dual_coords(c: np.ndarray, pf: float) -> tuple[np.ndarray, float]:
    n = c.size
    if not c.any():
        basis = np.zeros(n)
        basis[0] = 1.0
        return basis, 0.0
    if math.isinf(pf):
        return np.where(c < 0, -1.0, 1.0), float(np.abs(c).sum())
    if pf == 1.0:
        j = int(np.abs(c).argmax())
        x = np.zeros(n)
        x[j] = 1.0 if c[j] >= 0 else -1.0
        return x, float(abs(c[j]))
    q = pf / (pf - 1.0)
    value = lp_norm(c, q)
    x = np.where(c < 0, -1.0, 1.0) * (np.abs(c) / value) ** (q - 1.0)
    norm = lp_norm(x, pf)
    if norm > 0:
        x = x / norm
    return x, value


def dual_update(c, p) -> tuple[LpPoint, float]:
    """argmax and max of <c, x> over the unit lp sphere.

    For 1 < p < inf with q = p/(p-1): x_i = sign(c_i)|c_i|^(q-1)/||c||_q^(q-1)
    and the value is ||c||_q. For p = inf: x = sign(c), value ||c||_1. For
    p = 1: all mass on the lowest index attaining max|c_i|, value max|c_i|.
    A zero c returns the first standard basis vector with value 0.
    """
    pf = _exponent_float(p)
    coords, value = _dual_coords(np.asarray(c, dtype=np.float64), pf)
    return LpPoint(pf, coords), value


def _start_vectors(rng, m: int, n: int, pf: float) -> list[np.ndarray]:
    # random sign vectors pushed onto the lp sphere; for p = inf they are
    # already vertices of the ball
    scale = 1.0 if math.isinf(pf) else n ** (-1.0 / pf)
    return [sign_vector(rng, n).astype(np.float64) * scale for _ in range(m)]


def alternating_max(
    tensor: SignTensor,
    p,
    *,
    starts: int = 8,
    sweeps_max: int = 1000,
    tol: float = 1e-10,
    seed: int = 0,
) -> AscentResult:
    """Best-of-starts cyclic ascent over the lp spheres of each axis.

    Each sweep replaces axis k's vector with the dual_update of the
    partial contraction over axis k, for k = 0..m-1 in order; a start
    stops when
    the per-sweep improvement drops below ``tol`` relative to the current
    value or after ``sweeps_max`` sweeps (reported via the trace; running
    out of sweeps is not an error). Per-start randomness derives from
    (seed, start index); ties keep the earliest start.
    """
    pf = _exponent_float(p)
    if starts < 1:
        raise ValueError(f"starts must be >= 1, got {starts}")
    if sweeps_max < 1:
        raise ValueError(f"sweeps_max must be >= 1, got {sweeps_max}")
    m = tensor.dims.m
    best: AscentResult | None = None
    for s in range(starts):
        rng = generator(seed, s)
        vecs = _start_vectors(rng, m, tensor.dims.n, pf)
        prev = evaluate_real(tensor, vecs)
        values: list[float] = []
        converged = False
        value = prev
        for _ in range(sweeps_max):
            for k in range(m):
                c = partial_contraction(tensor, k, [vecs[j] for j in range(m) if j != k])
                vecs[k], value = _dual_coords(c, pf)
            values.append(value)
            if value - prev <= tol * max(abs(value), abs(prev), 1e-12):
                converged = True
                break
            prev = value
        trace = AscentTrace(values=tuple(values), converged=converged, sweeps=len(values))
        if best is None or value > best.value:
            best = AscentResult(value=value, points=tuple(LpPoint(pf, v) for v in vecs), trace=trace)
    return best


def g_lower_bound_formula(m: int, n: int, p) -> float:
    """Proven lower bound n**((mp+p-2m)/(2p)) / (1.3 m**0.365) on the lp game value.

    Valid for p > 2m/(m+1); at p = inf the exponent is the limit (m+1)/2.
    """
    pc = as_exponent(p)
    threshold = Fraction(2 * m, m + 1)
    if pc == INF:
        expo = Fraction(m + 1, 2)
    else:
        if pc <= threshold:
            raise InvalidExponent(f"lower bound requires p > 2m/(m+1) = {threshold}, got {pc}")
        expo = (m * pc + pc - 2 * m) / (2 * pc)
    return float(n) ** float(expo) / km_constant(m)


def weak_l1_norm(n: int, p) -> float:
    """sup of sum|phi_j| over the unit ball of the dual exponent, n**(1/p).

    Equals dual_update(all-ones, p/(p-1)).value; the p = inf case is 1.
    """
    pc = as_exponent(p)
    if pc == INF:
        return 1.0
    if pc <= 1:
        raise InvalidExponent(f"weak_l1_norm requires p > 1, got {pc}")
    return float(n) ** float(1 / pc)
