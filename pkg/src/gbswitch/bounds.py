"""Exponent and constant formulas for unimodular multilinear forms.

Covers the Hardy-Littlewood summability exponents, the sharp unimodular
exponent with its admissible / non-admissible / unknown bands, the
Kahane-Salem-Zygmund norm exponent, the l_r blow-up rates, the Haagerup
constant f(p), the digamma/Gamma closed form of the Bohnenblust-Hille-type
asymptotic constant, and the 1.3 * m**0.365 working constant.

Exponents are exact: ``p`` and ``r`` may be int, Fraction, float, or
math.inf. Finite inputs are canonicalized to Fraction and every exponent
formula is evaluated in rational arithmetic, so classification never flips
on float error at boundaries such as p = 2m/(m+1). Infinity is treated as
the closed-form limit, never as a large float.

Note on f(p): the normalization here divides by Gamma(3/2), which is the
choice that makes f(2) = 1 and f(1) = sqrt(pi/2) and reproduces the
asymptotic constant table computed by ``bh_asymptotic_constant``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import InvalidExponent
from .special import EULER_GAMMA, _digamma_series, harmonic, log_gamma

Exponent = Union[int, float, Fraction]

INF = math.inf

#: Exponent of m in the exact form of the working constant: (2 - ln 2 - gamma)/2.
KM_EXPONENT_LIMIT = (2.0 - math.log(2.0) - EULER_GAMMA) / 2.0


def as_exponent(p: Exponent, *, name: str = "p") -> Union[Fraction, float]:
    """Canonicalize to Fraction (finite) or math.inf."""
    if isinstance(p, bool):
        raise InvalidExponent(f"{name} must be a number, got bool")
    if isinstance(p, (int, Fraction)):
        return Fraction(p)
    if isinstance(p, float):
        if math.isinf(p) and p > 0:
            return INF
        if math.isnan(p) or math.isinf(p):
            raise InvalidExponent(f"{name} must be a positive real or inf, got {p}")
        return Fraction(p)
    raise InvalidExponent(f"{name} must be int, float, Fraction, or inf, got {type(p).__name__}")


def _check_degree(m: int, minimum: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < minimum:
        raise InvalidExponent(f"degree m must be an integer >= {minimum}, got {m!r}")


def _unimodular_threshold(m: int) -> Fraction:
    return Fraction(2 * m, m + 1)


def hl_exponent(m: int, p: Exponent) -> Fraction:
    """Summability exponent of the Hardy-Littlewood inequalities.

    p/(p-m) on m < p <= 2m, 2mp/(mp+p-2m) on p >= 2m (the two agree at
    p = 2m), and the limit 2m/(m+1) at p = inf.
    """
    _check_degree(m, 2)
    pc = as_exponent(p)
    if pc == INF:
        return Fraction(2 * m, m + 1)
    if pc <= m:
        raise InvalidExponent(f"hl_exponent requires p > m, got p={pc}, m={m}")
    if pc <= 2 * m:
        return pc / (pc - m)
    return 2 * m * pc / (m * pc + pc - 2 * m)


def ksz_exponent(m: int, p: Exponent) -> Fraction:
    """Norm exponent of the random-signs (Kahane-Salem-Zygmund) tensor.

    max{1/2 + m(1/2 - 1/p), 1 - 1/p}; equals (m+1)/2 at p = inf.
    """
    _check_degree(m, 1)
    pc = as_exponent(p)
    if pc == INF:
        return Fraction(m + 1, 2)
    if pc < 1:
        raise InvalidExponent(f"ksz_exponent requires p >= 1, got {pc}")
    first = Fraction(1, 2) + m * (Fraction(1, 2) - 1 / pc)
    second = 1 - 1 / pc
    return max(first, second)


class RegionKind(enum.Enum):
    ADMISSIBLE = "admissible"
    NON_ADMISSIBLE = "non-admissible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RegionVerdict:
    """Classification of the optimal summability exponent at a given (m, p).

    ADMISSIBLE carries the proven sharp exponent; UNKNOWN carries the
    interval [lower, upper] the optimal exponent is known to lie in
    (upper may be math.inf).
    """

    kind: RegionKind
    sharp_exponent: Optional[Fraction] = None
    interval: Optional[tuple] = None


def unimodular_sharp_exponent(m: int, p: Exponent) -> RegionVerdict:
    """Sharp exponent status for unimodular m-linear forms on (lp^n)^m.

    p >= 2: sharp exponent 2mp/(mp+p-2m) (proven two-sided).
    2m/(m+1) < p < 2: optimal exponent in [mp/(p-1), 2mp/(mp+p-2m)].
    1 < p <= 2m/(m+1): optimal exponent in [mp/(p-1), inf).
    """
    _check_degree(m, 2)
    pc = as_exponent(p)
    if pc == INF:
        return RegionVerdict(RegionKind.ADMISSIBLE, sharp_exponent=Fraction(2 * m, m + 1))
    if pc <= 1:
        raise InvalidExponent(f"unimodular_sharp_exponent requires p > 1, got {pc}")
    if pc >= 2:
        sharp = 2 * m * pc / (m * pc + pc - 2 * m)
        return RegionVerdict(RegionKind.ADMISSIBLE, sharp_exponent=sharp)
    lower = m * pc / (pc - 1)
    if pc > _unimodular_threshold(m):
        upper = 2 * m * pc / (m * pc + pc - 2 * m)
        return RegionVerdict(RegionKind.UNKNOWN, interval=(lower, upper))
    return RegionVerdict(RegionKind.UNKNOWN, interval=(lower, INF))


def classify_point(m: int, p: Exponent, r: Exponent) -> RegionKind:
    """Band of a candidate summability exponent r at (m, p).

    The lr norms shrink as r grows, so everything at or above a proven
    exponent is admissible and everything below a proven lower bound is
    non-admissible; the gap, where it exists, is unknown.
    """
    rc = as_exponent(r, name="r")
    if rc != INF and rc <= 0:
        raise InvalidExponent(f"r must be > 0, got {rc}")
    verdict = unimodular_sharp_exponent(m, p)
    if verdict.kind is RegionKind.ADMISSIBLE:
        return RegionKind.ADMISSIBLE if rc >= verdict.sharp_exponent else RegionKind.NON_ADMISSIBLE
    lower, upper = verdict.interval
    if rc >= upper:
        return RegionKind.ADMISSIBLE
    if rc < lower:
        return RegionKind.NON_ADMISSIBLE
    return RegionKind.UNKNOWN


def blowup_exponent(m: int, p: Exponent, r: Exponent) -> Fraction:
    """Power of n needed when the sharp lr norm is replaced by a smaller r.

    max{(2mr + 2mp - mpr - pr)/(2pr), 0}; at p = inf the limit
    max{(2m - (m+1)r)/(2r), 0}. Zero exactly from r = 2mp/(mp+p-2m) on.
    """
    _check_degree(m, 1)
    rc = as_exponent(r, name="r")
    pc = as_exponent(p)
    if rc == INF or rc <= 0:
        raise InvalidExponent(f"blow-up exponent requires finite r > 0, got {rc}")
    if pc != INF and pc <= _unimodular_threshold(m):
        raise InvalidExponent(f"blow-up exponent requires p > 2m/(m+1) = {_unimodular_threshold(m)}, got {pc}")
    if pc == INF:
        value = (2 * m - (m + 1) * rc) / (2 * rc)
    else:
        value = (2 * m * rc + 2 * m * pc - m * pc * rc - pc * rc) / (2 * pc * rc)
    return max(value, Fraction(0))


def blowup_lower_exponent(m: int, p: Exponent, r: Exponent) -> Fraction:
    """Companion lower-region rate max{(mp + r - pr)/(pr), 0}.

    This is the proven lower bound on the blow-up power in the
    2m/(m+1) < p < 2 gap (limit max{m/r - 1, 0} at p = inf).
    """
    _check_degree(m, 1)
    rc = as_exponent(r, name="r")
    pc = as_exponent(p)
    if rc == INF or rc <= 0:
        raise InvalidExponent(f"blow-up exponent requires finite r > 0, got {rc}")
    if pc != INF and pc <= _unimodular_threshold(m):
        raise InvalidExponent(f"blow-up exponent requires p > 2m/(m+1) = {_unimodular_threshold(m)}, got {pc}")
    if pc == INF:
        value = Fraction(m, 1) / rc - 1
    else:
        value = (m * pc + rc - pc * rc) / (pc * rc)
    return max(value, Fraction(0))


def conjecture_exponent(m: int, p: Exponent, r: Optional[Exponent] = None):
    """Conjectured (UNVERIFIED) exponents outside the proven range.

    Without r: the conjectured optimal summability exponent, mp/(p-1) for
    1 <= p <= 2 (infinite at p = 1) and 2mp/(mp+p-2m) for p >= 2.
    With r: the conjectured blow-up power, max{(mp+r-pr)/(pr), 0} for
    1 < p <= 2 and the proven max{(2mr+2mp-mpr-pr)/(2pr), 0} for p >= 2.

    Values carry no verification; harness output tags them UNVERIFIED.
    """
    _check_degree(m, 2)
    pc = as_exponent(p)
    if r is None:
        if pc == INF:
            return Fraction(2 * m, m + 1)
        if pc < 1:
            raise InvalidExponent(f"conjectured exponent requires p >= 1, got {pc}")
        if pc >= 2:
            return 2 * m * pc / (m * pc + pc - 2 * m)
        if pc == 1:
            return INF
        return m * pc / (pc - 1)
    rc = as_exponent(r, name="r")
    if rc == INF or rc <= 0:
        raise InvalidExponent(f"r must be finite and > 0, got {rc}")
    if pc == INF or pc >= 2:
        if pc == INF:
            return max((2 * m - (m + 1) * rc) / (2 * rc), Fraction(0))
        return max((2 * m * rc + 2 * m * pc - m * pc * rc - pc * rc) / (2 * pc * rc), Fraction(0))
    if pc <= 1:
        raise InvalidExponent(f"conjectured blow-up requires p > 1, got {pc}")
    return max((m * pc + rc - pc * rc) / (pc * rc), Fraction(0))


# --- constants ---------------------------------------------------------------


def haagerup_f(p: Exponent) -> float:
    """f(p) = (2**((p-2)/2) * Gamma((p+1)/2) / Gamma(3/2))**(-1) on 1 <= p <= 2."""
    pc = as_exponent(p)
    if pc == INF or not 1 <= pc <= 2:
        raise InvalidExponent(f"haagerup_f requires 1 <= p <= 2, got {pc}")
    pf = float(pc)
    log_f = -((pf - 2.0) / 2.0) * math.log(2.0) - log_gamma((pf + 1.0) / 2.0) + log_gamma(1.5)
    return math.exp(log_f)


def bh_asymptotic_constant(m: int) -> float:
    """Asymptotic constant prod_{k=2}^m f(2(k-1)/k) of the degree-m inequality.

    Internally cross-checked against the digamma closed form
    2**(psi(m+1) + gamma - 1) * prod Gamma(3/2)/Gamma((3k-2)/(2k)),
    which must agree to 1e-10 relative (the identity psi(m+1) + gamma = H_m
    links the two routes).
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    lg32 = log_gamma(1.5)
    gamma_terms = [lg32 - log_gamma((3 * k - 2) / (2 * k)) for k in range(2, m + 1)]
    via_product = math.exp(math.fsum(gamma_terms) + (harmonic(m) - 1.0) * math.log(2.0))
    psi = _digamma_series(float(m + 1))
    via_digamma = math.exp(math.fsum(gamma_terms) + (psi + EULER_GAMMA - 1.0) * math.log(2.0))
    if abs(via_product - via_digamma) > 1e-10 * abs(via_digamma):
        raise ArithmeticError(
            f"internal cross-check failed at m={m}: {via_product!r} vs {via_digamma!r}"
        )
    return via_product


def km_constant(m: int) -> float:
    """Working constant 1.3 * m**0.365 of the lower bounds.

    The 0.365 power is the standard rounding of the exact exponent
    (2 - ln 2 - gamma)/2, exposed as KM_EXPONENT_LIMIT.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    return 1.3 * m ** 0.365
