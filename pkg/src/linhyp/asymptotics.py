"""Closed-form asymptotics for the log-probability of linearity.

Two evaluators: the refined four-term closed form for 3-uniform
hypergraphs, and the general-r first/second-order closed forms written in
terms of C(n,r).  Both are evaluated in exact rational arithmetic with a
single rounding at the end, so near-cancelling terms cost no precision.
Out-of-regime inputs are evaluated anyway and flagged, never clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .polynomial import falling_factorial

REGIME_R3 = "refined_r3"
REGIME_SMALL = "general_small"
REGIME_MID = "general_mid"


@dataclass(frozen=True)
class AsymptoticEstimate:
    log_prob: float
    regime: str
    valid: bool
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "log_prob": self.log_prob,
            "regime": self.regime,
            "valid": self.valid,
            "diagnostics": self.diagnostics,
        }


def _check_p(p: Fraction) -> Fraction:
    p = Fraction(p)
    if not 0 <= p < 1:
        raise ValidationError(f"p must be in [0,1), got {p}")
    return p


def log_linearity_r3(n: int, p: Fraction) -> AsymptoticEstimate:
    """Four-term closed form for r=3:
    -(1/4) n^4 p^2 + (2/3) n^5 p^3 - (55/24) n^6 p^4 + (3/2) n^3 p^2.

    Stated for p decaying faster than n^(-7/5); the validity flag reports
    that hypothesis and its margin (in the exponent of n), nothing is
    clamped.  The unmodelled remainder is o(1) with unspecified constants,
    so it is reported as a diagnostic only.
    """
    if n < 3:
        raise ValidationError(f"need n >= 3, got {n}")
    p = _check_p(p)
    if p == 0:
        return AsymptoticEstimate(
            log_prob=0.0,
            regime=REGIME_R3,
            valid=True,
            diagnostics={"p_exponent": None, "exponent_margin": None},
        )
    nf = Fraction(n)
    value = (
        -Fraction(1, 4) * nf**4 * p**2
        + Fraction(2, 3) * nf**5 * p**3
        - Fraction(55, 24) * nf**6 * p**4
        + Fraction(3, 2) * nf**3 * p**2
    )
    # p = n^(-alpha); the hypothesis asks alpha > 7/5
    alpha = -math.log(float(p)) / math.log(n)
    margin = alpha - 7.0 / 5.0
    return AsymptoticEstimate(
        log_prob=float(value),
        regime=REGIME_R3,
        valid=margin > 0,
        diagnostics={
            "p_exponent": alpha,
            "exponent_margin": margin,
            "hypothesis": "p below n^(-7/5)",
            "term_n4p2": float(-Fraction(1, 4) * nf**4 * p**2),
            "term_n5p3": float(Fraction(2, 3) * nf**5 * p**3),
            "term_n6p4": float(-Fraction(55, 24) * nf**6 * p**4),
            "term_n3p2": float(Fraction(3, 2) * nf**3 * p**2),
        },
    )


def log_linearity_general(n: int, r: int, p: Fraction) -> AsymptoticEstimate:
    """General-r closed forms in terms of N = C(n,r).

    Small regime (p N of order n / r^2 or below):
        -( [r]_2^2 / (4 n^2) ) N^2 p^2
    Mid regime (up to p N of order n^(3/2) / r^3) adds:
        +( (3r-5) [r]_2^3 / (6 n^4) ) N^3 p^3
    The known error-term magnitudes are reported as diagnostics, never
    added to the estimate.
    """
    if r < 3:
        raise ValidationError(f"uniformity must be >= 3, got {r}")
    if n < r:
        raise ValidationError(f"need n >= r, got n={n}, r={r}")
    p = _check_p(p)
    big_n = Fraction(math.comb(n, r))
    r2 = falling_factorial(r, 2)
    if p == 0:
        return AsymptoticEstimate(
            log_prob=0.0, regime=REGIME_SMALL, valid=True, diagnostics={}
        )
    pn = p * big_n
    small_threshold = Fraction(n) / r**2
    mid_threshold = Fraction(n) * math.isqrt(n) / r**3  # n^{3/2} understated slightly
    term2 = -(r2**2) / (4 * Fraction(n) ** 2) * big_n**2 * p**2
    err2 = Fraction(r) ** 6 / Fraction(n) ** 3 * big_n**2 * p**2
    if pn <= small_threshold:
        regime = REGIME_SMALL
        valid = True
        value = term2
        diagnostics = {
            "p_times_binom": float(pn),
            "small_regime_threshold": float(small_threshold),
            "unmodelled_error_r6_scale": float(err2),
        }
    else:
        regime = REGIME_MID
        term3 = (
            Fraction(3 * r - 5)
            * r2**3
            / (6 * Fraction(n) ** 4)
            * big_n**3
            * p**3
        )
        value = term2 + term3
        valid = pn < mid_threshold
        err_sqrt = math.log(max(float(n) / r**2, math.e)) ** 3 / math.sqrt(float(pn))
        diagnostics = {
            "p_times_binom": float(pn),
            "mid_regime_threshold": float(mid_threshold),
            "unmodelled_error_r6_scale": float(err2),
            "unmodelled_error_log_over_sqrt": err_sqrt,
        }
    return AsymptoticEstimate(
        log_prob=float(value), regime=regime, valid=valid, diagnostics=diagnostics
    )
