"""Power-split optimization: per-user minima and the min-max fair point.

The exact SOPs are unimodal in alpha, so golden-section search finds each
user's minimizer. The min-max problem is solved by candidate enumeration:
the near-user minimizer, the far-user minimizer, and the equal-SOP crossing
are the only stationary configurations, so the global optimum is whichever
of the three achieves the smallest max(s_o1, s_o2).

High-SNR counterparts have closed forms; targets at exactly zero rate push
them onto the boundary of the admissible window and are flagged degenerate
rather than clamped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from .channel import ChannelStats
from .rates import ALPHA_MAX, ALPHA_MIN
from .sop import (
    TargetRates,
    asymptotic_sop_far,
    asymptotic_sop_near,
    exact_sop_far,
    exact_sop_near,
)

__all__ = [
    "INV_PHI",
    "GssConfig",
    "GssResult",
    "gss_minimize",
    "optimal_pa_near",
    "optimal_pa_far",
    "ClosedFormAlpha",
    "optimal_pa_near_asymptotic",
    "optimal_pa_far_asymptotic",
    "equal_sop_alpha",
    "equal_sop_alpha_asymptotic",
    "Candidate",
    "CandidateSet",
    "MinMaxOutcome",
    "minmax_pa",
    "minmax_pa_asymptotic",
]

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # interval reduction ratio, 0.618...


@dataclass(frozen=True)
class GssConfig:
    lower: float = ALPHA_MIN
    upper: float = ALPHA_MAX
    tolerance: float = 0.01

    def __post_init__(self) -> None:
        if not (0.0 <= self.lower < self.upper <= 1.0):
            raise ValueError("need 0 <= lower < upper <= 1")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")


class GssResult(NamedTuple):
    alpha: float
    value: float


def gss_minimize(objective: Callable[[float], float], config: Optional[GssConfig] = None) -> GssResult:
    """Golden-section search for the minimum of a unimodal objective."""
    cfg = config if config is not None else GssConfig()

    def evaluate(x: float) -> float:
        v = float(objective(x))
        if not math.isfinite(v):
            raise ValueError(f"objective returned non-finite value {v!r} at alpha={x:.8g}")
        return v

    a, b = cfg.lower, cfg.upper
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = evaluate(c), evaluate(d)
    while b - a > cfg.tolerance:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = evaluate(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = evaluate(d)
    mid = 0.5 * (a + b)
    return GssResult(alpha=mid, value=evaluate(mid))


def optimal_pa_near(stats: ChannelStats, targets: TargetRates, config: Optional[GssConfig] = None) -> GssResult:
    """Power split minimizing the near user's exact SOP."""
    return gss_minimize(lambda a: exact_sop_near(stats, a, targets).value, config)


def optimal_pa_far(stats: ChannelStats, targets: TargetRates, config: Optional[GssConfig] = None) -> GssResult:
    """Power split minimizing the far user's exact SOP."""
    return gss_minimize(lambda a: exact_sop_far(stats, a, targets).value, config)


class ClosedFormAlpha(NamedTuple):
    alpha: float
    degenerate: bool  # True when the formula leaves the admissible open window


def optimal_pa_near_asymptotic(targets: TargetRates) -> ClosedFormAlpha:
    """Closed-form high-SNR minimizer of the near user's SOP.

    Independent of the channel statistics and the SNR; depends on the target
    rate only. A zero target rate collapses it onto alpha = 0.
    """
    pi1 = targets.pi1
    if pi1 == 1.0:
        return ClosedFormAlpha(0.0, True)
    return ClosedFormAlpha(-(pi1 - 1.0) + math.sqrt(pi1 * (pi1 - 1.0)), False)


def optimal_pa_far_asymptotic(targets: TargetRates) -> ClosedFormAlpha:
    """Closed-form high-SNR minimizer of the far user's SOP."""
    pi2 = targets.pi2
    if pi2 == 1.0:
        return ClosedFormAlpha(1.0, True)
    return ClosedFormAlpha(pi2 - math.sqrt(pi2 * (pi2 - 1.0)), False)


_BISECT_MAX_ITER = 10_000


def equal_sop_alpha(
    stats: ChannelStats,
    targets: TargetRates,
    tol: float = 1e-8,
    lower: float = ALPHA_MIN,
    upper: float = ALPHA_MAX,
) -> Optional[float]:
    """Power split where both users' exact SOPs coincide, or None.

    Bisection on g(alpha) = s_o1 - s_o2; terminates on |g| <= tol. Returns
    None when g has the same sign at both interval ends (no crossing to
    bracket), in which case the caller drops this candidate.
    """
    def g(a: float) -> float:
        return exact_sop_near(stats, a, targets).value - exact_sop_far(stats, a, targets).value

    ga, gb = g(lower), g(upper)
    if abs(ga) <= tol:
        return lower
    if abs(gb) <= tol:
        return upper
    if ga * gb > 0.0:
        return None
    a, b = lower, upper
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (a + b)
        gm = g(mid)
        if abs(gm) <= tol:
            return mid
        if ga * gm < 0.0:
            b, gb = mid, gm
        else:
            a, ga = mid, gm
    raise RuntimeError(f"equal-SOP bisection failed to reach |g| <= {tol:g}")


def equal_sop_alpha_asymptotic(stats: ChannelStats, targets: TargetRates) -> ClosedFormAlpha:
    """Closed-form high-SNR equal-SOP power split; may land outside (0, 1)."""
    lam1, lam2 = stats.lambda1, stats.lambda2
    alpha3 = (targets.pi2 * lam1 + lam2 * (1.0 - targets.pi1)) / (lam1 + lam2)
    return ClosedFormAlpha(alpha3, not (ALPHA_MIN <= alpha3 <= ALPHA_MAX))


@dataclass(frozen=True)
class Candidate:
    alpha: float
    so1: float
    so2: float

    @property
    def max_sop(self) -> float:
        return max(self.so1, self.so2)


@dataclass(frozen=True)
class CandidateSet:
    """Stationary candidates; alpha3 is None when no crossing exists."""

    alpha1: Optional[Candidate]
    alpha2: Optional[Candidate]
    alpha3: Optional[Candidate]

    def present(self) -> list:
        return [c for c in (self.alpha1, self.alpha2, self.alpha3) if c is not None]


@dataclass(frozen=True)
class MinMaxOutcome:
    candidates: CandidateSet
    selected: float
    objective: float
    kind: str  # "exact" | "asymptotic"


def _select(candidates: CandidateSet, kind: str) -> MinMaxOutcome:
    pool = candidates.present()
    if not pool:
        raise RuntimeError("no feasible power-split candidate to select from")
    # Ties break toward the smaller alpha so reruns are reproducible.
    best = min(pool, key=lambda c: (c.max_sop, c.alpha))
    return MinMaxOutcome(candidates=candidates, selected=best.alpha, objective=best.max_sop, kind=kind)


def minmax_pa(stats: ChannelStats, targets: TargetRates, config: Optional[GssConfig] = None) -> MinMaxOutcome:
    """Global min-max fair power split over the exact SOPs."""
    def evaluate(alpha: float) -> Candidate:
        return Candidate(
            alpha=alpha,
            so1=exact_sop_near(stats, alpha, targets).value,
            so2=exact_sop_far(stats, alpha, targets).value,
        )

    near = evaluate(optimal_pa_near(stats, targets, config).alpha)
    far = evaluate(optimal_pa_far(stats, targets, config).alpha)
    crossing_alpha = equal_sop_alpha(stats, targets)
    crossing = evaluate(crossing_alpha) if crossing_alpha is not None else None
    return _select(CandidateSet(alpha1=near, alpha2=far, alpha3=crossing), kind="exact")


def minmax_pa_asymptotic(stats: ChannelStats, targets: TargetRates) -> MinMaxOutcome:
    """Min-max fair power split over the high-SNR SOP approximations.

    Degenerate or out-of-window closed forms are dropped before selection;
    with both target rates zero the crossing candidate always survives.
    """
    def evaluate(alpha: float) -> Candidate:
        return Candidate(
            alpha=alpha,
            so1=asymptotic_sop_near(stats, alpha, targets),
            so2=asymptotic_sop_far(stats, alpha, targets),
        )

    def admit(form: ClosedFormAlpha) -> Optional[Candidate]:
        if form.degenerate or not (ALPHA_MIN <= form.alpha <= ALPHA_MAX):
            return None
        return evaluate(form.alpha)

    return _select(
        CandidateSet(
            alpha1=admit(optimal_pa_near_asymptotic(targets)),
            alpha2=admit(optimal_pa_far_asymptotic(targets)),
            alpha3=admit(equal_sop_alpha_asymptotic(stats, targets)),
        ),
        kind="asymptotic",
    )
