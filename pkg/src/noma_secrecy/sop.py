"""Secrecy outage probabilities: exact quadrature and high-SNR closed forms.

The exact SOPs are semi-infinite integrals of the form

    s_o = 1 - exp(-A/lam_e) * E_y[ exp(-Pi*y / ((c*y + 1) * lam_e)) ],

with y exponential of mean lam_i (the other user's gain), c the interfering
power slope, and A the target-rate offset. Substituting u = 1 - exp(-y/(4*lam_i))
maps (0, inf) onto (0, 1) and turns the exponential weight into the polynomial
4*(1-u)**3, leaving a transformed integrand smooth enough that fixed-order
Gauss-Legendre with node doubling converges to ~1e-10 within a few refinements
across the whole admissible power-split window.

The asymptotic forms drop the "+1" in the SINR denominators, valid once the
received SNR is large; they admit closed-form optimal power splits.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channel import ChannelStats
from .rates import ALPHA_MAX, ALPHA_MIN, PowerSplit

__all__ = [
    "TargetRates",
    "SopValue",
    "SopPair",
    "exact_sop_near",
    "exact_sop_far",
    "asymptotic_sop_near",
    "asymptotic_sop_far",
    "sop_pair",
    "log_integrand_near",
    "log_integrand_far",
]

_MIN_NODES = 32
_MAX_NODES = 2048
_REFINE_TOL = 1e-10  # stop doubling once successive estimates agree this well
_ACCEPT_TOL = 1e-9   # contract on the reported absolute quadrature error

# The gain substitution is stretched by this factor: y = -4*lam*ln(1-u) with
# Jacobian weight 4*(1-u)**3. Without the stretch, parameter corners with
# (interfering slope)*lam << 1 leave a residual (1-u)**gamma factor with
# fractional gamma, whose endpoint singularity stalls Gauss-Legendre; the
# stretch turns it into (1-u)**(3+4*gamma), smooth enough for fast doubling.
_TAIL_STRETCH = 4.0

_GL_CACHE: dict = {}


@dataclass(frozen=True)
class TargetRates:
    """Per-user target secrecy rates (bits/s/Hz) and their exponentials."""

    rth1: float
    rth2: float

    def __post_init__(self) -> None:
        if self.rth1 < 0.0 or self.rth2 < 0.0:
            raise ValueError("target secrecy rates must be nonnegative")

    @property
    def pi1(self) -> float:
        return 2.0 ** self.rth1

    @property
    def pi2(self) -> float:
        return 2.0 ** self.rth2


class SopValue(NamedTuple):
    value: float | np.ndarray
    quad_error: float | np.ndarray


@dataclass(frozen=True)
class SopPair:
    """Both users' outage probabilities at one power split."""

    alpha: float
    so1: float
    so2: float
    kind: str  # "exact" | "asymptotic" | "empirical"
    quad_error: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 <= self.so1 <= 1.0 and 0.0 <= self.so2 <= 1.0):
            raise ValueError("outage probabilities must lie in [0, 1]")
        if self.quad_error < 0.0:
            raise ValueError("quadrature error must be nonnegative")


def _gl_unit_nodes(order: int):
    if order not in _GL_CACHE:
        x, w = np.polynomial.legendre.leggauss(order)
        _GL_CACHE[order] = (0.5 * (x + 1.0), 0.5 * w)
    return _GL_CACHE[order]


def _validated_alpha(alpha) -> np.ndarray:
    if isinstance(alpha, PowerSplit):
        alpha = float(alpha)
    a = np.asarray(alpha, dtype=float)
    if not np.all((a >= ALPHA_MIN) & (a <= ALPHA_MAX)):
        raise ValueError(f"power split must lie within [{ALPHA_MIN:g}, {ALPHA_MAX:g}]")
    return a


def _survival_integral(pi: float, slope: np.ndarray, lam_exp: float, lam_int: float, scale: np.ndarray):
    """E_y[exp(-pi*y/((slope*y+1)*lam_exp))] for y ~ Exponential(lam_int).

    Vectorized over slope; returns (estimates, last-refinement differences).
    Convergence is judged on scale * |difference|, because the caller folds
    the integral into the outage value with that weight and the error
    contract applies to the outage value, not the raw integral.
    """
    slope = np.atleast_1d(slope)
    order = _MIN_NODES
    prev = None
    while True:
        u, w = _gl_unit_nodes(order)
        y = -_TAIL_STRETCH * lam_int * np.log1p(-u)
        weight = w * _TAIL_STRETCH * (1.0 - u) ** (_TAIL_STRETCH - 1.0)
        est = weight @ np.exp(-pi * y[:, None] / ((slope[None, :] * y[:, None] + 1.0) * lam_exp))
        if prev is not None:
            diff = np.abs(est - prev)
            worst = float((scale * diff).max())
            if worst < _REFINE_TOL or (order >= _MAX_NODES and worst <= _ACCEPT_TOL):
                return est, diff
            if order >= _MAX_NODES:
                raise RuntimeError(
                    f"outage quadrature did not converge: error {worst:.3e} "
                    f"after {order} nodes (tolerance {_ACCEPT_TOL:g})"
                )
        prev = est
        order *= 2


def _exact_sop(pi: float, slope, shift, lam_exp: float, lam_int: float, scalar: bool) -> SopValue:
    prefactor = np.exp(-np.atleast_1d(shift) / lam_exp)
    integral, diff = _survival_integral(pi, slope, lam_exp, lam_int, prefactor)
    value = np.clip(1.0 - prefactor * integral, 0.0, 1.0)
    quad_error = prefactor * diff
    if scalar:
        return SopValue(float(value[0]), float(quad_error[0]))
    return SopValue(value, quad_error)


def exact_sop_near(stats: ChannelStats, alpha, targets: TargetRates) -> SopValue:
    """Near user's exact SOP; alpha may be a scalar or an array (curve mode)."""
    a = _validated_alpha(alpha)
    pi1 = targets.pi1
    slope = (1.0 - a) * stats.rho_t
    shift = (pi1 - 1.0) / (a * stats.rho_t)
    return _exact_sop(pi1, slope, shift, stats.lambda1, stats.lambda2, scalar=a.ndim == 0)


def exact_sop_far(stats: ChannelStats, alpha, targets: TargetRates) -> SopValue:
    """Far user's exact SOP; alpha may be a scalar or an array (curve mode)."""
    a = _validated_alpha(alpha)
    pi2 = targets.pi2
    slope = a * stats.rho_t
    shift = (pi2 - 1.0) / ((1.0 - a) * stats.rho_t)
    return _exact_sop(pi2, slope, shift, stats.lambda2, stats.lambda1, scalar=a.ndim == 0)


def asymptotic_sop_near(stats: ChannelStats, alpha, targets: TargetRates):
    a = _validated_alpha(alpha)
    value = 1.0 - np.exp((targets.pi1 + a - 1.0) / (a * (a - 1.0) * stats.rho_t * stats.lambda1))
    if a.ndim == 0:
        return float(value)
    return value


def asymptotic_sop_far(stats: ChannelStats, alpha, targets: TargetRates):
    a = _validated_alpha(alpha)
    value = 1.0 - np.exp((targets.pi2 - a) / (a * (a - 1.0) * stats.rho_t * stats.lambda2))
    if a.ndim == 0:
        return float(value)
    return value


def sop_pair(stats: ChannelStats, alpha: float, targets: TargetRates, kind: str = "exact") -> SopPair:
    if kind == "exact":
        so1 = exact_sop_near(stats, alpha, targets)
        so2 = exact_sop_far(stats, alpha, targets)
        return SopPair(
            alpha=float(alpha),
            so1=so1.value,
            so2=so2.value,
            kind="exact",
            quad_error=max(so1.quad_error, so2.quad_error),
        )
    if kind == "asymptotic":
        return SopPair(
            alpha=float(alpha),
            so1=asymptotic_sop_near(stats, alpha, targets),
            so2=asymptotic_sop_far(stats, alpha, targets),
            kind="asymptotic",
        )
    raise ValueError(f"unknown SOP kind {kind!r}")


def log_integrand_near(stats: ChannelStats, alpha, targets: TargetRates, y):
    """log of the near user's outage integrand at gain value y.

    Concavity of this function in alpha (at every fixed y) is what makes the
    integral, and hence the SOP, unimodal in alpha.
    """
    a = np.asarray(alpha, dtype=float)
    y = np.asarray(y, dtype=float)
    pi1 = targets.pi1
    return (
        -pi1 * y / (((1.0 - a) * stats.rho_t * y + 1.0) * stats.lambda1)
        - y / stats.lambda2
        - (pi1 - 1.0) / (a * stats.rho_t * stats.lambda1)
    )


def log_integrand_far(stats: ChannelStats, alpha, targets: TargetRates, y):
    """log of the far user's outage integrand at gain value y."""
    a = np.asarray(alpha, dtype=float)
    y = np.asarray(y, dtype=float)
    pi2 = targets.pi2
    return (
        -pi2 * y / ((a * stats.rho_t * y + 1.0) * stats.lambda2)
        - y / stats.lambda1
        - (pi2 - 1.0) / ((1.0 - a) * stats.rho_t * stats.lambda2)
    )
