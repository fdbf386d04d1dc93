"""Evaluable analytic bound calculus.

Zero-free-region width, zero repulsion, the log-free density factor B1,
Stark's floor for the exceptional zero, the single-variable optimization
eta(x), its classical closed-form bound, the Siegel-zero regimes, the
main-term lower bound, and the remainder-sum estimates.

None of the underlying theorems are proved here; every "absolute,
effective" constant the source theory leaves unnumbered is an explicit
configuration field, and inequality checks report the smallest constant
that makes them hold.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

from scipy import optimize

from .arith import divisors, euler_phi, tau

__all__ = [
    "SiegelData",
    "ErrorModel",
    "ConfigurationError",
    "delta_zfr",
    "delta_repulsion",
    "combined_delta",
    "B1",
    "nu1",
    "stark_floor",
    "eta",
    "classical_error",
    "thm11_error",
    "siegel_error",
    "main_term_floor",
    "remainder_eps",
    "remainder_R",
    "level_of_distribution",
]


class ConfigurationError(Exception):
    """A bound was evaluated outside its stated hypotheses."""


@dataclass(frozen=True)
class SiegelData:
    """Optional user-supplied exceptional-zero data; never computed."""

    beta1: float | None = None
    theta1: int = 0

    def __post_init__(self):
        if (self.beta1 is None) != (self.theta1 == 0):
            raise ValueError("theta1 = 0 exactly when beta1 is absent")
        if self.beta1 is not None and not 0.5 < self.beta1 < 1:
            raise ValueError("beta1 must lie in (1/2, 1)")
        if self.theta1 not in (-1, 0, 1):
            raise ValueError("theta1 must be -1, 0 or +1")

    @property
    def exists(self) -> bool:
        return self.beta1 is not None

    def lambda1(self, log_Q: float) -> float:
        if self.beta1 is None:
            raise ValueError("no exceptional zero supplied")
        return (1 - self.beta1) * log_Q


@dataclass(frozen=True)
class ErrorModel:
    """Field invariants and explicit constants powering every bound."""

    D_K: float = 3.0
    n_K: int = 2
    Qcal: float = 1.0  # conductor bound
    c_ZFR: float = 0.05
    c_ZDE: int = 10
    c_DH: float = 1.0
    c_Stark: float = 1.0
    vartheta: float = 1.0
    gamma: float = 1.0
    eta_thm: float = 1.0
    c_1: float = 40.0  # range exponent of the asymptotic theorem
    c_SZ_err: float = 1.0
    c_SZ_size: float = 36.0
    c_SZ_lambda: float = 0.125
    siegel: SiegelData = field(default_factory=SiegelData)

    def __post_init__(self):
        if self.c_ZDE < 1:
            raise ValueError("c_ZDE must be an integer >= 1")
        if self.Q < 2:
            raise ValueError("bound evaluations need Q >= 2")

    @property
    def Q(self) -> float:
        return self.D_K * self.Qcal * self.n_K**self.n_K

    @property
    def log_Q(self) -> float:
        return math.log(self.Q)

    def with_siegel(self, beta1: float | None, theta1: int | None = None) -> "ErrorModel":
        if beta1 is None:
            return replace(self, siegel=SiegelData())
        return replace(
            self, siegel=SiegelData(beta1=beta1, theta1=1 if theta1 is None else theta1)
        )


def delta_zfr(t: float, m: ErrorModel) -> float:
    """Classical zero-free-region width c_ZFR / log(Q t^n_K) at height t."""
    if t < 3:
        raise ValueError("delta_zfr requires t >= 3")
    return m.c_ZFR / (m.log_Q + m.n_K * math.log(t))

def delta_repulsion(t: float, m: ErrorModel) -> float:
    """Repulsion width min{1/2, c_DH log(1/((1-b1) log(Q t^n)))/log(Q t^n)}."""
    if not m.siegel.exists:
        raise RuntimeError("delta_repulsion requires Siegel data")
    if t < 3:
        raise ValueError("delta_repulsion requires t >= 3")
    logQt = m.log_Q + m.n_K * math.log(t)
    lam = (1 - m.siegel.beta1) * logQt
    if lam >= 1:
        return 0.0
    return min(0.5, m.c_DH * math.log(1 / lam) / logQt)


def combined_delta(t: float, m: ErrorModel) -> float:
    base = delta_zfr(t, m)
    if m.siegel.exists:
        return max(base, delta_repulsion(t, m))
    return base


def B1(T: float, m: ErrorModel) -> float:
    """Density-estimate factor min{1, (1 - beta1) log(Q T^n_K)}; 1 without
    an exceptional zero."""
    if T < 1:
        raise ValueError("B1 requires T >= 1")
    if not m.siegel.exists:
        return 1.0
    return min(1.0, (1 - m.siegel.beta1) * (m.log_Q + m.n_K * math.log(T)))


def nu1(m: ErrorModel) -> float:
    if not m.siegel.exists:
        return 1.0
    return (1 - m.siegel.beta1) * m.log_Q


def stark_floor(m: ErrorModel) -> float:
    """Effective floor c_Stark * Q^-2 for lambda1; warns when supplied
    Siegel data violates it."""
    floor = m.c_Stark * m.Q**-2
    if m.siegel.exists and m.siegel.lambda1(m.log_Q) < floor:
        warnings.warn(
            f"supplied Siegel zero has lambda1 = {m.siegel.lambda1(m.log_Q):.3g} "
            f"below the effective floor {floor:.3g}",
            stacklevel=2,
        )
    return floor


def eta(x: float, m: ErrorModel) -> float:
    """inf over t >= 3 of [Delta(t) log x + log t] with the combined
    zero-free width; grid scan plus local refinement, accuracy ~1e-9."""
    if x < 2:
        raise ValueError("eta requires x >= 2")
    logx = math.log(x)

    def phi(u: float) -> float:
        return combined_delta(math.exp(u), m) * logx + u

    u_lo = math.log(3.0)
    u_hi = max(u_lo + 1.0, 10.0 * math.sqrt(m.c_ZFR * logx / m.n_K))
    n = 2000
    us = [u_lo + (u_hi - u_lo) * i / n for i in range(n + 1)]
    vals = [phi(u) for u in us]
    i = min(range(n + 1), key=vals.__getitem__)
    a = us[max(i - 1, 0)]
    b = us[min(i + 1, n)]
    res = optimize.minimize_scalar(
        phi, bounds=(a, b), method="bounded", options={"xatol": 1e-12}
    )
    return min(res.fun, vals[0], vals[-1])


def classical_error(x: float, m: ErrorModel) -> float:
    """Closed-form bound  e^{-c_ZFR log x / log Q} + e^{-sqrt(c_ZFR log x / n_K)};
    dominates e^{-eta(x)} when no repulsion is active."""
    if x < 2:
        raise ConfigurationError("classical_error requires x >= 2")
    logx = math.log(x)
    return math.exp(-m.c_ZFR * logx / m.log_Q) + math.exp(
        -math.sqrt(m.c_ZFR * logx / m.n_K)
    )


def thm11_error(x: float, m: ErrorModel) -> float:
    """Relative error of the asymptotic theorem in its stated range
    x >= Q^c_1, with constants c_ZFR/4 and c_ZFR/8 inherited from the
    unsmoothing step."""
    if x < m.Q**m.c_1:
        raise ConfigurationError(f"thm11_error requires x >= Q^{m.c_1}")
    logx = math.log(x)
    return math.exp(-m.c_ZFR / 4 * logx / m.log_Q) + math.exp(
        -math.sqrt(m.c_ZFR * logx / (8 * m.n_K))
    )


def siegel_error(x: float, m: ErrorModel) -> dict:
    """Evaluate the two Siegel-zero error regimes.

    regime 2 (lambda1 >= Q^{-20/n_K}):
        x^{-1/2} + lambda1^10 (e^{-c_DH log x/(2 log Q)} + e^{-c_SZ_err sqrt(log x/n_K)})
    regime 3 (lambda1 <  Q^{-20/n_K}):
        lambda1^10 replaced by e^{-10 sqrt(log(1/lambda1))}.

    Returns both values, the regime selected by the threshold, and the
    smallest C with e^{-eta(x)} <= C * selected value.
    """
    if not m.siegel.exists:
        raise ConfigurationError("siegel_error requires Siegel data")
    lam = m.siegel.lambda1(m.log_Q)
    if lam > m.c_SZ_lambda:
        raise ConfigurationError(
            f"lambda1 = {lam:.3g} exceeds the smallness threshold {m.c_SZ_lambda}"
        )
    if m.Q > x ** (1 / m.c_SZ_size):
        raise ConfigurationError(f"requires Q <= x^(1/{m.c_SZ_size})")
    logx = math.log(x)
    tail = math.exp(-m.c_DH * logx / (2 * m.log_Q)) + math.exp(
        -m.c_SZ_err * math.sqrt(logx / m.n_K)
    )
    value2 = x**-0.5 + lam**10 * tail
    value3 = x**-0.5 + math.exp(-10 * math.sqrt(math.log(1 / lam))) * tail
    threshold = m.Q ** (-20 / m.n_K)
    regime = 2 if lam >= threshold else 3
    selected = value2 if regime == 2 else value3
    ratio = math.exp(-eta(x, m)) / selected
    return {
        "lambda1": lam,
        "threshold": threshold,
        "regime": regime,
        "value_regime2": value2,
        "value_regime3": value3,
        "selected": selected,
        "smallest_C": ratio,
    }


def main_term_floor(x: float, m: ErrorModel) -> dict:
    """Three-case lower bound x - theta1 x^beta1/beta1 >> nu1 x in the
    range x >= Q^{36 c_ZDE}.

    The source inequality hides absolute constants; this evaluates the
    actual main term, the case-specific comparison quantity, and the
    implied constants, so a caller can assert they are bounded.
    """
    if x < m.Q ** (36 * m.c_ZDE):
        raise ConfigurationError("main_term_floor requires x >= Q^(36 c_ZDE)")
    floor = nu1(m) * x
    if not m.siegel.exists:
        return {
            "case": "no_zero",
            "actual": x,
            "floor": floor,
            "case_bound": x,
            "implied_constant": 1.0,
            "floor_constant": 1.0,
        }
    b1 = m.siegel.beta1
    logx = math.log(x)
    actual = x - m.siegel.theta1 * x**b1 / b1
    lam_x = (1 - b1) * logx
    if m.siegel.theta1 != 1:
        case, bound = "negative_theta1", x
    elif lam_x < 1:
        case, bound = "small_lambda", (1 - b1) * x * (logx - 1)
    else:
        case, bound = "large_lambda", (1 - 2 / math.e) * x
    if actual <= 0:
        raise ConfigurationError("main term is not positive; hypotheses violated")
    return {
        "case": case,
        "actual": actual,
        "floor": floor,
        "case_bound": bound,
        "implied_constant": actual / bound,
        "floor_constant": actual / floor,
    }


def remainder_eps(d: int, x: float, m: ErrorModel) -> float:
    """eps_d(x) = exp(-vartheta log x / log|dD|) + exp(-sqrt(vartheta log x))."""
    if d < 1 or x < 3:
        raise ValueError("remainder_eps requires d >= 1 and x >= 3")
    logx = math.log(x)
    log_dD = math.log(max(d * m.D_K * max(m.Qcal, 1.0), 3.0))
    return math.exp(-m.vartheta * logx / log_dD) + math.exp(
        -math.sqrt(m.vartheta * logx)
    )


def remainder_R(x: float, R: float, P: int, m: ErrorModel) -> float:
    """Sum over d | P with d < R^2 of (tau(d)/phi(d)) * eps_d(x)."""
    total = 0.0
    for d in divisors(P):
        if d >= R * R:
            continue
        total += tau(d) / euler_phi(d) * remainder_eps(d, x, m)
    return total


def level_of_distribution(z: float, m: ErrorModel) -> float:
    """R = z^{(1/sqrt(eta_thm)) log log z}."""
    if z < 3 or math.log(math.log(z)) <= 0:
        raise ValueError("level_of_distribution requires log log z > 0")
    return z ** (math.log(math.log(z)) / math.sqrt(m.eta_thm))
