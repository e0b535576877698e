"""Analytic photon indistinguishability under incoherent excitation.

The mean two-photon wavefunction overlap for an emitter with pure
dephasing rate alpha and excitation-relaxation (jitter) rate delta, as a
function of the radiative rate Gamma, comes in two variants:

- "eq3":           I(Gamma) = [Gamma/(Gamma+alpha)] * [delta/(2*Gamma+delta)]
- "mc-consistent": I(Gamma) = [Gamma/(Gamma+alpha)] * [delta/(Gamma+delta)]

The first is the commonly printed form; the second is what the exponential
wavepacket-overlap integral actually produces (it matches the Monte Carlo in
dotcav.photonstats.hom, hence the name). Both are unimodal in Gamma: raising
Gamma fights dephasing but amplifies the arrival-time jitter penalty, so
there is an optimal Purcell-enhanced lifetime.

Closed-form optima (from d ln I / d Gamma = 0):

- eq3:           Gamma* = sqrt(alpha*delta/2),  I* = 1/(1+sqrt(2*alpha/delta))^2
- mc-consistent: Gamma* = sqrt(alpha*delta),    I* = 1/(1+sqrt(alpha/delta))^2

Note two *other* printed variants circulate for the eq3 optimum
(Gamma* = sqrt(alpha*delta)/2, and I* without the square); neither survives
the derivative, and neither reproduces the standard numeric targets
(~70-80% at 100-140 ps, ~90% at 40 ps with a 10x jitter-rate boost), so the
forms above are used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MODELS = ("eq3", "mc-consistent")

#: delta -> infinity sentinel: pass no_jitter=True instead of a large delta.


def _check_model(model: str) -> str:
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}, expected one of {MODELS}")
    return model


@dataclass(frozen=True)
class IndistResult:
    """Optimal operating point of I(Gamma)."""

    gamma_star: float      # 1/ns
    i_star: float
    model: str

    @property
    def lifetime_star_ps(self) -> float:
        return 1000.0 / self.gamma_star


def indistinguishability(
    gamma: float,
    alpha: float,
    delta: float | None = None,
    model: str = "eq3",
    no_jitter: bool = False,
) -> float:
    """Evaluate I(Gamma) for the selected model.

    delta=None is only legal with no_jitter=True, which drops the jitter
    factor entirely (the delta -> infinity limit).
    """
    _check_model(model)
    if gamma <= 0:
        raise ValueError("radiative rate must be positive")
    if alpha < 0:
        raise ValueError("dephasing rate must be non-negative")
    dephasing = gamma / (gamma + alpha)
    if no_jitter:
        return dephasing
    if delta is None or delta <= 0:
        raise ValueError("relaxation rate must be positive (or pass no_jitter=True)")
    if model == "eq3":
        return dephasing * delta / (2.0 * gamma + delta)
    return dephasing * delta / (gamma + delta)


def optimal_rate(alpha: float, delta: float, model: str = "eq3") -> IndistResult:
    """Radiative rate maximizing I, with the value of I there.

    Closed forms (module docstring); cross-checked against a logarithmic grid
    search in the test suite.
    """
    _check_model(model)
    if alpha <= 0 or delta <= 0:
        raise ValueError("alpha and delta must be positive")
    if model == "eq3":
        gamma_star = math.sqrt(alpha * delta / 2.0)
        i_star = 1.0 / (1.0 + math.sqrt(2.0 * alpha / delta)) ** 2
    else:
        gamma_star = math.sqrt(alpha * delta)
        i_star = 1.0 / (1.0 + math.sqrt(alpha / delta)) ** 2
    return IndistResult(gamma_star=gamma_star, i_star=i_star, model=model)


def grid_search_optimum(
    alpha: float,
    delta: float,
    model: str = "eq3",
    n_points: int = 10_000,
    decades: float = 3.0,
) -> IndistResult:
    """Brute-force optimum on a log grid around sqrt(alpha*delta).

    Independent check of the closed form: scans n_points rates spanning
    10^-decades .. 10^decades times sqrt(alpha*delta).
    """
    _check_model(model)
    if alpha <= 0 or delta <= 0:
        raise ValueError("alpha and delta must be positive")
    center = math.sqrt(alpha * delta)
    best_gamma, best_i = center, -1.0
    for k in range(n_points):
        lg = -decades + 2.0 * decades * k / (n_points - 1)
        gamma = center * 10.0 ** lg
        val = indistinguishability(gamma, alpha, delta, model=model)
        if val > best_i:
            best_gamma, best_i = gamma, val
    return IndistResult(gamma_star=best_gamma, i_star=best_i, model=model)


def phonon_whatif(
    alpha: float,
    delta: float,
    enhancement: float,
    model: str = "eq3",
) -> IndistResult:
    """Optimum after boosting the relaxation rate by `enhancement`.

    Models an engineered phonon density of states speeding up the feeding
    transition: delta -> enhancement * delta. A modest 10x boost already
    pushes the eq3 optimum to ~90% at a ~40 ps lifetime.
    """
    if enhancement < 1.0:
        raise ValueError("enhancement must be >= 1")
    return optimal_rate(alpha, delta * enhancement, model=model)
