"""Closed-form solutions and exact transforms.

The pure power solution, the fundamental solutions of the linear operator,
the two explicit one-parameter families available at special weight
exponents, the scaling operator, the inversion of radial profiles, and the
reduction of weighted divergence-form problems to the Hardy form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CaseError, ValidationError
from .gridio import RadialFunction, log_grid
from .params import (
    BOUNDARY_RTOL,
    CriticalExponents,
    ProblemParams,
    compute_exponents,
    kelvin_dual_params,
)

__all__ = [
    "DivergenceParams",
    "u0_value",
    "u0_profile",
    "phi_plus",
    "phi_minus",
    "phi_profile",
    "example_family_m2",
    "example_family_m1",
    "example_profile",
    "kelvin_transform",
    "scale_T_mu",
    "divergence_reduce",
    "divergence_sigma_rho_ell",
    "divergence_solution_v0",
    "divergence_case_tag",
]


def _amplitude(ex: CriticalExponents, q: float) -> float:
    if ex.ell <= 0.0:
        raise CaseError(f"pure power solution undefined: ell={ex.ell} <= 0")
    return ex.ell ** (1.0 / (q - 1.0))


def u0_value(r, p: ProblemParams):
    """The pure power solution ell^(1/(q-1)) r^(-Theta); needs ell > 0."""
    ex = compute_exponents(p)
    return _amplitude(ex, p.q) * np.asarray(r, dtype=float) ** (-ex.Theta)


def u0_profile(p: ProblemParams, r_min=1e-4, r_max=1e4, n=512) -> RadialFunction:
    grid = log_grid(r_min, r_max, n)
    return RadialFunction(grid, u0_value(grid, p), p, "closed-form")


def phi_minus(r, p: ProblemParams):
    """Slow fundamental solution r^(-p_minus) of the linear operator."""
    ex = compute_exponents(p)
    if ex.disc < 0.0:
        raise CaseError("fundamental solutions need lam <= lambda_hardy")
    return np.asarray(r, dtype=float) ** (-ex.p_minus)


def phi_plus(r, p: ProblemParams):
    """Fast fundamental solution: r^(-p_plus), or the log-corrected branch
    r^(-(N-2)/2) log(1/r) on r < 1 when lam equals the Hardy constant."""
    ex = compute_exponents(p)
    if ex.disc < 0.0:
        raise CaseError("fundamental solutions need lam <= lambda_hardy")
    r = np.asarray(r, dtype=float)
    if ex.disc == 0.0:
        if np.any(r >= 1.0):
            raise ValidationError("log branch of phi_plus needs r < 1")
        return r ** (-(p.N - 2.0) / 2.0) * np.log(1.0 / r)
    return r ** (-ex.p_plus)


def phi_profile(p: ProblemParams, sign: str, r_min=1e-4, r_max=1e4, n=512) -> RadialFunction:
    if sign == "plus" and compute_exponents(p).disc == 0.0:
        r_max = min(r_max, 0.9)
        r_min = min(r_min, r_max * 1e-8)
    grid = log_grid(r_min, r_max, n)
    vals = phi_plus(grid, p) if sign == "plus" else phi_minus(grid, p)
    return RadialFunction(grid, vals, p, "closed-form")


def _check_special_theta(p: ProblemParams, side: str) -> tuple[CriticalExponents, float]:
    ex = compute_exponents(p)
    if not ex.disc > 0.0:
        raise CaseError("explicit families need lam < lambda_hardy")
    root = math.sqrt(ex.disc)
    target = ex.theta_plus + 4.0 * root if side == "m2" else ex.theta_minus - 4.0 * root
    if abs(p.theta - target) > BOUNDARY_RTOL * max(1.0, abs(target)):
        raise CaseError(
            f"family '{side}' needs theta = {target}, got theta = {p.theta}"
        )
    return ex, root


def example_family_m2(mu: float, r, p: ProblemParams):
    """Explicit solution family at theta = theta_plus + 4 sqrt(disc)."""
    if mu <= 0.0:
        raise ValidationError("mu must be positive")
    ex, root = _check_special_theta(p, "m2")
    r = np.asarray(r, dtype=float)
    inner = mu ** (-2.0 * root) + ex.ell ** (-0.5) * r ** (2.0 * root)
    return r ** (-ex.p_plus) * inner ** (-2.0 / (p.q - 1.0))


def example_family_m1(mu: float, r, p: ProblemParams):
    """Explicit solution family at theta = theta_minus - 4 sqrt(disc);
    the inversion image of the m2 family at the dual parameters."""
    if mu <= 0.0:
        raise ValidationError("mu must be positive")
    ex, root = _check_special_theta(p, "m1")
    r = np.asarray(r, dtype=float)
    inner = mu ** (2.0 * root) + ex.ell ** (-0.5) * r ** (-2.0 * root)
    return r ** (-ex.p_minus) * inner ** (-2.0 / (p.q - 1.0))


def example_profile(p: ProblemParams, side: str, mu: float = 1.0,
                    r_min=1e-4, r_max=1e4, n=512) -> RadialFunction:
    grid = log_grid(r_min, r_max, n)
    fam = example_family_m2 if side == "m2" else example_family_m1
    return RadialFunction(grid, fam(mu, grid, p), p, "closed-form")


def kelvin_transform(f: RadialFunction) -> RadialFunction:
    """Inversion u -> r^(2-N) u(1/r) of a sampled profile.

    The output grid is the reversed reciprocal of the input grid, so the
    node values are exact and the transform is an exact involution.
    """
    N = f.params.N
    grid = 1.0 / f.grid[::-1]
    values = grid ** (2.0 - N) * f.values[::-1]
    return RadialFunction(grid, values, kelvin_dual_params(f.params), "transform", dict(f.info))


def scale_T_mu(f: RadialFunction, mu: float) -> RadialFunction:
    """Scaling u -> mu^Theta u(mu r), which fixes the pure power solution
    and moves along the one-parameter solution family."""
    if mu <= 0.0:
        raise ValidationError("mu must be positive")
    ex = compute_exponents(f.params)
    return RadialFunction(
        f.grid / mu, mu ** ex.Theta * f.values, f.params, f.provenance, dict(f.info)
    )


@dataclass(frozen=True)
class DivergenceParams:
    """Parameters of div(|x|^(-2a) grad v) + d |x|^(-2(1+a)) v = |x|^b v^q."""

    N: int
    a: float
    b: float
    d: float
    q: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 3:
            raise ValidationError(f"dimension N must be an integer >= 3, got {self.N}")
        if not self.q > 1:
            raise ValidationError(f"exponent q must be > 1, got {self.q}")

    def as_dict(self) -> dict:
        return {"N": self.N, "a": self.a, "b": self.b, "d": self.d, "q": self.q}


def divergence_reduce(dp: DivergenceParams) -> ProblemParams:
    """Map the divergence-form problem to the Hardy form via u = r^-a v."""
    theta = dp.a * (1.0 + dp.q) + dp.b
    lam = dp.d + dp.a * (dp.N - 2.0 - dp.a)
    return ProblemParams(dp.N, dp.q, theta, lam)


def divergence_sigma_rho_ell(dp: DivergenceParams) -> tuple[float, float, float]:
    """The native exponents sigma, rho and the existence quantity ell."""
    sigma = (2.0 * dp.a + dp.b + 2.0) / (dp.q - 1.0)
    rho = dp.a - (dp.N - 2.0) / 2.0
    ell = (sigma + rho) ** 2 - rho * rho + dp.d
    return sigma, rho, ell


def divergence_solution_v0(r, dp: DivergenceParams):
    """The pure power solution ell^(1/(q-1)) r^(-sigma); needs ell > 0."""
    sigma, _, ell = divergence_sigma_rho_ell(dp)
    if ell <= 0.0:
        raise CaseError(f"pure power solution undefined: ell={ell} <= 0")
    return ell ** (1.0 / (dp.q - 1.0)) * np.asarray(r, dtype=float) ** (-sigma)


def divergence_case_tag(dp: DivergenceParams) -> str | None:
    """Multiplicity-case tag of the gamma family in the native variables.

    M11/M21 for d < rho^2 by the sign of sigma+rho, M12/M22 for d = rho^2;
    None when the family criterion (sigma+rho)^2 > rho^2 - d >= 0 fails.
    """
    sigma, rho, _ = divergence_sigma_rho_ell(dp)
    gap = rho * rho - dp.d
    if gap < 0.0 or (sigma + rho) ** 2 <= gap:
        return None
    root = math.sqrt(gap)
    if gap > 0.0:
        if sigma + rho < -root:
            return "M11"
        if sigma + rho > root:
            return "M21"
        return None
    return "M12" if sigma < -rho else "M22"
