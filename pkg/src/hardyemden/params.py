"""Parameter algebra for -Delta u - lam |x|^-2 u + |x|^theta u^q = 0.

Derived exponents, the four-way case classification, the structure of the
solution set on the punctured whole space, and the inversion-dual parameter
map.  Everything here is closed-form double-precision arithmetic; the
heavier numerics live in the sibling modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

__all__ = [
    "ProblemParams",
    "CriticalExponents",
    "CaseLabel",
    "StructureReport",
    "BOUNDARY_RTOL",
    "compute_exponents",
    "classify",
    "kelvin_dual_params",
    "solution_set",
]

# |theta - theta_pm| below this (relative) tolerance counts as exact equality,
# so binary-float inputs meant to sit on a case boundary land on it.
BOUNDARY_RTOL = 1e-9


@dataclass(frozen=True)
class ProblemParams:
    """The quadruple (N, q, theta, lam) of the equation."""

    N: int
    q: float
    theta: float
    lam: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 3:
            raise ValidationError(f"dimension N must be an integer >= 3, got {self.N}")
        if not self.q > 1:
            raise ValidationError(f"exponent q must be > 1, got {self.q}")
        if not (math.isfinite(self.q) and math.isfinite(self.theta) and math.isfinite(self.lam)):
            raise ValidationError("q, theta, lam must be finite")

    def as_dict(self) -> dict:
        return {"N": self.N, "q": self.q, "theta": self.theta, "lambda": self.lam}


@dataclass(frozen=True)
class CriticalExponents:
    """All derived constants of a parameter tuple.

    p_minus/p_plus (and the matching theta_minus/theta_plus) are the roots
    of the indicial quadratic p(N-2-p) = lam; they exist only when
    disc = lambda_hardy - lam >= 0 and are None otherwise.
    """

    lambda_hardy: float
    Theta: float
    ell: float
    lambda_star: float
    q_crit: float
    disc: float
    p_minus: float | None
    p_plus: float | None
    theta_minus: float | None
    theta_plus: float | None
    theta_hat: float
    Theta_hat: float

    def as_dict(self) -> dict:
        return {
            "lambda_hardy": self.lambda_hardy,
            "Theta": self.Theta,
            "ell": self.ell,
            "lambda_star": self.lambda_star,
            "q_crit": self.q_crit,
            "disc": self.disc,
            "p_minus": self.p_minus,
            "p_plus": self.p_plus,
            "theta_minus": self.theta_minus,
            "theta_plus": self.theta_plus,
            "theta_hat": self.theta_hat,
            "Theta_hat": self.Theta_hat,
        }


@dataclass(frozen=True)
class CaseLabel:
    """Major case U / M1 / M2 / NCASE plus the NCASE boundary sub-tag."""

    major: str
    subcase: str | None = None

    def as_dict(self) -> dict:
        return {"major": self.major, "subcase": self.subcase}


@dataclass(frozen=True)
class StructureReport:
    """Existence / uniqueness / family structure on the punctured whole space."""

    exists: bool
    unique: bool
    family: str  # none | single | one_parameter
    near_zero: dict
    at_infinity: dict
    radially_symmetric: bool

    def as_dict(self) -> dict:
        return {
            "exists": self.exists,
            "unique": self.unique,
            "family": self.family,
            "near_zero": self.near_zero,
            "at_infinity": self.at_infinity,
            "radially_symmetric": self.radially_symmetric,
        }


def compute_exponents(p: ProblemParams) -> CriticalExponents:
    """Derive every critical constant of the tuple (N, q, theta, lam)."""
    N, q, theta, lam = p.N, p.q, p.theta, p.lam
    lambda_hardy = (N - 2) ** 2 / 4.0
    Theta = (theta + 2.0) / (q - 1.0)
    ell = Theta * Theta - (N - 2.0) * Theta + lam
    lambda_star = Theta * (N - 2.0 - Theta)
    q_crit = (N + 2.0 * theta + 2.0) / (N - 2.0)
    disc = lambda_hardy - lam
    if disc >= 0.0:
        root = math.sqrt(disc)
        p_minus = (N - 2.0) / 2.0 - root
        p_plus = (N - 2.0) / 2.0 + root
        theta_minus = p_minus * (q - 1.0) - 2.0
        theta_plus = p_plus * (q - 1.0) - 2.0
    else:
        p_minus = p_plus = theta_minus = theta_plus = None
    theta_hat = (N - 2.0) * q - (N + 2.0 + theta)
    Theta_hat = N - 2.0 - Theta
    return CriticalExponents(
        lambda_hardy=lambda_hardy,
        Theta=Theta,
        ell=ell,
        lambda_star=lambda_star,
        q_crit=q_crit,
        disc=disc,
        p_minus=p_minus,
        p_plus=p_plus,
        theta_minus=theta_minus,
        theta_plus=theta_plus,
        theta_hat=theta_hat,
        Theta_hat=Theta_hat,
    )


def _on_boundary(theta: float, boundary: float) -> bool:
    return abs(theta - boundary) <= BOUNDARY_RTOL * max(1.0, abs(boundary))


def classify(p: ProblemParams) -> CaseLabel:
    """Assign the tuple to exactly one of the cases U, M1, M2, NCASE.

    U when lam exceeds the Hardy constant; otherwise the position of theta
    relative to theta_minus <= theta_plus decides.  Equality with either
    boundary (within BOUNDARY_RTOL) lands in NCASE with a sub-tag naming
    which boundary is hit.
    """
    ex = compute_exponents(p)
    if ex.disc < 0.0:
        return CaseLabel("U")
    tm, tp = ex.theta_minus, ex.theta_plus
    on_lower = _on_boundary(p.theta, tm)
    on_upper = _on_boundary(p.theta, tp)
    if on_lower and on_upper:
        return CaseLabel("NCASE", "N_double_boundary")
    if on_lower:
        return CaseLabel("NCASE", "N_lower_boundary")
    if on_upper:
        return CaseLabel("NCASE", "N_upper_boundary")
    if p.theta < tm:
        return CaseLabel("M1")
    if p.theta > tp:
        return CaseLabel("M2")
    return CaseLabel("NCASE", "N_interior")


def kelvin_dual_params(p: ProblemParams) -> ProblemParams:
    """Parameters solved by the inversion u -> |x|^(2-N) u(x/|x|^2).

    Only theta changes; the map is an involution, preserves ell, swaps the
    roles of zero and infinity and hence the labels M1 and M2.
    """
    theta_hat = (p.N - 2.0) * p.q - (p.N + 2.0 + p.theta)
    return ProblemParams(p.N, p.q, theta_hat, p.lam)


def _power_profile(power: float, log_power: float, constant: float | None) -> dict:
    """Rate descriptor u ~ c * r^(-power) * (log factor)^log_power."""
    return {"p": power, "s": log_power, "c": constant}


def solution_set(p: ProblemParams) -> StructureReport:
    """Structure of all positive solutions on the punctured whole space.

    Solutions exist iff ell > 0 (equivalently lam > lambda_star).  Case U
    has exactly the pure power profile; cases M1/M2 carry a one-parameter
    family on top of it, with the catalogued end behaviors attached.
    """
    ex = compute_exponents(p)
    label = classify(p)
    exists = ex.ell > 0.0
    if not exists:
        return StructureReport(
            exists=False,
            unique=False,
            family="none",
            near_zero={},
            at_infinity={},
            radially_symmetric=False,
        )
    u0_profile = _power_profile(ex.Theta, 0.0, ex.ell ** (1.0 / (p.q - 1.0)))
    if label.major == "U":
        return StructureReport(
            exists=True,
            unique=True,
            family="single",
            near_zero={"U0": u0_profile},
            at_infinity={"U0": u0_profile},
            radially_symmetric=True,
        )
    # M1 / M2: one-parameter family plus the pure power solution.
    at_hardy = ex.disc == 0.0
    if label.major == "M2":
        if at_hardy:
            gamma_zero = _power_profile((p.N - 2.0) / 2.0, 1.0, None)
        else:
            gamma_zero = _power_profile(ex.p_plus, 0.0, None)
        gamma_inf = u0_profile
    else:  # M1
        gamma_zero = u0_profile
        if at_hardy:
            gamma_inf = _power_profile((p.N - 2.0) / 2.0, 1.0, None)
        else:
            gamma_inf = _power_profile(ex.p_minus, 0.0, None)
    return StructureReport(
        exists=True,
        unique=False,
        family="one_parameter",
        near_zero={"U0": u0_profile, "gamma_family": gamma_zero},
        at_infinity={"U0": u0_profile, "gamma_family": gamma_inf},
        radially_symmetric=True,
    )
