"""Explicit sub/super-solutions and their sign certificates.

Two families are built around the pure power solution: the cut-off
barriers that vanish on a sphere (w_delta outside it, z_delta inside it),
and the refined pinch barriers w_plus / w_minus that squeeze the ratio
u / U0 to 1.  For each, the differential inequality reduces algebraically
to a scalar inequality in one variable, so certification evaluates that
reduction exactly rather than differencing the profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CaseError, NumericalError, ValidationError
from .exact import u0_value
from .params import ProblemParams, classify, compute_exponents, kelvin_dual_params

__all__ = [
    "BarrierCoeffs",
    "BarrierSpec",
    "h_alpha",
    "cutoff_coeffs",
    "pinch_coeffs",
    "select_alpha_c",
    "select_alpha_c_inner",
    "eval_barrier",
    "certify_barrier_sign",
    "refined_eta0",
    "apriori_constant",
]

ALPHA_LADDER = tuple(10.0 ** (-k) for k in range(1, 9))
SIGN_TOL = 1e-9


@dataclass(frozen=True)
class BarrierCoeffs:
    """Quadratic coefficients entering the scalar reductions.

    (A_alpha, B_alpha) govern the cut-off barriers; when eta is present the
    per-sign sets (A_pm, B_pm, C_pm) and the derivative sets (Btilde_pm,
    Ctilde_pm) govern the pinch barriers.
    """

    alpha: float
    A_alpha: float
    B_alpha: float
    eta: float | None = None
    A_pm: tuple[float, float] | None = None
    B_pm: tuple[float, float] | None = None
    C_pm: tuple[float, float] | None = None
    Btilde_pm: tuple[float, float] | None = None
    Ctilde_pm: tuple[float, float] | None = None


@dataclass(frozen=True)
class BarrierSpec:
    """One barrier instance: kind plus the parameters its formula needs."""

    kind: str  # w_delta | z_delta | w_plus | w_minus
    c: float | None = None
    alpha: float = 0.01
    delta: float | None = None
    epsilon: float | None = None
    eta: float | None = None
    nu: float | None = None

    def __post_init__(self):
        if self.kind in ("w_delta", "z_delta"):
            if self.c is None or self.c <= 0 or self.delta is None or self.delta <= 0:
                raise ValidationError(f"{self.kind} needs positive c and delta")
        elif self.kind in ("w_plus", "w_minus"):
            if self.epsilon is None or not (0.0 < self.epsilon < 1.0):
                raise ValidationError(f"{self.kind} needs epsilon in (0,1)")
            if self.eta is None or self.eta <= 0 or self.nu is None or self.nu <= 0:
                raise ValidationError(f"{self.kind} needs positive eta and nu")
        else:
            raise ValidationError(f"unknown barrier kind {self.kind!r}")
        if not (0.0 < self.alpha < 1.0):
            raise ValidationError("alpha must lie in (0,1)")


def cutoff_coeffs(alpha: float, p: ProblemParams) -> BarrierCoeffs:
    """A_alpha, B_alpha of the cut-off reduction; needs ell > 0."""
    ex = compute_exponents(p)
    if ex.ell <= 0.0:
        raise CaseError("cut-off barriers need ell > 0")
    sa = math.sqrt(alpha)
    gap = p.N - 2.0 - 2.0 * ex.Theta
    A = 1.0 - sa / ex.ell * (gap - sa)
    B = -2.0 + sa / ex.ell * (gap - alpha)
    return BarrierCoeffs(alpha=alpha, A_alpha=A, B_alpha=B)


def h_alpha(t, alpha: float, p: ProblemParams):
    """Scalar reduction of the w_delta inequality on t = (delta/r)^alpha.

    The sub-solution property of the cut-off barrier with constant c is
    exactly h_alpha(t) >= c^(q-1) for all t in (0,1).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0.0) or np.any(t >= 1.0):
        raise ValidationError("t must lie in (0,1)")
    return np.exp(log_h_alpha(t, alpha, p))


def log_h_alpha(t, alpha: float, p: ProblemParams):
    """log of h_alpha, defined where the quadratic part is positive."""
    co = cutoff_coeffs(alpha, p)
    t = np.asarray(t, dtype=float)
    quad = co.A_alpha * t * t + co.B_alpha * t + 1.0
    if np.any(quad <= 0.0):
        raise NumericalError("quadratic part of the reduction is not positive")
    expo = -((p.q - 1.0) / math.sqrt(alpha) + 2.0)
    return expo * np.log1p(-t) + np.log(quad)


def _quad_positive_on_unit(co: BarrierCoeffs, label_major: str) -> bool:
    """Case-wise test that A t^2 + B t + 1 > 0 on [0,1]."""
    A, B = co.A_alpha, co.B_alpha
    if A <= 0.0:
        return False
    disc = B * B - 4.0 * A
    if label_major == "U":
        return disc < 0.0
    # M1: both roots of the quadratic must exceed 1
    if disc < 0.0:
        return False
    return (A + B + 1.0 > 0.0) and (-B / (2.0 * A) > 1.0) and (1.0 / A > 1.0)


def _inf_log_h(alpha: float, p: ProblemParams) -> float:
    """Infimum of log h_alpha over (0,1): dense scan plus golden refinement.

    h extends continuously to h(0) = 1 and blows up at t -> 1, so the
    boundary value log 1 = 0 joins the interior scan in the minimum.
    """
    ts = np.linspace(1e-9, 1.0 - 1e-9, 10_000)
    vals = log_h_alpha(ts, alpha, p)
    k = int(np.argmin(vals))
    lo = ts[max(k - 1, 0)]
    hi = ts[min(k + 1, ts.size - 1)]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1 = float(log_h_alpha(x1, alpha, p))
    f2 = float(log_h_alpha(x2, alpha, p))
    for _ in range(80):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = float(log_h_alpha(x1, alpha, p))
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = float(log_h_alpha(x2, alpha, p))
        if b - a < 1e-14:
            break
    return min(0.0, f1, f2, float(vals[k]))


def select_alpha_c(p: ProblemParams) -> tuple[float, float]:
    """Smallest-ladder alpha certifying the exterior cut-off barrier, with
    the largest admissible amplitude c.

    Only Cases U and M1 admit w_delta; the ladder walks alpha downward and
    the first value whose quadratic stays positive on [0,1] wins.
    """
    label = classify(p)
    if label.major not in ("U", "M1"):
        raise CaseError(
            f"exterior cut-off barrier exists in Cases U and M1 only, not {label.major}"
        )
    for alpha in ALPHA_LADDER:
        co = cutoff_coeffs(alpha, p)
        if not _quad_positive_on_unit(co, label.major):
            continue
        c = math.exp(_inf_log_h(alpha, p) / (p.q - 1.0))
        if c > 0.0:
            return alpha, c
    raise NumericalError("no alpha on the ladder certifies the cut-off barrier")


def select_alpha_c_inner(p: ProblemParams) -> tuple[float, float]:
    """Certified (alpha, c) for the interior cut-off barrier z_delta.

    z_delta is the inversion image of w_delta at the dual parameters, so
    the selection runs there (Cases U and M2 here become U and M1 there).
    """
    label = classify(p)
    if label.major not in ("U", "M2"):
        raise CaseError(
            f"interior cut-off barrier exists in Cases U and M2 only, not {label.major}"
        )
    return select_alpha_c(kelvin_dual_params(p))


def eval_barrier(spec: BarrierSpec, r, p: ProblemParams):
    """Barrier values on radii r, respecting each kind's natural domain."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValidationError("radii must be positive")
    sa = math.sqrt(spec.alpha)
    if spec.kind == "w_delta":
        if np.any(r < spec.delta):
            raise ValidationError("w_delta lives on r >= delta")
        t = (spec.delta / r) ** spec.alpha
        return spec.c * u0_value(r, p) * (1.0 - t) ** (1.0 / sa)
    if spec.kind == "z_delta":
        if np.any(r > spec.delta):
            raise ValidationError("z_delta lives on 0 < r <= delta")
        t = (r / spec.delta) ** spec.alpha
        return spec.c * u0_value(r, p) * (1.0 - t) ** (1.0 / sa)
    base = u0_value(r, p) * (1.0 + r ** spec.alpha / spec.nu) ** (
        1.0 / sa if spec.kind == "w_plus" else -1.0 / sa
    )
    if spec.kind == "w_plus":
        return (1.0 + spec.epsilon) * base * r ** (-spec.eta)
    return (1.0 - spec.epsilon) * base * r ** spec.eta


def pinch_coeffs(alpha: float, eta: float, p: ProblemParams) -> BarrierCoeffs:
    """Coefficient sets of the pinch-barrier reduction at (alpha, eta)."""
    ex = compute_exponents(p)
    if ex.ell <= 0.0:
        raise CaseError("pinch barriers need ell > 0")
    sa = math.sqrt(alpha)
    gap = p.N - 2.0 - 2.0 * ex.Theta
    ell = ex.ell
    q = p.q

    def one_sign(sign: float):
        A = 1.0 + sign * sa * (gap + sign * sa) / ell \
            - sign * eta * (gap - sign * eta + sign * 2.0 * sa) / ell
        B = 2.0 + sign * sa * (gap + alpha) / ell \
            - sign * 2.0 * eta * (gap - sign * eta + sign * sa) / ell
        C = 1.0 - sign * eta * (gap - sign * eta) / ell
        Bt = (1.0 + sign * sa / (q - 1.0)) * B - sign * 2.0 * sa / (q - 1.0) * A
        Ct = (1.0 + sign * 2.0 * sa / (q - 1.0)) * C - sign * sa / (q - 1.0) * B
        return A, B, C, Bt, Ct

    Ap, Bp, Cp, Btp, Ctp = one_sign(+1.0)
    Am, Bm, Cm, Btm, Ctm = one_sign(-1.0)
    base = cutoff_coeffs(alpha, p)
    return BarrierCoeffs(
        alpha=alpha,
        A_alpha=base.A_alpha,
        B_alpha=base.B_alpha,
        eta=eta,
        A_pm=(Ap, Am),
        B_pm=(Bp, Bm),
        C_pm=(Cp, Cm),
        Btilde_pm=(Btp, Btm),
        Ctilde_pm=(Ctp, Ctm),
    )


def refined_eta0(epsilon: float, alpha: float, p: ProblemParams) -> float:
    """Largest ladder eta making both pinch reductions monotone and pinned.

    Walks eta down by halving from 1 until the per-sign coefficient sets
    are positive (monotone reduction) and the end values stay inside the
    (1 +/- epsilon)^(q-1) pinch.  Fails if no eta qualifies, which signals
    alpha too large for these parameters.
    """
    if not (0.0 < epsilon < 1.0):
        raise ValidationError("epsilon must lie in (0,1)")
    up = (1.0 + epsilon) ** (p.q - 1.0)
    dn = (1.0 - epsilon) ** (p.q - 1.0)
    eta = 1.0
    for _ in range(60):
        try:
            co = pinch_coeffs(alpha, eta, p)
        except CaseError:
            raise
        ok = (
            min(co.A_pm) > 0.0
            and min(co.Btilde_pm) > 0.0
            and min(co.Ctilde_pm) > 0.0
            and co.C_pm[0] <= up
            and co.C_pm[1] >= dn
        )
        if ok:
            return eta
        eta *= 0.5
    raise NumericalError(
        f"no eta qualifies at alpha={alpha}; shrink alpha (coefficient limits not positive)"
    )


def _log_G(co: BarrierCoeffs, sign: float, t: np.ndarray, q: float) -> np.ndarray:
    idx = 0 if sign > 0 else 1
    A = co.A_pm[idx]
    B = co.B_pm[idx]
    C = co.C_pm[idx]
    quad = A * t * t + B * t + C
    if np.any(quad <= 0.0):
        raise NumericalError("pinch reduction quadratic not positive on the grid")
    expo = -2.0 - sign * (q - 1.0) / math.sqrt(co.alpha)
    return expo * np.log1p(t) + np.log(quad)


def certify_barrier_sign(spec: BarrierSpec, p: ProblemParams, grid) -> dict:
    """Exact sign certificate of a barrier over a radius grid.

    Evaluates the algebraically reduced inequality at each grid point and
    reports the maximum violation, normalized by the nonlinear term so the
    number is comparable across the grid.  Because the reduced variable
    covers the barrier's whole unbounded domain, the certificate also sweeps
    a dense sample of that variable: a violation far outside the grid span
    (small alpha pushes it to astronomical radii) is still caught.  A
    barrier passes when the violation stays below SIGN_TOL.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(grid <= 0.0):
        raise ValidationError("grid must be positive radii")
    q = p.q
    t_dense = np.concatenate(
        [np.geomspace(1e-200, 1e-9, 200), np.linspace(1e-9, 1.0 - 1e-9, 20_001)]
    )
    if spec.kind in ("w_delta", "z_delta"):
        if spec.kind == "w_delta":
            if np.any(grid <= spec.delta):
                raise ValidationError("w_delta certificate needs r > delta")
            t = (spec.delta / grid) ** spec.alpha
            params_for_h = p
        else:
            if np.any(grid >= spec.delta):
                raise ValidationError("z_delta certificate needs r < delta")
            t = (grid / spec.delta) ** spec.alpha
            params_for_h = kelvin_dual_params(p)
        t = np.concatenate([t, t_dense])
        # sub-solution reduction: (q-1) log c <= log h(t); the signed margin
        # 1 - h/c^(q-1) is the operator residual over the nonlinear term.
        log_gap = (q - 1.0) * math.log(spec.c) - log_h_alpha(t, spec.alpha, params_for_h)
        signed = -np.expm1(-log_gap)
        max_violation = float(np.max(np.maximum(signed, 0.0)))
        worst = float(np.max(signed))
    elif spec.kind in ("w_plus", "w_minus"):
        if np.any(grid >= 1.0):
            raise ValidationError("pinch barriers are certified on 0 < r < 1")
        eta0 = refined_eta0(spec.epsilon, spec.alpha, p)
        if spec.eta > eta0:
            raise ValidationError(f"eta={spec.eta} exceeds certified eta0={eta0}")
        co = pinch_coeffs(spec.alpha, spec.eta, p)
        radii = np.concatenate([grid, np.geomspace(1e-200, 1.0 - 1e-12, 4001)])
        t = radii ** spec.alpha / spec.nu
        if spec.kind == "w_plus":
            lhs = spec.eta * (q - 1.0) * np.log(radii) + _log_G(co, +1.0, t, q)
            log_gap = lhs - (q - 1.0) * math.log1p(spec.epsilon)
        else:
            lhs = -spec.eta * (q - 1.0) * np.log(radii) + _log_G(co, -1.0, t, q)
            log_gap = (q - 1.0) * math.log1p(-spec.epsilon) - lhs
        max_violation = float(np.max(np.maximum(np.expm1(log_gap), 0.0)))
        worst = float(np.max(np.expm1(log_gap)))
    else:
        raise ValidationError(f"unknown barrier kind {spec.kind!r}")
    report = {
        "kind": spec.kind,
        "params": p.as_dict(),
        "alpha": spec.alpha,
        "grid_span": [float(grid[0]), float(grid[-1])],
        "max_violation": max_violation,
        "worst_signed_margin": worst,
        "tol": SIGN_TOL,
        "passed": bool(max_violation <= SIGN_TOL),
    }
    if spec.kind in ("w_delta", "z_delta"):
        report["c"] = spec.c
        report["delta"] = spec.delta
    else:
        report["epsilon"] = spec.epsilon
        report["eta"] = spec.eta
        report["nu"] = spec.nu
    return report


def apriori_constant(p: ProblemParams) -> float:
    """Universal bound constant: every sub-solution satisfies
    u <= C0 r^(-Theta).

    Obtained by maximizing the scale-invariant comparison expression over
    the off-center ball in the variables (offset rho, radius ratio s); the
    supremum is finite because the blow-up factor of the local comparison
    function cancels against its vanishing denominator.
    """
    q, N, lam, theta = p.q, p.N, p.lam, p.theta
    rho = np.linspace(0.0, 0.5 - 1e-12, 801)[:, None]
    zeta = 1.0 - 4.0 * rho * rho
    frac = np.linspace(0.0, 1.0, 401)[None, :]
    s = (1.0 - rho) + 2.0 * rho * frac  # spans [1-rho, 1+rho]
    bracket = (16.0 / (q - 1.0)) * (
        N * zeta + (8.0 * (q + 1.0) / (q - 1.0)) * rho * rho
    ) + lam * zeta * zeta / (s * s)
    vals = s ** (-theta) * bracket
    sup = float(np.max(vals))
    if sup <= 0.0:
        raise NumericalError("comparison expression not positive; cannot bound")
    return sup ** (1.0 / (q - 1.0))
