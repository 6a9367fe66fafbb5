"""Two-point boundary value solves on annuli and the monotone schemes.

The radial equation is discretized in s = log r with centered second-order
differences and solved by damped Newton with a tridiagonal Jacobian.  The
punctured-ball problems are approximated on annuli whose inner radius
halves down a ladder, with pure-power (or two-mode) inner data chosen so
the solutions decrease monotonically to the limit.  Ladder grids are
nested, so monotonicity is checked on shared nodes without interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .errors import CaseError, NewtonError, NumericalError, ValidationError
from .exact import phi_minus, phi_plus
from .gridio import RadialFunction
from .params import ProblemParams, classify, compute_exponents

__all__ = [
    "AnnulusProblem",
    "SchemeTrace",
    "solve_annulus",
    "approximate_scheme",
    "gamma_scheme",
    "demonstrate_nonexistence",
]

NEWTON_TOL = 1e-10
MONOTONE_TOL = 1e-10


@dataclass(frozen=True)
class AnnulusProblem:
    """Dirichlet data on an annulus; radially constant boundary values."""

    r_a: float
    r_b: float
    g_a: float
    g_b: float
    params: ProblemParams

    def __post_init__(self):
        if not (0.0 < self.r_a < self.r_b):
            raise ValidationError("need 0 < r_a < r_b")
        if self.g_a < 0.0 or self.g_b < 0.0 or (self.g_a == 0.0 and self.g_b == 0.0):
            raise ValidationError("boundary data must be non-negative, not both zero")


@dataclass
class SchemeTrace:
    """Ladder diagnostics: per-step contraction and the limiting profile."""

    k_values: list
    sup_norms: list
    limit: RadialFunction
    meta: dict = field(default_factory=dict)

    def report(self) -> dict:
        return {
            "k_values": list(self.k_values),
            "sup_norms": [float(x) for x in self.sup_norms],
            "meta": dict(self.meta),
        }


def _newton_solve(s, v, g_a, g_b, p: ProblemParams, max_iter=60):
    """Damped Newton on the interior nodes; boundary rows are pinned.

    Returns the converged vector; raises NewtonError when damping cannot
    restore positivity or descent.
    """
    h = s[1] - s[0]
    n = s.size
    k_exp = p.theta + 2.0
    w = np.exp(k_exp * s)
    cm = 1.0 / h**2 - (p.N - 2.0) / (2.0 * h)
    cp = 1.0 / h**2 + (p.N - 2.0) / (2.0 * h)
    cd = -2.0 / h**2 + p.lam
    v = v.copy()
    v[0], v[-1] = g_a, g_b

    def residual_vec(vv):
        res = np.zeros(n)
        res[1:-1] = (
            cm * vv[:-2] + cd * vv[1:-1] + cp * vv[2:]
            - w[1:-1] * vv[1:-1] ** p.q
        )
        return res

    def norm_scale(vv):
        scale = np.maximum.reduce(
            [
                np.abs(cm * vv[:-2]),
                np.abs(cd * vv[1:-1]),
                np.abs(cp * vv[2:]),
                np.abs(w[1:-1] * vv[1:-1] ** p.q),
            ]
        )
        return np.maximum(scale, 1e-250)

    # The normalized residual is scaled by the largest equation term, which
    # the 1/h^2 pieces dominate, so a loose stop leaves an O(tol/h^2)-sized
    # solution error.  Iterate to the quadratic-convergence floor instead
    # and use NEWTON_TOL only as the final acceptance bound.
    res = residual_vec(v)
    rnorm = np.max(np.abs(res[1:-1]) / norm_scale(v))
    for _ in range(max_iter):
        if rnorm <= 1e-15:
            break
        diag = cd - p.q * w[1:-1] * v[1:-1] ** (p.q - 1.0)
        ab = np.zeros((3, n - 2))
        ab[0, 1:] = cp
        ab[1, :] = diag
        ab[2, :-1] = cm
        try:
            delta = solve_banded((1, 1), ab, -res[1:-1])
        except Exception as exc:  # singular Jacobian
            raise NewtonError(f"tridiagonal solve failed: {exc}") from exc
        step = 1.0
        accepted = False
        for _ in range(50):
            trial = v.copy()
            trial[1:-1] = v[1:-1] + step * delta
            if np.all(trial[1:-1] > 0.0):
                tres = residual_vec(trial)
                tnorm = np.max(np.abs(tres[1:-1]) / norm_scale(trial))
                if tnorm < rnorm:
                    v, res, rnorm = trial, tres, tnorm
                    accepted = True
                    break
            step *= 0.5
        if not accepted:
            break  # float floor: no positive step improves the residual
    if rnorm > NEWTON_TOL:
        raise NewtonError(f"Newton stalled at normalized residual {rnorm:.3e}")
    return v, rnorm


def _initial_iterate(s, g_a, g_b, p: ProblemParams):
    """Super-solution-flavored start: pure power profile maxed with the
    linear interpolant of the boundary data."""
    ex = compute_exponents(p)
    r = np.exp(s)
    amp = max(ex.ell, 0.0) ** (1.0 / (p.q - 1.0)) if ex.ell > 0.0 else 0.0
    cap = max(amp, g_a * r[0] ** ex.Theta, g_b * r[-1] ** ex.Theta)
    power = cap * r ** (-ex.Theta)
    lin = g_a + (g_b - g_a) * (s - s[0]) / (s[-1] - s[0])
    v0 = np.maximum(power, lin)
    v0 = np.maximum(v0, 1e-300)
    v0[0], v0[-1] = g_a, g_b
    return v0


def _profile_from_nodes(s, v, p: ProblemParams, meta=None) -> RadialFunction:
    keep = v > 0.0
    prof = RadialFunction(np.exp(s[keep]), v[keep], p, "bvp", dict(meta or {}))
    return prof


def solve_annulus(ap: AnnulusProblem, n: int = 2048, s_grid=None, v_start=None) -> RadialFunction:
    """Unique positive solution of the Dirichlet problem on the annulus.

    All parameter cases are admissible away from the origin.  A zero
    boundary value is honored by the solve but the returned profile keeps
    only the positive nodes.
    """
    p = ap.params
    if s_grid is None:
        s_grid = np.linspace(math.log(ap.r_a), math.log(ap.r_b), n)
    v0 = _initial_iterate(s_grid, ap.g_a, ap.g_b, p) if v_start is None else v_start
    v, rnorm = _newton_solve(s_grid, v0, ap.g_a, ap.g_b, p)
    return _profile_from_nodes(s_grid, v, p, {"newton_residual": rnorm})


def _ladder_radii(R: float, k_max: float):
    """Inner radii R/2, R/4, ... with k = 1/r_in at most k_max."""
    radii = []
    r_in = R / 2.0
    while 1.0 / r_in <= k_max + 1e-9:
        radii.append(r_in)
        r_in /= 2.0
    if not radii:
        raise ValidationError("k_max admits no ladder step (need k_max >= 2/R)")
    return radii


def _run_ladder(
    p: ProblemParams,
    R: float,
    inner_value,
    h_val: float,
    k_max: float,
    nodes_per_octave: int,
    ref_annulus,
    sandwich=None,
) -> SchemeTrace:
    """Shared machinery of the monotone schemes.

    inner_value(r) supplies the inner Dirichlet datum; the outer datum is
    h_val at radius R throughout.  Grids are nested (one octave appended
    per step), each solve warm-starts from the previous profile, and the
    trace records the contraction on the reference annulus.
    """
    h_s = math.log(2.0) / nodes_per_octave
    s_R = math.log(R)
    radii = _ladder_radii(R, k_max)
    lo, hi = ref_annulus[0] * R, ref_annulus[1] * R
    prev_v = None
    prev_m = 0
    k_values, sup_norms = [], []
    worst_monotone = 0.0
    worst_sandwich = 0.0
    for j, r_in in enumerate(radii):
        m = (j + 1) * nodes_per_octave
        s = s_R - h_s * np.arange(m, 0.0 - 0.5, -1.0)
        g_a = float(inner_value(math.exp(s[0])))
        v0 = _initial_iterate(s, g_a, h_val, p)
        if prev_v is not None:
            v0[m - prev_m :] = prev_v
            v0[0] = g_a
        v, _ = _newton_solve(s, v0, g_a, h_val, p)
        if prev_v is not None:
            shared_new = v[m - prev_m :]
            overlap_scale = np.maximum(prev_v, 1e-250)
            worst_monotone = max(
                worst_monotone, float(np.max((shared_new - prev_v) / overlap_scale))
            )
            r_nodes = np.exp(s[m - prev_m :])
            band = (r_nodes >= lo) & (r_nodes <= hi)
            sup_norms.append(float(np.max(np.abs(shared_new[band] - prev_v[band]))))
            k_values.append(round(1.0 / math.exp(s[0])))
        if sandwich is not None:
            env = sandwich(np.exp(s))
            worst_sandwich = max(
                worst_sandwich,
                float(np.max((v - env) / np.maximum(env, 1e-250))),
            )
        prev_v, prev_m = v, m
    if worst_monotone > MONOTONE_TOL:
        raise NumericalError(
            f"scheme not monotone: relative increase {worst_monotone:.3e}"
        )
    s_final = s_R - h_s * np.arange(prev_m, 0.0 - 0.5, -1.0)
    limit = _profile_from_nodes(s_final, prev_v, p)
    meta = {
        "R": R,
        "h_val": h_val,
        "worst_monotone_increase": worst_monotone,
        "reference_annulus": [lo, hi],
    }
    if sandwich is not None:
        meta["worst_sandwich_excess"] = worst_sandwich
    return SchemeTrace(k_values=k_values, sup_norms=sup_norms, limit=limit, meta=meta)


def approximate_scheme(
    p: ProblemParams,
    C: float,
    R: float,
    h_val: float,
    k_max: float,
    nodes_per_octave: int = 256,
    ref_annulus=(0.3, 0.7),
) -> SchemeTrace:
    """Shrinking-annulus scheme with pure power inner data C r^(-Theta).

    C must dominate the pure power amplitude when ell > 0 (any C > 0 works
    when ell <= 0) and the outer datum, so each annulus solution is a
    super-solution of the next and the ladder decreases.
    """
    if C <= 0.0:
        raise ValidationError("C must be positive")
    ex = compute_exponents(p)
    if ex.ell > 0.0 and C < ex.ell ** (1.0 / (p.q - 1.0)) * (1.0 - 1e-12):
        raise ValidationError(
            f"C={C} below the super-solution threshold {ex.ell ** (1.0 / (p.q - 1.0))}"
        )
    if h_val < 0.0:
        raise ValidationError("h_val must be non-negative")
    if C < h_val * R ** ex.Theta:
        raise ValidationError("C must dominate the outer datum: C >= h * R^Theta")
    return _run_ladder(
        p,
        R,
        lambda r: C * r ** (-ex.Theta),
        h_val,
        k_max,
        nodes_per_octave,
        ref_annulus,
    )


def gamma_scheme(
    p: ProblemParams,
    gamma: float,
    C: float,
    R: float,
    h_val: float,
    k_max: float,
    nodes_per_octave: int = 256,
    ref_annulus=(0.3, 0.7),
) -> SchemeTrace:
    """Shrinking-annulus scheme with two-mode inner data
    gamma Phi+ + C Phi-, selecting the family member with near-origin
    coefficient gamma (Case M2)."""
    label = classify(p)
    if label.major != "M2":
        raise CaseError(f"gamma scheme targets Case M2; params classify as {label.major}")
    if gamma <= 0.0 or C <= 0.0:
        raise ValidationError("gamma and C must be positive")
    if h_val < 0.0:
        raise ValidationError("h_val must be non-negative")
    env_R = gamma * float(phi_plus(R, p)) + C * float(phi_minus(R, p))
    if h_val > env_R:
        raise ValidationError("outer datum exceeds the two-mode envelope at R")

    def inner(r):
        return gamma * float(phi_plus(r, p)) + C * float(phi_minus(r, p))

    def envelope(r):
        return gamma * phi_plus(r, p) + C * phi_minus(r, p)

    trace = _run_ladder(
        p, R, inner, h_val, k_max, nodes_per_octave, ref_annulus, sandwich=envelope
    )
    if trace.meta["worst_sandwich_excess"] > MONOTONE_TOL:
        raise NumericalError(
            "two-mode envelope violated: " f"{trace.meta['worst_sandwich_excess']:.3e}"
        )
    trace.meta["gamma"] = gamma
    trace.meta["C"] = C
    return trace


def _nonexistence_supersolution(p: ProblemParams, eps: float):
    """The explicit bounding super-solution of the no-solution cases."""
    ex = compute_exponents(p)
    label = classify(p)
    on_lower = label.subcase in ("N_lower_boundary", "N_double_boundary")

    def value(r):
        r = np.asarray(r, dtype=float)
        if on_lower:
            return eps * r ** (-ex.p_minus)
        return eps * (r ** (-ex.Theta) + r ** (-ex.p_minus))

    def operator_margin(r):
        # -L(V) + r^theta V^q, exactly: the Phi- part is annihilated and the
        # power part contributes -ell * eps * r^(-Theta-2) >= 0.
        r = np.asarray(r, dtype=float)
        v = value(r)
        lin = 0.0 if on_lower else -ex.ell * eps * r ** (-ex.Theta - 2.0)
        return lin + r ** p.theta * v ** p.q

    return value, operator_margin


def demonstrate_nonexistence(
    p: ProblemParams,
    eps_ladder=(1.0, 0.1, 0.01),
    annulus=(0.5, 2.0),
    n: int = 1024,
) -> dict:
    """Numerical face of the no-solution cases.

    Certifies the explicit super-solution sign on a grid and shows that
    annulus solutions with boundary data on the super-solution shrink
    proportionally to eps, so the only candidate limit is zero.
    """
    label = classify(p)
    if label.major != "NCASE":
        raise CaseError(
            f"non-existence demonstration targets Case N; params classify as {label.major}"
        )
    r_a, r_b = annulus
    grid = np.exp(np.linspace(math.log(r_a) - 2.0, math.log(r_b) + 2.0, 512))
    certificates = []
    sups = []
    for eps in eps_ladder:
        value, margin = _nonexistence_supersolution(p, eps)
        marg = margin(grid)
        scale = np.maximum(grid ** p.theta * value(grid) ** p.q, 1e-250)
        min_normalized = float(np.min(marg / scale))
        certificates.append(
            {
                "eps": eps,
                "min_normalized_margin": min_normalized,
                "passed": bool(min_normalized >= -1e-9),
            }
        )
        prob = AnnulusProblem(r_a, r_b, float(value(r_a)), float(value(r_b)), p)
        sol = solve_annulus(prob, n=n)
        sups.append(float(np.max(sol.values)))
        dominated = np.max(sol.values / value(sol.grid))
        certificates[-1]["solution_below_supersolution"] = bool(dominated <= 1.0 + 1e-8)
    ratios = [sups[i + 1] / sups[i] for i in range(len(sups) - 1)]
    eps_ratios = [eps_ladder[i + 1] / eps_ladder[i] for i in range(len(eps_ladder) - 1)]
    scaling = [r / er for r, er in zip(ratios, eps_ratios)]
    return {
        "case": label.as_dict(),
        "eps_ladder": list(eps_ladder),
        "annulus": [r_a, r_b],
        "certificates": certificates,
        "sup_values": sups,
        "sup_ratios": ratios,
        "scaling_vs_linear": scaling,
        "linear_scaling_ok": bool(
            all(abs(sc - 1.0) <= 0.1 for sc in scaling[-1:])
        ),
    }
