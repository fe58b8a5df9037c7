"""Pareto-optimal beam design and power split for a two-user MISO broadcast
channel with successive interference cancellation.

User 1 (strong) decodes and subtracts user 2's signal before decoding its
own; user 2 treats user 1's signal as noise.  With signal and leakage powers

    s_i = |h_i^H w_i,scaled|^2,   r_i = |h_i^H w_j,scaled|^2   (j != i),

the rates are R1 = log2(1 + s1/sigma1^2) and
R2 = log2(1 + min{ r1/(s1+sigma1^2), s2/(r2+sigma2^2) }): user 2's rate is
limited both by its own SINR and by user 1's ability to decode user 2's
message for cancellation.

The design maximizes user 2's SINR gamma2 subject to an exact SINR target
gamma1* for user 1.  Each beam is parameterized in the basis given by the
component of the user's channel parallel/orthogonal to the other user's
channel; user 2 always transmits at full remaining power while user 1 may
back off.  For a fixed user-1 power p1, the inner problem has a three-case
closed form; the outer problem over p1 is solved numerically (coarse grid
plus golden-section refinement), with a region test that predicts which
case holds at the optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .complex_linalg import angle_theta, as_cvec
from .golden import golden_section_max

# Grid density for the outer p1 search; golden-section then refines the best
# bracket to P1_XTOL.  The grid guards against multiple local maxima, which
# are not ruled out analytically.
P1_GRID = 512
P1_XTOL = 1e-10

# Below this relative norm a parallel/orthogonal direction is treated as
# degenerate (aligned or orthogonal channels).
DEGENERATE_DIR_TOL = 1e-12


class InfeasibleTargetError(ValueError):
    """Requested user-1 SINR target cannot be met with the available power."""


class CaseTag(Enum):
    CASE1 = 1  # alpha2* = 1: user 2's own SINR is never the bottleneck
    CASE2 = 2  # alpha2* at the crossing of the two SINR branches
    CASE3 = 3  # alpha2* = sqrt(theta): user 2's own-SINR branch peak


class OptRegion(Enum):
    OPT_IN_P2 = 2  # optimal p1 lies where case 2 holds
    OPT_IN_P3 = 3  # optimal p1 lies where case 3 holds


@dataclass
class TwoUserChannel:
    """Effective two-user channel with per-user noise(+interference) powers.

    Ordering ||h1||^2/sigma1_sq >= ||h2||^2/sigma2_sq (user 1 at least as
    strong) is validated on construction; equality is admitted for
    boundary studies with symmetric channel qualities.
    """

    h1: np.ndarray
    h2: np.ndarray
    sigma1_sq: float
    sigma2_sq: float
    P: float

    def __post_init__(self):
        self.h1 = as_cvec(self.h1)
        self.h2 = as_cvec(self.h2)
        if self.h1.size != self.h2.size:
            raise ValueError("h1 and h2 must have the same length")
        if self.sigma1_sq <= 0 or self.sigma2_sq <= 0:
            raise ValueError("noise powers must be positive")
        if self.P <= 0:
            raise ValueError("cluster power P must be positive")
        if self.lambda1 < self.lambda2 * (1.0 - 1e-9):
            raise ValueError(
                "ordering violated: ||h1||^2/sigma1^2 must be >= ||h2||^2/sigma2^2"
            )

    @property
    def lambda1(self) -> float:
        return float(np.vdot(self.h1, self.h1).real) / self.sigma1_sq

    @property
    def lambda2(self) -> float:
        return float(np.vdot(self.h2, self.h2).real) / self.sigma2_sq

    @property
    def theta(self) -> float:
        return angle_theta(self.h1, self.h2)


def channel_from_quality(
    lambda1: float,
    lambda2: float,
    theta: float,
    P: float,
    sigma1_sq: float = 1.0,
    sigma2_sq: float = 1.0,
    nt: int = 2,
) -> TwoUserChannel:
    """Canonical channel pair realizing given qualities and angle.

    h1 points along e1 with ||h1||^2 = lambda1*sigma1_sq; h2 lies in the
    e1/e2 plane at squared correlation theta to h1.
    """
    if nt < 2 and theta not in (0.0, 1.0):
        raise ValueError("nt >= 2 required for intermediate angles")
    if not 0.0 <= theta <= 1.0:
        raise ValueError("theta must lie in [0, 1]")
    h1 = np.zeros(nt, dtype=np.complex128)
    h1[0] = math.sqrt(lambda1 * sigma1_sq)
    h2 = np.zeros(nt, dtype=np.complex128)
    h2[0] = math.sqrt(lambda2 * sigma2_sq * theta)
    if nt >= 2:
        h2[1] = math.sqrt(lambda2 * sigma2_sq * (1.0 - theta))
    return TwoUserChannel(h1, h2, sigma1_sq, sigma2_sq, P)


@dataclass
class DerivedParams:
    """Scalar reduction of a design instance.

    lambda_i are the per-user channel SNR qualities, theta the squared
    channel correlation, Gamma = gamma1*/lambda1 the normalized user-1
    target, and tau the region-test threshold (set to +inf when theta = 0,
    where the 1/theta divergence makes case 2 always win).
    """

    lambda1: float
    lambda2: float
    theta: float
    Gamma: float
    tau: float

    @property
    def gamma1_star(self) -> float:
        return self.Gamma * self.lambda1


def derive_params(ch: TwoUserChannel, gamma1_star: float) -> DerivedParams:
    """Scalar parameters for a channel and a user-1 SINR target.

    Raises InfeasibleTargetError when the normalized target Gamma exceeds P
    (even full power on a matched filter cannot reach the target).
    """
    if gamma1_star < 0:
        raise ValueError("gamma1_star must be nonnegative")
    lam1 = ch.lambda1
    lam2 = ch.lambda2
    Gamma = gamma1_star / lam1
    if Gamma > ch.P * (1.0 + 1e-12):
        raise InfeasibleTargetError(
            f"normalized target Gamma={Gamma:.6g} exceeds cluster power P={ch.P:.6g}"
        )
    Gamma = min(Gamma, ch.P)
    theta = ch.theta
    tau = math.inf if theta == 0.0 else (1.0 / lam1 + Gamma) / theta - 1.0 / lam2
    return DerivedParams(lam1, lam2, theta, Gamma, tau)


def alpha1_star_fixed(theta: float, Gamma: float) -> float:
    """Minimal user-1 parallel weight meeting the target at unit power.

    Zero while the orthogonal direction alone can meet the target
    (Gamma <= 1-theta); otherwise the unit-circle solution
    sqrt(theta*Gamma) - sqrt((1-theta)(1-Gamma)).
    """
    if not 0.0 <= theta <= 1.0:
        raise ValueError("theta must lie in [0, 1]")
    if not 0.0 <= Gamma <= 1.0:
        raise ValueError("Gamma must lie in [0, 1] for unit user-1 power")
    if Gamma <= 1.0 - theta:
        return 0.0
    return math.sqrt(theta * Gamma) - math.sqrt((1.0 - theta) * (1.0 - Gamma))


def alpha1_star(p1: float, params: DerivedParams) -> float:
    """Minimal user-1 parallel weight at power p1 (requires p1 >= Gamma)."""
    G, th = params.Gamma, params.theta
    if p1 < G * (1.0 - 1e-12):
        raise InfeasibleTargetError(
            f"p1={p1:.6g} below the minimum feasible power Gamma={G:.6g}"
        )
    if p1 == 0.0:
        return 0.0  # only reachable when Gamma == 0
    ratio = min(G / p1, 1.0)
    if ratio <= 1.0 - th:
        return 0.0
    return math.sqrt(th * ratio) - math.sqrt((1.0 - th) * (1.0 - ratio))


def alpha1_beta1(p1: float, params: DerivedParams) -> tuple[float, float]:
    """(alpha1*, beta1*) meeting the user-1 constraint at power p1.

    beta1 follows from the constraint; the on-circle branch uses the
    algebraically equivalent form sqrt(1-theta)*t + sqrt(theta*(1-t^2))
    with t = sqrt(Gamma/p1), which avoids catastrophic cancellation as
    theta -> 1.
    """
    G, th = params.Gamma, params.theta
    if p1 == 0.0:
        return 0.0, 0.0
    t2 = min(G / p1, 1.0)
    t = math.sqrt(t2)
    if th == 1.0:
        return t, 0.0
    if t2 <= 1.0 - th:
        return 0.0, t / math.sqrt(1.0 - th)
    a1 = math.sqrt(th * t2) - math.sqrt((1.0 - th) * (1.0 - t2))
    b1 = math.sqrt(1.0 - th) * t + math.sqrt(th * max(1.0 - t2, 0.0))
    return a1, b1


@dataclass
class CaseCoefficients:
    """Inner-problem coefficients at a given p1.

    a scales user 1's decoding branch, b/c the parallel/orthogonal parts of
    user 2's own branch (all in the square-root SINR domain and including
    the sqrt(P-p1) factor).  d = b + c^2/b separates cases 2 and 3; it is
    +inf when b = 0 (theta = 0), where case 3 never applies.
    """

    a: float
    b: float
    c: float
    d: float = field(init=False)

    def __post_init__(self):
        self.d = self.b + self.c**2 / self.b if self.b > 0.0 else math.inf


def case_coeffs(p1: float, ch: TwoUserChannel, params: DerivedParams) -> CaseCoefficients:
    """Evaluate the inner-problem coefficients a, b, c (and d) at p1."""
    lam1, lam2, th, G = params.lambda1, params.lambda2, params.theta, params.Gamma
    a1 = alpha1_star(p1, params)
    root = math.sqrt(max(ch.P - p1, 0.0))
    den = lam2 * p1 * a1 * a1 + 1.0
    a = root * math.sqrt(lam1 / (1.0 + G * lam1))
    b = root * math.sqrt(lam2 * th / den)
    c = root * math.sqrt(lam2 * (1.0 - th) / den)
    return CaseCoefficients(a=a, b=b, c=c)


def classify_case(ch: TwoUserChannel, params: DerivedParams) -> OptRegion:
    """Predict which inner-problem case holds at the optimal p1.

    Case 2 wins iff theta*Gamma < tau, or tau >= 0 with enough total power:
    P >= Gamma + (sqrt(theta*Gamma)-sqrt(tau)) * (sqrt(theta*Gamma)
    + 1/(lambda2*sqrt(tau))) / (1-theta).  Degenerate limits: theta = 0
    gives tau = +inf (case 2); tau = 0 or theta = 1 push the power
    threshold to +inf (case 3).
    """
    th, G, lam2 = params.theta, params.Gamma, params.lambda2
    tau = params.tau
    tG = th * G
    if tG < tau:
        return OptRegion.OPT_IN_P2
    if tau < 0.0 or tau == 0.0 or th == 1.0:
        return OptRegion.OPT_IN_P3
    thr = G + (math.sqrt(tG) - math.sqrt(tau)) * (
        math.sqrt(tG) + 1.0 / (lam2 * math.sqrt(tau))
    ) / (1.0 - th)
    return OptRegion.OPT_IN_P2 if ch.P >= thr else OptRegion.OPT_IN_P3


def gamma2_of_p1(
    p1: float, ch: TwoUserChannel, params: DerivedParams
) -> tuple[float, CaseTag]:
    """Best achievable user-2 SINR at user-1 power p1, with its case tag.

    Case boundaries (a = b, a = d) are ties resolved toward the lower case;
    the value is continuous across them.
    """
    cc = case_coeffs(p1, ch, params)
    if cc.a <= cc.b:
        return cc.a * cc.a, CaseTag.CASE1
    if cc.a <= cc.d:
        h = math.hypot(cc.c, cc.a - cc.b)
        alpha2 = cc.c / h if h > 0.0 else 1.0
        return (cc.a * alpha2) ** 2, CaseTag.CASE2
    return cc.b * cc.b + cc.c * cc.c, CaseTag.CASE3


def _gamma2_pointwise_vec(p1: np.ndarray, ch: TwoUserChannel, params: DerivedParams):
    """Vectorized gamma2_of_p1 values (no tags) over a p1 array."""
    lam1, lam2, th, G = params.lambda1, params.lambda2, params.theta, params.Gamma
    p1 = np.asarray(p1, dtype=float)
    ratio = np.minimum(np.divide(G, p1, out=np.zeros_like(p1), where=p1 > 0), 1.0)
    a1 = np.where(
        ratio <= 1.0 - th,
        0.0,
        np.sqrt(th * ratio) - np.sqrt((1.0 - th) * (1.0 - ratio)),
    )
    rem = np.maximum(ch.P - p1, 0.0)
    den = lam2 * p1 * a1 * a1 + 1.0
    a2_ = rem * lam1 / (1.0 + G * lam1)  # a^2
    b2_ = rem * lam2 * th / den
    c2_ = rem * lam2 * (1.0 - th) / den
    a_ = np.sqrt(a2_)
    b_ = np.sqrt(b2_)
    case1 = a_ <= b_
    with np.errstate(divide="ignore", invalid="ignore"):
        crossing = a2_ * c2_ / (c2_ + (a_ - b_) ** 2)
    crossing = np.where(c2_ + (a_ - b_) ** 2 > 0.0, crossing, a2_)
    case3 = (~case1) & (b_ > 0.0) & (a_ * b_ > b2_ + c2_)
    return np.where(case1, a2_, np.where(case3, b2_ + c2_, crossing))


def maximize_gamma2_over_p1(
    ch: TwoUserChannel, params: DerivedParams
) -> tuple[float, float]:
    """argmax/max of the user-2 SINR over p1 in [Gamma, P].

    Coarse P1_GRID scan locates the global bracket; golden-section refines
    it to P1_XTOL.  The scanned curve is the pointwise-optimal SINR, so the
    returned value is always achievable.
    """
    G, P = params.Gamma, ch.P
    if P - G <= P1_XTOL:
        return P, 0.0
    grid = np.linspace(G, P, P1_GRID)
    vals = _gamma2_pointwise_vec(grid, ch, params)
    i = int(np.argmax(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, P1_GRID - 1)]
    p1_opt, v_opt = golden_section_max(
        lambda p: gamma2_of_p1(p, ch, params)[0], lo, hi, xtol=P1_XTOL
    )
    if v_opt < vals[i]:
        p1_opt, v_opt = float(grid[i]), float(vals[i])
    return float(p1_opt), float(v_opt)


@dataclass
class BeamSolution:
    """Designed beams and power split for one cluster.

    w1_scaled/w2_scaled carry the powers (sqrt(p_i) times a unit-ball
    direction); s/r fields are the resulting signal and leakage powers.
    """

    alpha1: float
    beta1: float
    alpha2: float
    p1: float
    p2: float
    case_tag: CaseTag
    gamma2_star: float
    w1_scaled: np.ndarray
    w2_scaled: np.ndarray
    s1: float
    r1: float
    s2: float
    r2: float


def _direction_pair(x: np.ndarray, ref: np.ndarray, parallel_fallback: str):
    """Unit directions of x parallel and orthogonal to ref.

    Degenerate geometry: when the parallel component vanishes (orthogonal
    channels) the fallback is either the zero vector or the ref direction
    itself (needed for beam 2, which must leak energy onto the other
    user's channel on purpose); a vanishing orthogonal component (aligned
    channels) always degrades to the zero vector.
    """
    ref_unit = ref / np.linalg.norm(ref)
    par = ref_unit * np.vdot(ref_unit, x)
    perp = x - par
    npar = float(np.linalg.norm(par))
    nperp = float(np.linalg.norm(perp))
    nx = float(np.linalg.norm(x))
    if npar > DEGENERATE_DIR_TOL * nx:
        u_par = par / npar
    elif parallel_fallback == "ref":
        u_par = ref_unit
    else:
        u_par = np.zeros_like(x)
    u_perp = perp / nperp if nperp > DEGENERATE_DIR_TOL * nx else None
    return u_par, u_perp


def _build_solution(
    ch: TwoUserChannel,
    params: DerivedParams,
    p1: float,
    p2: float,
    gamma2: float,
    tag: CaseTag,
    alpha2: float,
) -> BeamSolution:
    a1, b1 = alpha1_beta1(p1, params)
    u_par1, u_perp1 = _direction_pair(ch.h1, ch.h2, parallel_fallback="zero")
    u_par2, u_perp2 = _direction_pair(ch.h2, ch.h1, parallel_fallback="ref")

    if u_perp1 is None:
        # aligned channels: pure power control along the common direction
        a1, b1 = (math.sqrt(min(params.Gamma / p1, 1.0)) if p1 > 0 else 0.0), 0.0
        w1 = a1 * u_par1
    else:
        w1 = a1 * u_par1 + b1 * u_perp1
    if u_perp2 is None:
        alpha2 = 1.0
        w2 = u_par2
    else:
        w2 = alpha2 * u_par2 + math.sqrt(max(1.0 - alpha2**2, 0.0)) * u_perp2

    w1s = math.sqrt(max(p1, 0.0)) * w1
    w2s = math.sqrt(max(p2, 0.0)) * w2
    s1 = abs(np.vdot(ch.h1, w1s)) ** 2
    r2 = abs(np.vdot(ch.h2, w1s)) ** 2
    s2 = abs(np.vdot(ch.h2, w2s)) ** 2
    r1 = abs(np.vdot(ch.h1, w2s)) ** 2
    return BeamSolution(
        alpha1=a1,
        beta1=b1,
        alpha2=alpha2,
        p1=p1,
        p2=p2,
        case_tag=tag,
        gamma2_star=gamma2,
        w1_scaled=w1s,
        w2_scaled=w2s,
        s1=float(s1),
        r1=float(r1),
        s2=float(s2),
        r2=float(r2),
    )


def _alpha2_for_case(cc: CaseCoefficients, tag: CaseTag, theta: float) -> float:
    if tag is CaseTag.CASE1:
        return 1.0
    if tag is CaseTag.CASE2:
        h = math.hypot(cc.c, cc.a - cc.b)
        return cc.c / h if h > 0.0 else 1.0
    return math.sqrt(theta)


def optimize_p1(ch: TwoUserChannel, params: DerivedParams) -> BeamSolution:
    """Full power-allocated Pareto-optimal design.

    The case-region prediction is recorded implicitly through the returned
    case tag; the numeric search runs on the pointwise-optimal SINR curve,
    which coincides with the predicted case's branch at the optimum.
    """
    p1_opt, _ = maximize_gamma2_over_p1(ch, params)
    gamma2, tag = gamma2_of_p1(p1_opt, ch, params)
    cc = case_coeffs(p1_opt, ch, params)
    alpha2 = _alpha2_for_case(cc, tag, params.theta)
    return _build_solution(ch, params, p1_opt, ch.P - p1_opt, gamma2, tag, alpha2)


def case3_closed_form_p1(ch: TwoUserChannel, params: DerivedParams) -> float:
    """Stationary point of the case-3 SINR branch, in closed form.

    With psi1 = theta*Gamma + (1-theta)(P-Gamma) + 1/lambda2 and
    psi2 = theta*Gamma - (1-theta)(P-Gamma), the interior maximizer is

        p1 = Gamma + x^2/(1-theta),
        x  = 2*sqrt(theta*Gamma)*(1-theta)*(P-Gamma) / (psi1 + sqrt(D)),
        D  = psi2^2 + 2*psi1/lambda2 - 1/lambda2^2.

    The rationalized form of x is exact and stays stable as lambda2 -> 0,
    where p1 -> Gamma.  The result is clamped to [Gamma, P].  theta in
    {0, 1} is degenerate (raises ValueError; fall back to the numeric
    search).
    """
    th, G, lam2 = params.theta, params.Gamma, params.lambda2
    P = ch.P
    if th in (0.0, 1.0):
        raise ValueError("closed form undefined for theta in {0, 1}; use numeric search")
    psi1 = th * G + (1.0 - th) * (P - G) + 1.0 / lam2
    psi2 = th * G - (1.0 - th) * (P - G)
    # D = psi2^2 + 2*psi1/lam2 - 1/lam2^2, grouped to avoid cancellation
    D = psi2 * psi2 + (1.0 + 2.0 * (th * G + (1.0 - th) * (P - G)) * lam2) / (lam2 * lam2)
    x = 2.0 * math.sqrt(th * G) * (1.0 - th) * (P - G) / (psi1 + math.sqrt(D))
    p1 = G + x * x / (1.0 - th)
    return min(max(p1, G), P)


def maximize_branch_gamma2(
    ch: TwoUserChannel, params: DerivedParams, region: OptRegion
) -> tuple[float, float]:
    """argmax/max of a single case branch of the SINR over p1 in [Gamma, P].

    Used to cross-check the closed-form case-3 maximizer; the branch formula
    is evaluated everywhere regardless of pointwise case membership.
    """
    lam2, G = params.lambda2, params.Gamma
    P = ch.P

    def branch2(p1: float) -> float:
        cc = case_coeffs(p1, ch, params)
        h = math.hypot(cc.c, cc.a - cc.b)
        alpha2 = cc.c / h if h > 0.0 else 1.0
        return (cc.a * alpha2) ** 2

    def branch3(p1: float) -> float:
        a1 = alpha1_star(p1, params)
        return (P - p1) * lam2 / (lam2 * p1 * a1 * a1 + 1.0)

    f = branch2 if region is OptRegion.OPT_IN_P2 else branch3
    if P - G <= P1_XTOL:
        return P, 0.0
    grid = np.linspace(G, P, P1_GRID)
    vals = np.array([f(p) for p in grid])
    i = int(np.argmax(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, P1_GRID - 1)]
    p1_opt, v_opt = golden_section_max(f, lo, hi, xtol=P1_XTOL)
    if v_opt < vals[i]:
        p1_opt, v_opt = float(grid[i]), float(vals[i])
    return float(p1_opt), float(v_opt)


def fixed_power_design(ch: TwoUserChannel, params: DerivedParams) -> BeamSolution:
    """Beam-only design at fixed unit powers p1 = p2 = 1.

    Requires Gamma <= 1 (unit power caps the reachable user-1 SINR at
    lambda1).  Three cases: alpha2* = 1 when a <= b; the branch crossing
    c/sqrt(c^2+(a-b)^2) when b < a <= b + c^2/b; sqrt(theta) otherwise.
    """
    lam1, lam2, th, G = params.lambda1, params.lambda2, params.theta, params.Gamma
    if G > 1.0 + 1e-12:
        raise InfeasibleTargetError(
            f"Gamma={G:.6g} > 1 is infeasible at fixed unit user-1 power"
        )
    G = min(G, 1.0)
    a1 = alpha1_star_fixed(th, G)
    den = lam2 * a1 * a1 + 1.0
    a2_ = lam1 / (1.0 + G * lam1)
    b2_ = lam2 * th / den
    c2_ = lam2 * (1.0 - th) / den
    a_, b_, c_ = math.sqrt(a2_), math.sqrt(b2_), math.sqrt(c2_)
    if a_ <= b_:
        tag, gamma2, alpha2 = CaseTag.CASE1, a2_, 1.0
    elif b_ == 0.0 or a_ * b_ <= b2_ + c2_:
        h = math.hypot(c_, a_ - b_)
        alpha2 = c_ / h if h > 0.0 else 1.0
        tag, gamma2 = CaseTag.CASE2, a2_ * alpha2 * alpha2
    else:
        tag, gamma2, alpha2 = CaseTag.CASE3, lam2 / den, math.sqrt(th)
    return _build_solution(ch, params, 1.0, 1.0, gamma2, tag, alpha2)


def pareto_boundary(
    ch: TwoUserChannel, n_points: int, fixed_power: bool = False
) -> list[tuple[float, float]]:
    """Rate-region boundary points (R1, R2), swept over the user-1 target.

    The normalized target runs over [0, P] (power-allocated design) or
    [0, 1] (fixed unit powers); R2 is non-increasing in R1 along the
    output.
    """
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    g_max = min(1.0, ch.P) if fixed_power else ch.P
    lam1 = ch.lambda1
    out = []
    for G in np.linspace(0.0, g_max, n_points):
        params = derive_params(ch, float(G) * lam1)
        sol = fixed_power_design(ch, params) if fixed_power else optimize_p1(ch, params)
        out.append(
            (math.log2(1.0 + params.gamma1_star), math.log2(1.0 + sol.gamma2_star))
        )
    return out


def achieved_user1_sinr(sol: BeamSolution, ch: TwoUserChannel) -> float:
    """User-1 SINR realized by the scaled beams (interference cancelled)."""
    return sol.s1 / ch.sigma1_sq


def achieved_gamma2(sol: BeamSolution, ch: TwoUserChannel) -> float:
    """User-2 SINR realized by the scaled beams."""
    return min(
        sol.r1 / (sol.s1 + ch.sigma1_sq),
        sol.s2 / (sol.r2 + ch.sigma2_sq),
    )
