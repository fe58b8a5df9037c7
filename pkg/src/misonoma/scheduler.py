"""Multi-cluster downlink scheduling: semi-orthogonal strong-user selection,
zero-forcing across clusters, interference-aware weak-user pairing with the
Pareto-optimal per-cluster design, and realized-rate evaluation.

Strong users are picked greedily for near-orthogonal channels; every
cluster's beams are then designed in the orthogonal complement of the other
clusters' strong channels, so strong users see no inter-cluster
interference by construction.  Weak users do experience it; candidates are
scored with an interference estimate that uses already-designed beams for
earlier clusters and normalized projected strong channels at full cluster
power as stand-ins for clusters not designed yet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .complex_linalg import OrthonormalBasis, as_cvec, gram_schmidt, project_complement
from .two_user_core import (
    BeamSolution,
    InfeasibleTargetError,
    TwoUserChannel,
    derive_params,
    optimize_p1,
)

# residual-norm floor below which a candidate adds no usable direction
_RESIDUAL_TOL = 1e-12


@dataclass
class User:
    uid: int
    h: np.ndarray
    eps_sq: float

    def __post_init__(self):
        self.h = as_cvec(self.h)
        if self.eps_sq <= 0:
            raise ValueError("AWGN power must be positive")


@dataclass
class UserPool:
    strong: list[User]
    weak: list[User]

    def __post_init__(self):
        ids = [u.uid for u in self.strong] + [u.uid for u in self.weak]
        if len(set(ids)) != len(ids):
            raise ValueError("user ids must be unique across the pool")

    def by_id(self, uid: int) -> User:
        for u in self.strong + self.weak:
            if u.uid == uid:
                return u
        raise KeyError(uid)


@dataclass
class SUSConfig:
    target_count: int
    delta: float = 0.3  # semi-orthogonality parameter in (0, 1]

    def __post_init__(self):
        if self.target_count < 1:
            raise ValueError("target_count must be at least 1")
        if not 0.0 < self.delta <= 1.0:
            raise ValueError("delta must lie in (0, 1]")


@dataclass
class ClusterPlan:
    """One scheduled cluster: its pair, projected channels, and final beams.

    single_user marks clusters that fell back to serving only the strong
    user with a matched-filter beam (no eligible weak candidate left).
    """

    strong_id: int
    weak_id: int | None
    h1_eff: np.ndarray
    h2_eff: np.ndarray | None
    sigma1_sq: float
    sigma_hat_u_sq: float | None
    solution: BeamSolution | None
    w1_tilde: np.ndarray
    w2_tilde: np.ndarray
    single_user: bool = False


@dataclass
class SchedulerOutput:
    clusters: list[ClusterPlan]
    Kc: int
    P: float  # per-cluster power P_T / Kc
    realized_rates: list[tuple[float, float]] = field(default_factory=list)


def sus_select(pool_channels, cfg: SUSConfig) -> list[int]:
    """Greedy semi-orthogonal user selection.

    Repeatedly picks the user whose channel has the largest component
    orthogonal to the span of the already-selected (orthogonalized)
    channels, then discards candidates whose normalized correlation to the
    new basis direction exceeds delta.  May return fewer than target_count
    users.  Ties break to the lowest index.
    """
    chans = [as_cvec(h) for h in pool_channels]
    if not chans:
        raise ValueError("empty candidate pool")
    max_norm = max(float(np.linalg.norm(h)) for h in chans)
    selected: list[int] = []
    basis: list[np.ndarray] = []
    candidates = list(range(len(chans)))
    while candidates and len(selected) < cfg.target_count:
        best_i, best_norm, best_res = -1, -1.0, None
        for i in candidates:
            r = chans[i].copy()
            for b in basis:
                r -= np.vdot(b, r) * b
            n = float(np.linalg.norm(r))
            if n > best_norm:
                best_i, best_norm, best_res = i, n, r
        if best_norm <= _RESIDUAL_TOL * max_norm:
            break  # remaining candidates lie in the selected span
        g = best_res / best_norm
        selected.append(best_i)
        basis.append(g)
        candidates = [
            i
            for i in candidates
            if i != best_i
            and abs(np.vdot(g, chans[i])) <= cfg.delta * float(np.linalg.norm(chans[i]))
        ]
    return selected


def estimate_ici(
    weak_channel,
    eps_sq: float,
    designed_w1,
    designed_w2,
    pending_w_hat,
    P: float,
) -> float:
    """Interference-plus-noise estimate at a weak-user candidate.

    Designed clusters contribute through their power-scaled beams; pending
    clusters through their normalized projected strong channels at full
    cluster power P.
    """
    g = as_cvec(weak_channel)
    total = float(eps_sq)
    for w in list(designed_w1) + list(designed_w2):
        w = as_cvec(w)
        if w.size != g.size:
            raise ValueError("beam/channel dimension mismatch")
        total += abs(np.vdot(g, w)) ** 2
    for w in pending_w_hat:
        w = as_cvec(w)
        if w.size != g.size:
            raise ValueError("beam/channel dimension mismatch")
        total += P * abs(np.vdot(g, w)) ** 2
    return total


def schedule(
    pool: UserPool, Nt: int, P_T: float, Gamma: float, cfg: SUSConfig
) -> SchedulerOutput:
    """Full scheduling pass: strong-user selection, weak pairing, beams.

    Candidates whose effective channel quality would invert the
    strong/weak ordering are skipped; a cluster with no eligible candidate
    is served single-user at full cluster power (flagged in its plan).
    """
    if not pool.strong or not pool.weak:
        raise ValueError("both user pools must be nonempty")
    if cfg.target_count > Nt:
        raise ValueError("target_count must not exceed Nt")
    sel = sus_select([u.h for u in pool.strong], cfg)
    Kc = len(sel)
    if len(pool.weak) < Kc:
        raise ValueError(f"weak pool ({len(pool.weak)}) smaller than Kc ({Kc})")
    P = P_T / Kc
    if Gamma < 0 or Gamma > P * (1.0 + 1e-12):
        raise InfeasibleTargetError(
            f"Gamma={Gamma:.6g} outside [0, P_T/Kc={P:.6g}]"
        )
    sel_users = [pool.strong[i] for i in sel]

    bases: list[OrthonormalBasis] = []
    h_eff: list[np.ndarray] = []
    for k in range(Kc):
        others = [sel_users[j].h for j in range(Kc) if j != k]
        basis = gram_schmidt(others) if others else OrthonormalBasis(vectors=[])
        bases.append(basis)
        h_eff.append(project_complement(sel_users[k].h, basis))
    w_hat = [he / np.linalg.norm(he) for he in h_eff]

    remaining = sorted(pool.weak, key=lambda u: u.uid)
    W1: list[np.ndarray] = []
    W2: list[np.ndarray] = []
    plans: list[ClusterPlan] = []
    for k in range(Kc):
        pending = w_hat[k + 1 :]
        eps1 = sel_users[k].eps_sq  # zero-forced: strong user sees AWGN only
        lam1 = float(np.vdot(h_eff[k], h_eff[k]).real) / eps1
        best = None
        for u in remaining:
            sig_hat = estimate_ici(u.h, u.eps_sq, W1, W2, pending, P)
            g_eff = project_complement(u.h, bases[k])
            g_norm_sq = float(np.vdot(g_eff, g_eff).real)
            if g_norm_sq <= 0.0 or g_norm_sq / sig_hat > lam1:
                continue  # ordering would invert; not a valid weak pairing
            ch = TwoUserChannel(h_eff[k], g_eff, eps1, sig_hat, P)
            params = derive_params(ch, Gamma * lam1)
            sol = optimize_p1(ch, params)
            if best is None or sol.gamma2_star > best[2].gamma2_star:
                best = (u, ch, sol, sig_hat, g_eff)
        if best is None:
            w1 = math.sqrt(P) * w_hat[k]
            w2 = np.zeros_like(w1)
            plans.append(
                ClusterPlan(
                    strong_id=sel_users[k].uid,
                    weak_id=None,
                    h1_eff=h_eff[k],
                    h2_eff=None,
                    sigma1_sq=eps1,
                    sigma_hat_u_sq=None,
                    solution=None,
                    w1_tilde=w1,
                    w2_tilde=w2,
                    single_user=True,
                )
            )
            W1.append(w1)
            W2.append(w2)
            continue
        u, ch, sol, sig_hat, g_eff = best
        plans.append(
            ClusterPlan(
                strong_id=sel_users[k].uid,
                weak_id=u.uid,
                h1_eff=h_eff[k],
                h2_eff=g_eff,
                sigma1_sq=eps1,
                sigma_hat_u_sq=sig_hat,
                solution=sol,
                w1_tilde=sol.w1_scaled,
                w2_tilde=sol.w2_scaled,
            )
        )
        W1.append(sol.w1_scaled)
        W2.append(sol.w2_scaled)
        remaining = [r for r in remaining if r.uid != u.uid]

    out = SchedulerOutput(clusters=plans, Kc=Kc, P=P)
    rates = dict(realized_rates(out, pool))
    out.realized_rates = [
        (
            rates[plan.strong_id],
            rates.get(plan.weak_id, 0.0) if plan.weak_id is not None else 0.0,
        )
        for plan in plans
    ]
    return out


def realized_rates(output: SchedulerOutput, pool: UserPool) -> list[tuple[int, float]]:
    """Per-user rates recomputed from actual channels and all final beams.

    Strong users: own signal over residual interference plus noise (the
    in-cluster weak-user signal is cancelled).  Weak users: the minimum of
    the strong user's decoding SINR for the weak message and the weak
    user's own SINR, both with the realized interference.
    """
    out: list[tuple[int, float]] = []
    for k, plan in enumerate(output.clusters):
        others = [
            w
            for kk, p in enumerate(output.clusters)
            if kk != k
            for w in (p.w1_tilde, p.w2_tilde)
        ]
        hs = pool.by_id(plan.strong_id)
        ici1 = sum(abs(np.vdot(hs.h, w)) ** 2 for w in others)
        s1 = abs(np.vdot(hs.h, plan.w1_tilde)) ** 2
        sig1 = ici1 + hs.eps_sq
        out.append((plan.strong_id, math.log2(1.0 + s1 / sig1)))
        if plan.weak_id is None:
            continue
        uw = pool.by_id(plan.weak_id)
        ici2 = sum(abs(np.vdot(uw.h, w)) ** 2 for w in others)
        r1 = abs(np.vdot(hs.h, plan.w2_tilde)) ** 2
        s2 = abs(np.vdot(uw.h, plan.w2_tilde)) ** 2
        r2 = abs(np.vdot(uw.h, plan.w1_tilde)) ** 2
        sinr2 = min(r1 / (s1 + sig1), s2 / (r2 + ici2 + uw.eps_sq))
        out.append((plan.weak_id, math.log2(1.0 + sinr2)))
    return out


def baseline_sus_zf(
    pool: UserPool, Nt: int, P_T: float, cfg: SUSConfig
) -> tuple[float, float, float]:
    """Conventional reference: two scheduling intervals with ZF beams.

    Each interval selects users from one pool with the same greedy
    semi-orthogonal rule and serves them with zero-forcing beams (each
    user's channel projected onto the complement of the co-scheduled
    users' span, normalized) at equal power P_T/Kc.  Returns the two
    interval sum rates and their average (each group is served half the
    time).
    """

    def interval(users: list[User]) -> float:
        if not users:
            raise ValueError("empty user pool")
        sel = sus_select([u.h for u in users], cfg)
        if not sel:
            raise ValueError("selection returned no users")
        p = P_T / len(sel)
        total = 0.0
        for i in sel:
            others = [users[j].h for j in sel if j != i]
            basis = gram_schmidt(others) if others else OrthonormalBasis(vectors=[])
            w = project_complement(users[i].h, basis)
            w_norm = float(np.linalg.norm(w))
            if w_norm == 0.0:
                continue
            w /= w_norm
            gain = abs(np.vdot(users[i].h, w)) ** 2
            total += math.log2(1.0 + p * gain / users[i].eps_sq)
        return total

    s_strong = interval(pool.strong)
    s_weak = interval(pool.weak)
    return s_strong, s_weak, 0.5 * (s_strong + s_weak)
