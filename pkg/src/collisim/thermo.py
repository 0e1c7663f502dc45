"""Thermodynamic accounting over collision trajectories.

Sign conventions, used everywhere: Q > 0 is heat flowing into the
colliding unit (dissipated); W > 0 is work injected into system plus
unit by switching the interaction on and off, so the first law reads
dE_S = W - Q per collision.  Entropies are in the configured log base;
beta * Q terms are converted to the same base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg, qstate
from .engine import Trajectory
from .errors import ConfigError, NotConvergedError

STEADY_WINDOW = 50
STEADY_DRIFT = 1e-8


def heat_to_ancilla(joint_before: np.ndarray, joint_after: np.ndarray,
                    dims: list[int], h_anc: np.ndarray, anc: int = 1) -> float:
    """Tr[h_anc (rho'_E - rho_E)]; positive when energy flows into the unit."""
    e0 = linalg.partial_trace(joint_before, dims, [anc])
    e1 = linalg.partial_trace(joint_after, dims, [anc])
    return float(np.trace(h_anc @ (e1 - e0)).real)


def switching_work(joint_before: np.ndarray, joint_after: np.ndarray,
                   dims: list[int], h_s: np.ndarray, h_anc: np.ndarray,
                   anc: int = 1) -> float:
    """Net bare-energy change of S+E over a collision.

    Because the total Hamiltonian is constant during the collision and the
    interaction switches instantaneously at its boundaries, the switching
    work equals the jump of <H_S + H_E> over the collision.
    """
    h = linalg.embed_operator(h_s, dims, [0]) + linalg.embed_operator(h_anc, dims, [anc])
    return float(np.trace(h @ (joint_after - joint_before)).real)


def entropy_production(ds_s: float, ds_anc: float, q_bath: float, beta: float,
                       base: float = 2.0) -> float:
    """dS_S + dS_E - beta Q, with Q the heat absorbed from the thermal bath."""
    return ds_s + ds_anc - beta * q_bath / math.log(base)


@dataclass
class DetailedBalanceReport:
    local_db: float               # ||[H_S + H_E, V]||; zero iff local detailed balance
    inverted_db: float            # ||[H_S - H_E, V]||; zero for the battery interaction
    global_db: float | None = None  # ||[H_I, V]|| when an intersystem H_I is supplied


def detailed_balance_report(h_s: np.ndarray, h_anc: np.ndarray, v: np.ndarray,
                            h_int: np.ndarray | None = None) -> DetailedBalanceReport:
    """Commutator diagnostics for local/inverted/global detailed balance."""
    d_s, d_a = h_s.shape[0], h_anc.shape[0]
    plus = linalg.kron(h_s, np.eye(d_a)) + linalg.kron(np.eye(d_s), h_anc)
    minus = linalg.kron(h_s, np.eye(d_a)) - linalg.kron(np.eye(d_s), h_anc)
    glob = None
    if h_int is not None:
        glob = linalg.commutator_norm(linalg.kron(h_int, np.eye(d_a)), v)
    return DetailedBalanceReport(
        local_db=linalg.commutator_norm(plus, v),
        inverted_db=linalg.commutator_norm(minus, v),
        global_db=glob)


@dataclass
class ThermoLedger:
    """Per-step and cumulative thermodynamic series for a trajectory."""
    step: np.ndarray
    E_S: np.ndarray           # system energy after each collision
    dE_S: np.ndarray
    Q_resource: np.ndarray
    Q_bath: np.ndarray
    W: np.ndarray
    S_S: np.ndarray
    S_anc: np.ndarray
    dS_S: np.ndarray
    dS_anc: np.ndarray
    I_SE: np.ndarray
    Sigma: np.ndarray
    D_env_relent: np.ndarray
    D_pair: np.ndarray

    @property
    def Q_total(self) -> np.ndarray:
        return self.Q_resource + self.Q_bath

    @property
    def first_law_residual(self) -> np.ndarray:
        return self.dE_S - (self.W - self.Q_total)

    def cumulative(self, name: str) -> np.ndarray:
        return np.cumsum(getattr(self, name))


def build_ledger(traj: Trajectory) -> ThermoLedger:
    recs = traj.records
    role = np.array([r.role for r in recs])
    q = np.array([r.Q for r in recs])
    return ThermoLedger(
        step=np.array([r.step for r in recs]),
        E_S=np.array([r.E_S_post for r in recs]),
        dE_S=np.array([r.dE_S for r in recs]),
        Q_resource=np.where(role == "resource", q, 0.0),
        Q_bath=np.where(role == "bath", q, 0.0),
        W=np.array([r.W for r in recs]),
        S_S=np.array([r.S_S_post for r in recs]),
        S_anc=np.array([r.S_anc_post for r in recs]),
        dS_S=np.array([r.dS_S for r in recs]),
        dS_anc=np.array([r.dS_anc for r in recs]),
        I_SE=np.array([r.I_SE for r in recs]),
        Sigma=np.array([r.Sigma for r in recs]),
        D_env_relent=np.array([r.D_env_relent for r in recs]),
        D_pair=np.array([math.nan if r.D_pair is None else r.D_pair for r in recs]),
    )


def steady_state_drift(traj: Trajectory, window: int = STEADY_WINDOW) -> float:
    """Largest trace distance between successive system snapshots in the window."""
    if traj.snapshots is None or len(traj.snapshots) < window + 1:
        raise ConfigError("trajectory too short (or missing snapshots) for the window")
    tail = traj.snapshots[-(window + 1):]
    return max(qstate.trace_distance(a, b) for a, b in zip(tail, tail[1:]))


@dataclass
class FluxReport:
    Q_rate: float
    W_rate: float
    converged: bool
    drift: float


def steady_state_fluxes(traj: Trajectory, window: int = STEADY_WINDOW,
                        tol: float = STEADY_DRIFT) -> FluxReport:
    """Windowed per-collision averages of heat and work near the end of a run."""
    recs = traj.records
    if len(recs) < 2 * window:
        raise ConfigError("trajectory too short for two flux windows")
    q = np.array([r.Q for r in recs])
    w = np.array([r.W for r in recs])
    q1, w1 = q[-window:].mean(), w[-window:].mean()
    q0, w0 = q[-2 * window:-window].mean(), w[-2 * window:-window].mean()
    drift = max(abs(q1 - q0), abs(w1 - w0))
    return FluxReport(Q_rate=float(q1), W_rate=float(w1),
                      converged=bool(drift < tol), drift=float(drift))


@dataclass
class LandauerReport:
    """Per-collision averages at steady state, configured log base throughout."""
    beta_Q: float        # beta * heat into the unit, in entropy units
    dS_anc: float
    I_SE: float
    D_relent: float
    dS_S: float
    residual: float      # beta_Q + dS_S - I_SE - D_relent; ~0 for thermal units

    @property
    def landauer_gap(self) -> float:
        """beta_Q - dS_anc >= 0 is the Landauer inequality."""
        return self.beta_Q - self.dS_anc


def landauer_report(traj: Trajectory, window: int = STEADY_WINDOW,
                    tol: float = STEADY_DRIFT) -> LandauerReport:
    """Landauer accounting over the final ``window`` collisions.

    Requires a converged steady state; the exact identity
    beta Q = -dS_S + I_SE + S(rho'_E || rho_E) for thermal units reduces
    to beta Q = I_SE + D_relent once dS_S ~ 0.
    """
    drift = steady_state_drift(traj, window)
    if drift >= tol:
        raise NotConvergedError(
            f"steady state not reached: snapshot drift {drift:.3g} >= {tol:g}",
            drift=drift)
    base = traj.config.log_base
    recs = traj.records[-window:]
    betas = []
    for r in recs:
        beta = traj.config.streams[r.stream].beta
        if beta is None:
            raise ConfigError("Landauer accounting needs thermal ancilla streams")
        betas.append(beta)
    beta_q = float(np.mean([b * r.Q / math.log(base) for b, r in zip(betas, recs)]))
    ds_anc = float(np.mean([r.dS_anc for r in recs]))
    i_se = float(np.mean([r.I_SE for r in recs]))
    d_rel = float(np.mean([r.D_env_relent for r in recs]))
    ds_s = float(np.mean([r.dS_S for r in recs]))
    return LandauerReport(beta_Q=beta_q, dS_anc=ds_anc, I_SE=i_se, D_relent=d_rel,
                         dS_S=ds_s, residual=beta_q + ds_s - i_se - d_rel)
