"""Time steppers: the theta-scheme for b,d > 0 and the implicit scheme
with Rusanov viscosity for bd = 0, plus a linear-only stepper and
time-step selection.

Nonlinear products are always evaluated explicitly; the implicit linear
pair is resolved through the spectral solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid, GridFunction, linf_norm
from .params import AbcdParams, Regime, sgn
from .spectral import CoupledSystemSpec, solve_coupled, solve_helmholtz


class BlowUpDetected(RuntimeError):
    """Raised when the solution leaves the finite/bounded admissible range."""

    def __init__(self, t: float, message: str = ""):
        self.t = t
        super().__init__(message or f"blow-up detected at t={t:.6g}")


class CFLViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class FixedDt:
    dt: float


@dataclass(frozen=True)
class AdaptiveCFL:
    """dt^n = safety * dx / ||u^n||_inf, capped at max_dt."""

    safety: float = 1.0
    max_dt: float = 1.0


@dataclass(frozen=True)
class RusanovConfig:
    mode: str = "off"  # "off" | "fixed" | "adaptive"
    tau1: float = 0.0
    tau2: float = 0.0
    alpha: float = 0.1

    def __post_init__(self):
        if self.mode not in ("off", "fixed", "adaptive"):
            raise ValueError(f"unknown Rusanov mode {self.mode!r}")
        if self.mode == "fixed" and (self.tau1 <= 0 or self.tau2 <= 0):
            raise ValueError("fixed Rusanov mode requires tau1, tau2 > 0")
        if self.mode == "adaptive" and self.alpha <= 0:
            raise ValueError("adaptive Rusanov mode requires alpha > 0")

    @classmethod
    def off(cls) -> "RusanovConfig":
        return cls(mode="off")

    @classmethod
    def fixed(cls, tau1: float, tau2: float) -> "RusanovConfig":
        return cls(mode="fixed", tau1=tau1, tau2=tau2)

    @classmethod
    def adaptive(cls, alpha: float = 0.1) -> "RusanovConfig":
        return cls(mode="adaptive", alpha=alpha)

    def taus(self, u_inf: float) -> tuple[float, float]:
        """Rusanov coefficients for the current step."""
        if self.mode == "off":
            return 0.0, 0.0
        if self.mode == "fixed":
            return self.tau1, self.tau2
        return u_inf + self.alpha, u_inf + self.alpha


@dataclass(frozen=True)
class SchemeConfig:
    theta: float = 1.0
    dt_policy: FixedDt | AdaptiveCFL = AdaptiveCFL()
    rusanov: RusanovConfig = RusanovConfig()
    blowup_threshold: float = 1e3


@dataclass(frozen=True)
class SimState:
    t: float
    eta: GridFunction
    u: GridFunction
    step_index: int = 0

    def __post_init__(self):
        if self.eta.grid != self.u.grid:
            raise ValueError("eta and u live on different grids")

    @property
    def grid(self) -> Grid:
        return self.eta.grid


def _is_special_theta_case(params: AbcdParams) -> bool:
    """Sign patterns whose theta-scheme admits any theta in [0, 1]."""
    a, b, c, d = params.a, params.b, params.c, params.d
    return (a == 0 and b == 0 and c == 0 and d > 0) or (
        a == 0 and c == 0 and d == 0 and b > 0
    )


def _check_theta(params: AbcdParams, theta: float) -> None:
    if params.regime is Regime.BOTH_POSITIVE:
        if theta not in (0.5, 1.0):
            raise ValueError(
                f"theta must be 1/2 or 1 for the b,d>0 scheme, got {theta}"
            )
    elif not _is_special_theta_case(params):
        if theta != 1.0:
            raise ValueError(
                "the bd=0 scheme is implicit (theta=1) except for the "
                f"a=b=c=0,d>0 and a=c=d=0,b>0 cases; got theta={theta}"
            )
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")


def _generic_step(
    state: SimState,
    params: AbcdParams,
    theta: float,
    dt: float,
    tau1: float,
    tau2: float,
    nonlinear: bool,
    blowup_threshold: float,
) -> SimState:
    """One step of the common scheme skeleton.

    Explicit terms go to the right-hand side; the implicit pair

        (I - b D+D-) eta' + theta dt (I + a D+D-) D u' = rhs_eta
        (I - d D+D-) u'  + theta dt (I + c D+D-) D eta' = rhs_u

    is solved per Fourier mode.
    """
    grid = state.grid
    dx = grid.dx
    eta = state.eta.values
    u = state.u.values
    a, b, c, d = params.a, params.b, params.c, params.d

    def roll(v, k):
        return np.roll(v, -k)

    def dcenter(v):
        return (roll(v, 1) - roll(v, -1)) / (2 * dx)

    def lap(v):
        return (roll(v, 1) - 2 * v + roll(v, -1)) / dx**2

    def dispersive_advect(coef, v):
        # (I + coef D+D-) D v
        dv = dcenter(v)
        return dv + coef * lap(dv)

    helm_eta = eta - b * lap(eta)
    helm_u = u - d * lap(u)
    rhs_eta = helm_eta - (1 - theta) * dt * dispersive_advect(a, u)
    rhs_u = helm_u - (1 - theta) * dt * dispersive_advect(c, eta)
    if nonlinear:
        rhs_eta = rhs_eta - dt * dcenter(eta * u)
        rhs_u = rhs_u - 0.5 * dt * dcenter(u * u)
    if tau1 != 0.0 and sgn(b) == 0:
        rhs_eta = rhs_eta + 0.5 * dt * tau1 * dx * lap(eta)
    if tau2 != 0.0 and sgn(d) == 0:
        rhs_u = rhs_u + 0.5 * dt * tau2 * dx * lap(u)

    if theta > 0:
        spec = CoupledSystemSpec(b=b, d=d, a=a, c=c, theta=theta, dt=dt)
        eta_new, u_new = solve_coupled(
            spec, state.eta.with_values(rhs_eta), state.u.with_values(rhs_u)
        )
        eta_new_vals, u_new_vals = eta_new.values, u_new.values
    else:
        eta_new_vals = solve_helmholtz(b, state.eta.with_values(rhs_eta)).values
        u_new_vals = solve_helmholtz(d, state.u.with_values(rhs_u)).values

    t_new = state.t + dt
    if (
        not np.all(np.isfinite(eta_new_vals))
        or not np.all(np.isfinite(u_new_vals))
        or np.max(np.abs(eta_new_vals)) > blowup_threshold
    ):
        raise BlowUpDetected(t_new)

    return SimState(
        t=t_new,
        eta=state.eta.with_values(eta_new_vals),
        u=state.u.with_values(u_new_vals),
        step_index=state.step_index + 1,
    )


def step_theta(
    state: SimState, params: AbcdParams, cfg: SchemeConfig, dt: float
) -> SimState:
    """One theta-scheme step; requires b > 0 and d > 0, no viscosity, no CFL."""
    params.require_admissible()
    if params.regime is not Regime.BOTH_POSITIVE:
        raise ValueError("step_theta requires b > 0 and d > 0")
    _check_theta(params, cfg.theta)
    return _generic_step(
        state, params, cfg.theta, dt, 0.0, 0.0, True, cfg.blowup_threshold
    )


def step_bd_zero(
    state: SimState, params: AbcdParams, cfg: SchemeConfig, dt: float
) -> SimState:
    """One step of the implicit scheme with Rusanov viscosity; requires bd = 0."""
    params.require_admissible()
    if params.regime is not Regime.MIXED_OR_ZERO:
        raise ValueError("step_bd_zero requires bd = 0 (admissible)")
    _check_theta(params, cfg.theta)
    tau1, tau2 = cfg.rusanov.taus(linf_norm(state.u))
    cfl = max((1 - sgn(params.b)) * tau1, (1 - sgn(params.d)) * tau2)
    if cfl * dt > state.grid.dx * (1 + 1e-12):
        raise CFLViolation(
            f"CFL condition violated: max viscosity {cfl:.6g} * dt {dt:.6g} "
            f"> dx {state.grid.dx:.6g}"
        )
    return _generic_step(
        state, params, cfg.theta, dt, tau1, tau2, True, cfg.blowup_threshold
    )


def step(state: SimState, params: AbcdParams, cfg: SchemeConfig, dt: float) -> SimState:
    """Dispatch to the regime-appropriate stepper."""
    params.require_admissible()
    if params.regime is Regime.BOTH_POSITIVE:
        return step_theta(state, params, cfg, dt)
    return step_bd_zero(state, params, cfg, dt)


def step_linear(
    state: SimState, params: AbcdParams, theta: float, dt: float
) -> SimState:
    """One step with the nonlinear products dropped and no viscosity."""
    params.require_admissible()
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    return _generic_step(state, params, theta, dt, 0.0, 0.0, False, 1e300)


def compute_dt(
    state: SimState,
    cfg: SchemeConfig,
    grid: Grid,
    params: AbcdParams | None = None,
    t_final: float | None = None,
) -> float:
    """Time step for the coming step, honoring the CFL cap and final-time clip."""
    policy = cfg.dt_policy
    if isinstance(policy, FixedDt):
        dt = policy.dt
    else:
        u_inf = linf_norm(state.u)
        dt = policy.max_dt if u_inf == 0 else policy.safety * grid.dx / u_inf
        if params is not None and params.regime is Regime.MIXED_OR_ZERO:
            tau1, tau2 = cfg.rusanov.taus(u_inf)
            cfl = max(
                (1 - sgn(params.b)) * tau1, (1 - sgn(params.d)) * tau2
            )
            if cfl > 0:
                dt = min(dt, grid.dx / cfl)
    if t_final is not None:
        remaining = t_final - state.t
        if remaining <= 0:
            raise ValueError("state already at or beyond t_final")
        dt = min(dt, remaining)
    return dt
