"""Regime-keyed discrete energy functionals.

The general functional

    E(e,f) = ||e||^2 + (b-c)||D+ e||^2 + b(-c)||D+D- e||^2
           + ||f||^2 + (d-a)||D+ f||^2 + d(-a)||D+D- f||^2

is the default error metric; case-specific functionals keyed on the sign
pattern of (a, b, c, d) are available for regression against the
per-regime estimates.
"""

from __future__ import annotations

import enum

from .grid import GridFunction, d_plus, l2_norm, laplacian
from .params import AbcdParams, Regime
from .schemes import SimState


class EnergyKind(enum.Enum):
    GENERAL = "General"
    IMPLICIT_BD_POS = "ImplicitBdPos"          # b,d > 0 and a,c < 0
    A_NEG_ONLY = "A_neg_only"                  # a < 0, b = c = d = 0
    CLASSICAL_BOUSSINESQ = "ClassicalBoussinesq"  # a = b = c = 0, d > 0
    A_NEG_D_POS = "A_neg_D_pos"                # a < 0, b = c = 0, d > 0
    A_NEG_C_NEG_D_POS = "A_neg_C_neg_D_pos"    # a < 0, b = 0, c < 0, d > 0
    B_POS_ONLY = "B_pos_only"                  # a = c = d = 0, b > 0
    A_NEG_B_POS = "A_neg_B_pos"                # a < 0, b > 0, c = d = 0
    A_NEG_B_POS_C_NEG = "A_neg_B_pos_C_neg"    # a < 0, b > 0, c < 0, d = 0


def select(params: AbcdParams) -> EnergyKind:
    """Map an admissible sign pattern to its case-specific energy kind.

    Both-positive parameters map to the general functional (the
    statement-level metric); the implicit-case functional remains
    available explicitly when a, c < 0.
    """
    params.require_admissible()
    a, b, c, d = params.a, params.b, params.c, params.d
    if params.regime is Regime.BOTH_POSITIVE:
        return EnergyKind.GENERAL
    if b == 0 and d == 0:
        # only a<0, b=c=d=0 survives the exclusions
        return EnergyKind.A_NEG_ONLY
    if b == 0 and d > 0:
        if a == 0 and c == 0:
            return EnergyKind.CLASSICAL_BOUSSINESQ
        if a < 0 and c == 0:
            return EnergyKind.A_NEG_D_POS
        return EnergyKind.A_NEG_C_NEG_D_POS
    # d == 0 and b > 0
    if a == 0 and c == 0:
        return EnergyKind.B_POS_ONLY
    if a < 0 and c == 0:
        return EnergyKind.A_NEG_B_POS
    return EnergyKind.A_NEG_B_POS_C_NEG


def _check_compat(kind: EnergyKind, params: AbcdParams) -> None:
    a, b, c, d = params.a, params.b, params.c, params.d
    ok = {
        EnergyKind.GENERAL: True,
        EnergyKind.IMPLICIT_BD_POS: b > 0 and d > 0 and a < 0 and c < 0,
        EnergyKind.A_NEG_ONLY: a < 0 and b == 0 and c == 0 and d == 0,
        EnergyKind.CLASSICAL_BOUSSINESQ: a == 0 and b == 0 and c == 0 and d > 0,
        EnergyKind.A_NEG_D_POS: a < 0 and b == 0 and c == 0 and d > 0,
        EnergyKind.A_NEG_C_NEG_D_POS: a < 0 and b == 0 and c < 0 and d > 0,
        EnergyKind.B_POS_ONLY: a == 0 and c == 0 and d == 0 and b > 0,
        EnergyKind.A_NEG_B_POS: a < 0 and b > 0 and c == 0 and d == 0,
        EnergyKind.A_NEG_B_POS_C_NEG: a < 0 and b > 0 and c < 0 and d == 0,
    }[kind]
    if not ok:
        raise ValueError(
            f"energy kind {kind.value} is incompatible with "
            f"(a,b,c,d)=({a},{b},{c},{d})"
        )


def _sq(v: GridFunction) -> float:
    return l2_norm(v) ** 2


def _helmholtz_sq(kappa: float, v: GridFunction) -> float:
    """|| (I - kappa D+D-) v ||^2."""
    w = v.with_values(v.values - kappa * laplacian(v).values)
    return _sq(w)


def energy(
    kind: EnergyKind, params: AbcdParams, e: GridFunction, f: GridFunction
) -> float:
    """Evaluate the selected discrete energy functional on the pair (e, f)."""
    _check_compat(kind, params)
    if e.grid != f.grid:
        raise ValueError("e and f live on different grids")
    a, b, c, d = params.a, params.b, params.c, params.d

    if kind is EnergyKind.GENERAL:
        return (
            _sq(e)
            + (b - c) * _sq(d_plus(e))
            + b * (-c) * _sq(laplacian(e))
            + _sq(f)
            + (d - a) * _sq(d_plus(f))
            + d * (-a) * _sq(laplacian(f))
        )
    if kind is EnergyKind.IMPLICIT_BD_POS:
        return (-c) * d * _helmholtz_sq(b, e) + (-a) * b * _helmholtz_sq(d, f)
    if kind is EnergyKind.A_NEG_ONLY:
        return _sq(e) + _sq(f) + (-a) * _sq(d_plus(f))
    if kind is EnergyKind.CLASSICAL_BOUSSINESQ:
        return _sq(e) + _sq(f) + d * _sq(d_plus(f))
    if kind is EnergyKind.A_NEG_D_POS:
        return d * _sq(e) + (-a) * _helmholtz_sq(d, f)
    if kind is EnergyKind.A_NEG_C_NEG_D_POS:
        return (-a) * _sq(e) + (-c) * d * _sq(d_plus(e)) + (-a) * _helmholtz_sq(d, f)
    if kind is EnergyKind.B_POS_ONLY:
        return _sq(e) + b * _sq(d_plus(e)) + _sq(f)
    if kind is EnergyKind.A_NEG_B_POS:
        return _sq(e) + b * _sq(d_plus(e)) + _sq(f) + (-a) * _sq(d_plus(f))
    # A_NEG_B_POS_C_NEG
    return (-c) * _helmholtz_sq(b, e) + _sq(f) + (-a) * b * _sq(d_plus(f))


def energy_error(
    kind: EnergyKind,
    params: AbcdParams,
    numeric: SimState,
    reference: SimState,
) -> float:
    """sqrt(E(e, f)) for e = eta_num - eta_ref, f = u_num - u_ref."""
    if numeric.grid != reference.grid:
        raise ValueError("states live on different grids")
    if abs(numeric.t - reference.t) > 1e-9 * max(1.0, abs(numeric.t)):
        raise ValueError(
            f"states are at different times: {numeric.t} vs {reference.t}"
        )
    e = numeric.eta.with_values(numeric.eta.values - reference.eta.values)
    f = numeric.u.with_values(numeric.u.values - reference.u.values)
    return energy(kind, params, e, f) ** 0.5
