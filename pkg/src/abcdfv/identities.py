"""Summation-by-parts identities and inequalities of the operator calculus.

Each check returns the relative defect between the two sides of the
identity (or the signed slack for the inequalities), evaluated on given
fields.  Shared between the verification CLI and the test suite.
"""

from __future__ import annotations

import numpy as np

from .grid import (
    Grid,
    GridFunction,
    d_center,
    d_minus,
    d_plus,
    inner,
    l2_norm,
    laplacian,
    linf_norm,
    pointwise_mul,
    shift,
)


def _rel(lhs: float, rhs: float, scale: float) -> float:
    return abs(lhs - rhs) / max(scale, 1e-300)


def _rel_field(lhs: GridFunction, rhs: GridFunction, *terms: np.ndarray) -> float:
    """Worst pointwise defect, normalized per point by the magnitudes of
    the terms entering the identity (so cancellation between large terms
    is judged against those terms, not the tiny result)."""
    scale = np.abs(lhs.values) + np.abs(rhs.values)
    for term in terms:
        scale = scale + np.abs(term)
    scale = np.maximum(scale, max(float(np.max(scale)) * 1e-30, 1e-300))
    return float(np.max(np.abs(lhs.values - rhs.values) / scale))


def identity_defects(v: GridFunction, w: GridFunction, dt: float) -> dict[str, float]:
    """Relative defects of all equality identities on the pair (v, w).

    All values should be at roundoff level (<= 1e-12) for any fields.
    """
    dx = v.grid.dx
    sp_v, sm_v = shift(v, +1), shift(v, -1)
    sp_w, sm_w = shift(w, +1), shift(w, -1)
    dv, dw = d_center(v), d_center(w)
    dpv, dpw = d_plus(v), d_plus(w)
    dmv = d_minus(v)
    vw = pointwise_mul(v, w)
    v2 = pointwise_mul(v, v)
    d_vw = d_center(vw)
    d_v2 = d_center(v2)
    lap_v = laplacian(v)

    defects: dict[str, float] = {}

    # product rules
    rhs1 = v.with_values(
        v.values * dw.values + 0.5 * (sp_w.values * dpv.values + sm_w.values * dmv.values)
    )
    defects["product_rule1"] = _rel_field(
        d_vw,
        rhs1,
        v.values * dw.values,
        0.5 * sp_w.values * dpv.values,
        0.5 * sm_w.values * dmv.values,
    )
    rhs2 = v.with_values(sp_v.values * dw.values + dv.values * sm_w.values)
    defects["product_rule2"] = _rel_field(
        d_vw, rhs2, sp_v.values * dw.values, dv.values * sm_w.values
    )
    rhs3 = v.with_values(sp_v.values * dpw.values + w.values * dpv.values)
    defects["product_rule3"] = _rel_field(
        d_plus(vw), rhs3, sp_v.values * dpw.values, w.values * dpv.values
    )

    # summation by parts
    scale = (l2_norm(dpv) + l2_norm(v)) * (l2_norm(dpw) + l2_norm(w)) + 1e-300
    defects["integr_by_part_1"] = _rel(inner(dpv, w), -inner(v, d_minus(w)), scale)
    defects["integr_by_part_2"] = _rel(inner(dv, w), -inner(v, dw), scale)
    defects["centered_skew"] = _rel(inner(dv, v), 0.0, max(l2_norm(v) ** 2, 1e-300))
    defects["forward_self"] = _rel(
        inner(v, dpv), -0.5 * dx * l2_norm(dpv) ** 2, max(l2_norm(v) * l2_norm(dpv), 1e-300)
    )

    # elaborate identities; scales include norm products so that inputs on
    # which both sides cancel to roundoff do not produce spurious defects
    length = v.grid.length

    def bound(x: GridFunction, y: GridFunction) -> float:
        """Holder bound on |inner(x, y)|: the natural magnitude of an
        inner-product term even when the sum itself cancels.  Uses max
        norms so it cannot underflow for tiny fields."""
        return length * linf_norm(x) * linf_norm(y)

    vspv = pointwise_mul(v, sp_v)
    sc = max(bound(v, d_vw), 0.5 * bound(dpw, vspv), 1e-300)
    defects["IPP1"] = _rel(inner(v, d_vw), 0.5 * inner(dpw, vspv), sc)

    lhs = inner(lap_v, d_vw)
    rhs = (-1.0 / dx**2) * inner(dpw, vspv) + (1.0 / dx**2) * inner(
        dw, pointwise_mul(sm_v, sp_v)
    )
    sc = max(
        bound(lap_v, d_vw),
        (1.0 / dx**2) * bound(dpw, vspv),
        (1.0 / dx**2) * bound(dw, pointwise_mul(sm_v, sp_v)),
        1e-300,
    )
    defects["IPP2"] = _rel(lhs, rhs, sc)

    dpv2 = pointwise_mul(dpv, dpv)
    dv2 = pointwise_mul(dv, dv)
    lhs = inner(lap_v, d_v2)
    rhs = (1.0 / 3.0) * inner(dpv, dpv2) - (4.0 / 3.0) * inner(dv, dv2)
    sc = max(
        bound(lap_v, d_v2),
        (1.0 / 3.0) * bound(dpv, dpv2),
        (4.0 / 3.0) * bound(dv, dv2),
        1e-300,
    )
    defects["IPP2BiS"] = _rel(lhs, rhs, sc)

    lhs = inner(v, d_v2)
    rhs = -(dx**2 / 6.0) * inner(dpv, dpv2)
    sc = max(bound(v, d_v2), (dx**2 / 6.0) * bound(dpv, dpv2), 1e-300)
    defects["IPP3"] = _rel(lhs, rhs, sc)

    # D(v^2) = Dv * (S+ v + S- v) pointwise, hence the factor 4 against
    # the half-sum average
    mean_shift = v.with_values(0.5 * (sp_v.values + sm_v.values))
    lhs = l2_norm(d_v2) ** 2
    rhs = 4.0 * inner(pointwise_mul(dv, dv), pointwise_mul(mean_shift, mean_shift))
    defects["Norm_D_v_carre"] = _rel(lhs, rhs, max(abs(lhs), abs(rhs), 1e-300))

    lhs = l2_norm(lap_v) ** 2
    rhs = (4.0 / dx**2) * (l2_norm(dpv) ** 2 - l2_norm(dv) ** 2)
    defects["IPP4"] = _rel(lhs, rhs, max(abs(lhs), abs(rhs), 1e-300))

    return defects


def inequality_slacks(v: GridFunction, w: GridFunction, dt: float) -> dict[str, float]:
    """Signed slack (rhs - lhs) of the inequality bounds; must be >= -roundoff."""
    dx = v.grid.dx
    dv, dw = d_center(v), d_center(w)
    dpw = d_plus(w)
    vw = pointwise_mul(v, w)
    v2 = pointwise_mul(v, v)

    slacks: dict[str, float] = {}

    lhs = l2_norm(d_center(vw)) ** 2
    rhs = (linf_norm(w) ** 2 + dt * linf_norm(dpw) ** 2) * l2_norm(dv) ** 2 + (
        linf_norm(w) ** 2 / dt + 0.75 * linf_norm(dpw) ** 2
    ) * l2_norm(v) ** 2
    slacks["IPP5"] = rhs - lhs

    lhs = inner(d_center(vw), d_center(v2))
    dv3 = pointwise_mul(pointwise_mul(dv, dv), dv)
    v3 = pointwise_mul(v2, v)
    rhs = (
        2 * linf_norm(v) * linf_norm(w) * l2_norm(dv) ** 2
        - (8.0 * dx**2 / 3.0) * inner(dw, dv3)
        - (2.0 / 3.0) * inner(d_center(dw), v3)
    )
    slacks["EQ_4"] = rhs - lhs

    return slacks


IDENTITY_NAMES = [
    "product_rule1",
    "product_rule2",
    "product_rule3",
    "integr_by_part_1",
    "integr_by_part_2",
    "centered_skew",
    "forward_self",
    "IPP1",
    "IPP2",
    "IPP2BiS",
    "IPP3",
    "Norm_D_v_carre",
    "IPP4",
]

INEQUALITY_NAMES = ["IPP5", "EQ_4"]


def run_identity_suite(
    sizes=(8, 64, 1024),
    num_fields: int = 200,
    seed: int = 0,
    tol: float = 1e-12,
):
    """Run all identity/inequality checks on random fields.

    Returns (worst, all_pass) where worst maps each check name to its
    worst relative defect (identities) or most negative slack (inequalities).
    """
    rng = np.random.default_rng(seed)
    worst = {name: 0.0 for name in IDENTITY_NAMES}
    worst.update({name: np.inf for name in INEQUALITY_NAMES})
    per_size = max(1, num_fields // len(sizes))
    for J in sizes:
        grid = Grid(length=float(rng.uniform(1.0, 10.0)), num_cells=J)
        for _ in range(per_size):
            v = GridFunction(grid, rng.standard_normal(J))
            w = GridFunction(grid, rng.standard_normal(J))
            dt = float(rng.uniform(1e-4, 1.0))
            for name, defect in identity_defects(v, w, dt).items():
                worst[name] = max(worst[name], defect)
            for name, slack in inequality_slacks(v, w, dt).items():
                worst[name] = min(worst[name], slack)
    ok = all(worst[n] <= tol for n in IDENTITY_NAMES) and all(
        worst[n] >= -1e-10 for n in INEQUALITY_NAMES
    )
    return worst, ok
