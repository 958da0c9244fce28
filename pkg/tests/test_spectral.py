"""FFT-diagonalized implicit solves against dense-matrix oracles."""

import numpy as np
import pytest

from abcdfv.grid import Grid, GridFunction
from abcdfv.spectral import (
    CoupledSystemSpec,
    mode_symbols,
    solve_coupled,
    solve_helmholtz,
)


def circulant_second_difference(num_cells, dx):
    """Dense periodic D+D- matrix."""
    mat = np.zeros((num_cells, num_cells))
    for j in range(num_cells):
        mat[j, j] = -2.0
        mat[j, (j + 1) % num_cells] = 1.0
        mat[j, (j - 1) % num_cells] = 1.0
    return mat / dx**2


def circulant_centered_difference(num_cells, dx):
    """Dense periodic centered-difference matrix."""
    mat = np.zeros((num_cells, num_cells))
    for j in range(num_cells):
        mat[j, (j + 1) % num_cells] = 1.0
        mat[j, (j - 1) % num_cells] = -1.0
    return mat / (2 * dx)


def dense_coupled_matrix(spec, num_cells, dx):
    """Dense 2J x 2J assembly of the implicit block."""
    lap = circulant_second_difference(num_cells, dx)
    cen = circulant_centered_difference(num_cells, dx)
    eye = np.eye(num_cells)
    a11 = eye - spec.b * lap
    a22 = eye - spec.d * lap
    a12 = spec.theta * spec.dt * (cen + spec.a * lap @ cen)
    a21 = spec.theta * spec.dt * (cen + spec.c * lap @ cen)
    return np.block([[a11, a12], [a21, a22]])


class TestModeSymbols:
    def test_basic_values(self):
        mu, sigma = mode_symbols(4, 0.5)
        # k=0 mode is constant: both symbols vanish
        assert mu[0] == 0.0 and sigma[0] == 0.0
        # Nyquist mode k=J/2: mu = 4/dx^2, sigma = 0
        assert mu[2] == pytest.approx(16.0)
        assert sigma[2] == pytest.approx(0.0, abs=1e-12)

    def test_symbols_match_operator_on_modes(self):
        grid = Grid(2.0, 16)
        mu, sigma = mode_symbols(16, grid.dx)
        lap = circulant_second_difference(16, grid.dx)
        cen = circulant_centered_difference(16, grid.dx)
        for k in range(16):
            mode = np.exp(2j * np.pi * k * np.arange(16) / 16)
            assert np.allclose(lap @ mode, -mu[k] * mode, atol=1e-8)
            assert np.allclose(cen @ mode, 1j * sigma[k] * mode, atol=1e-8)


class TestHelmholtz:
    def test_kappa_zero_is_identity(self):
        grid = Grid(1.0, 8)
        rhs = GridFunction(grid, np.arange(8.0))
        out = solve_helmholtz(0.0, rhs)
        assert np.allclose(out.values, rhs.values, atol=1e-12)

    def test_negative_kappa_rejected(self):
        rhs = GridFunction(Grid(1.0, 8), np.ones(8))
        with pytest.raises(ValueError):
            solve_helmholtz(-0.1, rhs)

    def test_matches_dense_solve(self):
        rng = np.random.default_rng(3)
        for num_cells in (8, 16, 31, 64):
            grid = Grid(float(rng.uniform(1, 10)), num_cells)
            kappa = float(rng.uniform(0, 2))
            rhs_vals = rng.standard_normal(num_cells)
            mat = np.eye(num_cells) - kappa * circulant_second_difference(
                num_cells, grid.dx
            )
            expected = np.linalg.solve(mat, rhs_vals)
            got = solve_helmholtz(kappa, GridFunction(grid, rhs_vals)).values
            assert np.allclose(got, expected, rtol=1e-10, atol=1e-10)


class TestCoupled:
    def test_spec_validation(self):
        with pytest.raises(ValueError):
            CoupledSystemSpec(b=-1.0, d=0.5, a=0.0, c=0.0, theta=1.0, dt=0.1)
        with pytest.raises(ValueError):
            CoupledSystemSpec(b=0.5, d=0.5, a=0.1, c=0.0, theta=1.0, dt=0.1)
        with pytest.raises(ValueError):
            CoupledSystemSpec(b=0.5, d=0.5, a=0.0, c=0.0, theta=1.5, dt=0.1)
        with pytest.raises(ValueError):
            CoupledSystemSpec(b=0.5, d=0.5, a=0.0, c=0.0, theta=1.0, dt=0.0)

    def test_mismatched_grids_rejected(self):
        spec = CoupledSystemSpec(b=0.5, d=0.5, a=0.0, c=0.0, theta=1.0, dt=0.1)
        e = GridFunction(Grid(1.0, 8), np.ones(8))
        u = GridFunction(Grid(1.0, 16), np.ones(16))
        with pytest.raises(ValueError):
            solve_coupled(spec, e, u)

    def test_matches_dense_solve_random_systems(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            num_cells = int(rng.integers(4, 65))
            grid = Grid(float(rng.uniform(1, 20)), num_cells)
            spec = CoupledSystemSpec(
                b=float(rng.uniform(0, 1)),
                d=float(rng.uniform(0, 1)),
                a=-float(rng.uniform(0, 1)),
                c=-float(rng.uniform(0, 1)),
                theta=float(rng.choice([0.5, 1.0])),
                dt=float(rng.uniform(1e-4, 0.5)),
            )
            re = rng.standard_normal(num_cells)
            ru = rng.standard_normal(num_cells)
            mat = dense_coupled_matrix(spec, num_cells, grid.dx)
            expected = np.linalg.solve(mat, np.concatenate([re, ru]))
            eta, u = solve_coupled(
                spec, GridFunction(grid, re), GridFunction(grid, ru)
            )
            got = np.concatenate([eta.values, u.values])
            residual = np.linalg.norm(got - expected) / max(
                np.linalg.norm(expected), 1e-300
            )
            assert residual <= 1e-10

    def test_solution_solves_operator_equation(self):
        # apply the operator form of the block to the solution and compare
        rng = np.random.default_rng(5)
        grid = Grid(7.0, 48)
        spec = CoupledSystemSpec(b=0.3, d=0.7, a=-0.2, c=-0.4, theta=0.5, dt=0.05)
        re = rng.standard_normal(48)
        ru = rng.standard_normal(48)
        eta, u = solve_coupled(spec, GridFunction(grid, re), GridFunction(grid, ru))
        mat = dense_coupled_matrix(spec, 48, grid.dx)
        back = mat @ np.concatenate([eta.values, u.values])
        assert np.allclose(back, np.concatenate([re, ru]), atol=1e-9)
