"""Grid containers and the discrete difference/inner-product calculus."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from abcdfv.grid import (
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
    zeros,
)


def gf(grid, values):
    return GridFunction(grid, np.asarray(values, dtype=float))


@st.composite
def grid_functions(draw, min_cells=4, max_cells=64):
    num_cells = draw(st.integers(min_cells, max_cells))
    length = draw(st.floats(0.5, 50.0))
    grid = Grid(length, num_cells)
    vals = draw(
        arrays(
            float,
            num_cells,
            elements=st.floats(-100.0, 100.0, allow_nan=False),
        )
    )
    return GridFunction(grid, vals)


class TestGrid:
    def test_dx_and_centers(self):
        grid = Grid(2.0, 8)
        assert grid.dx == pytest.approx(0.25)
        centers = grid.cell_centers()
        assert centers[0] == pytest.approx(0.125)
        assert centers[-1] == pytest.approx(2.0 - 0.125)
        shifted = grid.cell_centers(origin=-1.0)
        assert shifted[0] == pytest.approx(-1.0 + 0.125)

    def test_rejects_tiny_or_empty(self):
        with pytest.raises(ValueError):
            Grid(1.0, 3)
        with pytest.raises(ValueError):
            Grid(0.0, 8)
        with pytest.raises(ValueError):
            Grid(-1.0, 8)


class TestGridFunction:
    def test_values_are_copied_and_frozen(self):
        grid = Grid(1.0, 4)
        src = np.ones(4)
        v = GridFunction(grid, src)
        src[0] = 99.0
        assert v.values[0] == 1.0
        with pytest.raises(ValueError):
            v.values[0] = 2.0

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            GridFunction(Grid(1.0, 4), np.zeros(5))

    def test_is_finite(self):
        grid = Grid(1.0, 4)
        assert gf(grid, [1, 2, 3, 4]).is_finite()
        assert not gf(grid, [1, np.inf, 3, 4]).is_finite()
        assert not gf(grid, [1, np.nan, 3, 4]).is_finite()

    def test_mismatched_grids_rejected(self):
        v = zeros(Grid(1.0, 4))
        w = zeros(Grid(1.0, 8))
        with pytest.raises(ValueError):
            inner(v, w)
        with pytest.raises(ValueError):
            pointwise_mul(v, w)


class TestOperators:
    """Hand-checked values on a 4-cell grid with dx = 1/4."""

    grid = Grid(1.0, 4)
    v = GridFunction(grid, np.array([0.0, 1.0, 0.0, -1.0]))

    def test_shift(self):
        assert shift(self.v, +1).values.tolist() == [1.0, 0.0, -1.0, 0.0]
        assert shift(self.v, -1).values.tolist() == [-1.0, 0.0, 1.0, 0.0]
        with pytest.raises(ValueError):
            shift(self.v, 2)

    def test_d_plus(self):
        assert d_plus(self.v).values.tolist() == [4.0, -4.0, -4.0, 4.0]

    def test_d_minus(self):
        assert d_minus(self.v).values.tolist() == [4.0, 4.0, -4.0, -4.0]

    def test_d_center(self):
        assert d_center(self.v).values.tolist() == [4.0, 0.0, -4.0, 0.0]

    def test_laplacian(self):
        assert laplacian(self.v).values.tolist() == [0.0, -32.0, 0.0, 32.0]

    def test_constants_annihilated(self):
        c = gf(self.grid, [3.0, 3.0, 3.0, 3.0])
        for op in (d_plus, d_minus, d_center, laplacian):
            assert np.all(op(c).values == 0.0)

    def test_inner_and_norms(self):
        w = gf(self.grid, [1.0, 2.0, 3.0, 4.0])
        assert inner(self.v, w) == pytest.approx(0.25 * (2.0 - 4.0))
        assert l2_norm(self.v) == pytest.approx((0.25 * 2.0) ** 0.5)
        assert linf_norm(self.v) == 1.0

    def test_pointwise_mul(self):
        w = gf(self.grid, [2.0, 3.0, 4.0, 5.0])
        assert pointwise_mul(self.v, w).values.tolist() == [0.0, 3.0, 0.0, -5.0]


class TestOperatorProperties:
    @given(grid_functions())
    @settings(max_examples=60, deadline=None)
    def test_composition_d_plus_d_minus(self, v):
        lhs = laplacian(v).values
        rhs = d_plus(d_minus(v)).values
        scale = max(float(np.max(np.abs(lhs))), 1.0)
        assert np.allclose(lhs, rhs, atol=1e-9 * scale)

    @given(grid_functions())
    @settings(max_examples=60, deadline=None)
    def test_centered_is_mean_of_one_sided(self, v):
        lhs = d_center(v).values
        rhs = 0.5 * (d_plus(v).values + d_minus(v).values)
        scale = max(float(np.max(np.abs(lhs))), 1.0)
        assert np.allclose(lhs, rhs, atol=1e-9 * scale)

    @given(grid_functions())
    @settings(max_examples=60, deadline=None)
    def test_shift_roundtrip(self, v):
        assert np.array_equal(shift(shift(v, +1), -1).values, v.values)

    @given(grid_functions())
    @settings(max_examples=60, deadline=None)
    def test_operators_commute_with_shift(self, v):
        for op in (d_plus, d_minus, d_center, laplacian):
            lhs = op(shift(v, +1)).values
            rhs = shift(op(v), +1).values
            scale = max(float(np.max(np.abs(lhs))), 1.0)
            assert np.allclose(lhs, rhs, atol=1e-9 * scale)

    @given(grid_functions(), st.floats(-10, 10), st.floats(-10, 10))
    @settings(max_examples=60, deadline=None)
    def test_linearity(self, v, s, t):
        rng = np.random.default_rng(0)
        w = v.with_values(rng.standard_normal(v.grid.num_cells))
        for op in (d_plus, d_minus, d_center, laplacian):
            lhs = op(v.with_values(s * v.values + t * w.values)).values
            rhs = s * op(v).values + t * op(w).values
            scale = max(float(np.max(np.abs(rhs))), 1.0)
            assert np.allclose(lhs, rhs, atol=1e-10 * scale)

    @given(grid_functions())
    @settings(max_examples=60, deadline=None)
    def test_mean_preserved_by_differences(self, v):
        # periodic sums of any difference operator telescope to zero
        for op in (d_plus, d_minus, d_center, laplacian):
            total = float(np.sum(op(v).values))
            scale = max(float(np.max(np.abs(v.values))) / v.grid.dx**2, 1.0)
            assert abs(total) <= 1e-8 * scale * v.grid.num_cells

    def test_inner_is_deterministic(self):
        rng = np.random.default_rng(7)
        grid = Grid(3.0, 257)
        v = GridFunction(grid, rng.standard_normal(257))
        w = GridFunction(grid, rng.standard_normal(257))
        results = {inner(v, w) for _ in range(10)}
        assert len(results) == 1
