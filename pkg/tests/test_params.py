"""Sign validation and regime classification of the dispersion tuple."""

import pytest

from abcdfv.params import AbcdParams, Regime, sgn


class TestSgn:
    def test_values(self):
        assert sgn(2.5) == 1
        assert sgn(-0.1) == -1
        assert sgn(0.0) == 0


class TestValidation:
    def test_positive_a_or_c_rejected(self):
        with pytest.raises(ValueError):
            AbcdParams(0.1, 0.5, 0.0, 0.5)
        with pytest.raises(ValueError):
            AbcdParams(0.0, 0.5, 0.1, 0.5)

    def test_negative_b_or_d_rejected(self):
        with pytest.raises(ValueError):
            AbcdParams(0.0, -0.5, 0.0, 0.5)
        with pytest.raises(ValueError):
            AbcdParams(0.0, 0.5, 0.0, -0.5)


class TestRegime:
    def test_both_positive(self):
        p = AbcdParams(0.0, 1 / 6, 0.0, 1 / 6)
        assert p.regime is Regime.BOTH_POSITIVE
        assert p.excluded_case is None
        assert p.require_admissible() is p

    def test_mixed_or_zero(self):
        assert AbcdParams(0.0, 0.0, 0.0, 1 / 6).regime is Regime.MIXED_OR_ZERO
        assert AbcdParams(-1 / 6, 0.0, 0.0, 1 / 2).regime is Regime.MIXED_OR_ZERO
        assert AbcdParams(0.0, 3 / 5, 0.0, 0.0).regime is Regime.MIXED_OR_ZERO
        assert AbcdParams(-0.5, 0.0, 0.0, 0.0).regime is Regime.MIXED_OR_ZERO

    @pytest.mark.parametrize(
        "abcd",
        [
            (0.0, 0.0, -0.3, 0.5),   # a=b=0, d>0, c<0
            (0.0, 0.0, 0.0, 0.0),    # all zero
            (0.0, 0.5, -0.3, 0.0),   # a=d=0, b>0, c<0
            (0.0, 0.0, -0.3, 0.0),   # a=b=d=0, c<0
            (-0.2, 0.0, -0.3, 0.0),  # b=d=0, c<0, a<0
        ],
    )
    def test_excluded_patterns(self, abcd):
        p = AbcdParams(*abcd)
        assert p.regime is Regime.EXCLUDED
        assert p.excluded_case is not None
        with pytest.raises(ValueError) as err:
            p.require_admissible()
        # the message enumerates every excluded pattern
        assert str(err.value).count(";") >= 4
