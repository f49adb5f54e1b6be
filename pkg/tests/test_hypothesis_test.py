import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plantedmst.hypothesis_test import decide, error_rates
from plantedmst.theory import ZETA3


class TestDecide:
    def test_accepts_null_above_threshold(self):
        out = decide(1.25, 0.05)
        assert out.verdict == 0
        assert out.threshold == pytest.approx(ZETA3 - 0.05)

    def test_rejects_below_threshold(self):
        assert decide(0.5, 0.05).verdict == 1

    def test_boundary_included_in_acceptance(self):
        eps = 0.05
        assert decide(ZETA3 - eps, eps).verdict == 0

    def test_epsilon_must_be_positive(self):
        with pytest.raises(ValueError):
            decide(1.0, 0.0)
        with pytest.raises(ValueError):
            decide(1.0, -0.1)

    @given(
        st.floats(0.0, 3.0, allow_nan=False),
        st.floats(0.0, 3.0, allow_nan=False),
        st.floats(0.01, 1.0, allow_nan=False),
    )
    @settings(max_examples=100, deadline=None)
    def test_monotone_in_w(self, w1, w2, eps):
        lo, hi = sorted((w1, w2))
        # raising the statistic can only flip the verdict from 1 to 0
        assert decide(lo, eps).verdict >= decide(hi, eps).verdict


class TestErrorRates:
    def test_small_run_separates_hypotheses(self):
        rates = error_rates(
            n=150, trials=8, model_kind="tree", mu=0.3, epsilon=0.1, seed=2
        )
        assert rates.warning is None
        assert rates.mean_w_h1 < rates.mean_w_h0
        assert 0.0 <= rates.type1 <= 1.0
        assert 0.0 <= rates.type2 <= 1.0
        assert rates.ci1[0] <= rates.type1 <= rates.ci1[1]
        assert rates.ci2[0] <= rates.type2 <= rates.ci2[1]

    def test_deterministic(self):
        kwargs = dict(
            n=80, trials=5, model_kind="path", mu=0.5, epsilon=0.1, seed=9
        )
        assert error_rates(**kwargs) == error_rates(**kwargs)

    def test_warning_when_guarantee_hypothesis_fails(self):
        rates = error_rates(
            n=80, trials=3, model_kind="tree", mu=0.3, epsilon=1.0, seed=3
        )
        assert rates.warning is not None
        assert "zeta(3)" in rates.warning

    def test_huge_epsilon_tradeoff(self):
        # threshold near 0.2: the null is never rejected, while a heavy
        # planted model (weight near 1.1) is never detected
        rates = error_rates(
            n=150, trials=8, model_kind="tree", mu=30.0, epsilon=1.0, seed=4
        )
        assert rates.type1 <= 0.15
        assert rates.type2 >= 0.85

    def test_epsilon_validation(self):
        with pytest.raises(ValueError):
            error_rates(n=50, trials=2, model_kind="tree", mu=0.3,
                        epsilon=0.0, seed=0)
