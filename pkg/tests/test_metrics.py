import math
import random

import pytest

from dlom.metrics import (
    DivisionDomainError,
    InsufficientDataError,
    InvalidInputError,
    MeasurementSeries,
    mard,
    rmse,
    stability,
    throughput,
)


class TestRmse:
    def test_identical_series_zero(self):
        assert rmse([1, 2, 3], [1, 2, 3]) == 0.0

    def test_hand_computed(self):
        assert rmse([0, 0], [3, 4]) == pytest.approx(math.sqrt(12.5), abs=1e-12)
        assert rmse([0, 0], [3, 4]) == pytest.approx(3.53553, abs=1e-5)

    def test_single_element(self):
        assert rmse([5], [2]) == 3.0

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            rmse([1, 2], [1])

    def test_empty(self):
        with pytest.raises(InvalidInputError):
            rmse([], [])

    def test_symmetry_and_nonnegativity(self):
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randint(1, 20)
            xs = [rng.uniform(-50, 50) for _ in range(n)]
            ys = [rng.uniform(-50, 50) for _ in range(n)]
            forward = rmse(xs, ys)
            assert forward >= 0
            assert forward == pytest.approx(rmse(ys, xs), abs=1e-12)
            assert rmse(xs, xs) == 0.0


class TestMard:
    def test_identical_series_zero(self):
        assert mard([100, 100], [100, 100]) == 0.0

    def test_hand_computed_ten_percent(self):
        assert mard([110, 90], [100, 100]) == pytest.approx(10.0, abs=1e-12)

    def test_single_element(self):
        assert mard([50], [100]) == pytest.approx(50.0, abs=1e-12)

    def test_zero_reference_rejected(self):
        with pytest.raises(DivisionDomainError):
            mard([1, 2], [1, 0])

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            mard([1], [1, 2])

    def test_scale_invariance(self):
        rng = random.Random(13)
        for _ in range(200):
            n = rng.randint(1, 15)
            preds = [rng.uniform(-20, 20) for _ in range(n)]
            refs = [rng.choice([-1, 1]) * rng.uniform(0.5, 20) for _ in range(n)]
            k = rng.choice([-1, 1]) * rng.uniform(0.1, 100)
            base = mard(preds, refs)
            scaled = mard([k * p for p in preds], [k * r for r in refs])
            assert scaled == pytest.approx(base, abs=1e-9, rel=1e-9)


class TestStability:
    def test_constant_series_is_100(self):
        assert stability([0.9, 0.9, 0.9]) == 100.0

    def test_walkthrough_series(self):
        # mean 0.9, sample stdev 0.1 -> 100 * (1 - 1/9)
        assert stability([0.9, 0.8, 1.0]) == pytest.approx(88.89, abs=0.01)

    def test_high_dispersion_clamps_to_zero(self):
        assert stability([0.01, 5.0]) == 0.0

    def test_accepts_measurement_series(self):
        series = MeasurementSeries(values=(0.9, 0.8, 1.0), unit="accuracy")
        assert stability(series) == pytest.approx(88.89, abs=0.01)

    def test_too_short_rejected(self):
        with pytest.raises(InsufficientDataError):
            stability([0.9])

    def test_nonpositive_mean_rejected(self):
        with pytest.raises(DivisionDomainError):
            stability([-1.0, 1.0])

    def test_scale_invariance(self):
        rng = random.Random(17)
        for _ in range(200):
            n = rng.randint(2, 12)
            series = [rng.uniform(0.1, 10) for _ in range(n)]
            k = rng.uniform(0.01, 50)
            assert stability([k * v for v in series]) == pytest.approx(
                stability(series), abs=1e-9
            )


class TestThroughput:
    def test_definitional_division(self):
        assert throughput(500, 10) == 50.0

    def test_no_work(self):
        assert throughput(0, 5) == 0.0

    def test_unit_time(self):
        assert throughput(123, 1) == 123.0

    def test_nonpositive_elapsed_rejected(self):
        with pytest.raises(InvalidInputError):
            throughput(10, 0)
        with pytest.raises(InvalidInputError):
            throughput(10, -2)

    def test_negative_work_rejected(self):
        with pytest.raises(InvalidInputError):
            throughput(-1, 5)
