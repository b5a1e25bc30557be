"""Performance indicators computed from raw measurement series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import DlomError

__all__ = [
    "MeasurementSeries",
    "InvalidInputError",
    "DivisionDomainError",
    "InsufficientDataError",
    "rmse",
    "mard",
    "stability",
    "throughput",
]


class InvalidInputError(DlomError):
    pass


class DivisionDomainError(DlomError):
    pass


class InsufficientDataError(DlomError):
    pass


@dataclass(frozen=True)
class MeasurementSeries:
    """An ordered series of measurements, e.g. daily mean accuracy."""

    values: tuple[float, ...]
    unit: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))


def _paired(predictions: Sequence[float], references: Sequence[float]):
    if len(predictions) != len(references):
        raise InvalidInputError(
            f"length mismatch: {len(predictions)} predictions vs "
            f"{len(references)} references"
        )
    if not predictions:
        raise InvalidInputError("series must be non-empty")
    return list(zip(predictions, references))


def rmse(predictions: Sequence[float], references: Sequence[float]) -> float:
    """Root-mean-square error between two equal-length series."""
    pairs = _paired(predictions, references)
    return math.sqrt(sum((p - r) ** 2 for p, r in pairs) / len(pairs))


def mard(predictions: Sequence[float], references: Sequence[float]) -> float:
    """Mean absolute relative difference, in percent of the references."""
    pairs = _paired(predictions, references)
    if any(r == 0 for _, r in pairs):
        raise DivisionDomainError("references must all be non-zero")
    return 100.0 * sum(abs(p - r) / abs(r) for p, r in pairs) / len(pairs)


def stability(daily_mean_accuracy: Union[MeasurementSeries, Sequence[float]]) -> float:
    """Accuracy stability as a percent: 100 * max(0, 1 - s/mean).

    s is the sample (n-1) standard deviation of the series. A constant series
    scores 100; dispersion at or above the mean clamps to 0.
    """
    values = (
        daily_mean_accuracy.values
        if isinstance(daily_mean_accuracy, MeasurementSeries)
        else tuple(float(v) for v in daily_mean_accuracy)
    )
    if len(values) < 2:
        raise InsufficientDataError("stability needs at least 2 measurements")
    mean = sum(values) / len(values)
    if mean <= 0:
        raise DivisionDomainError("series mean must be positive")
    if min(values) == max(values):  # exact zero variance, no rounding residue
        return 100.0
    variance = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return 100.0 * max(0.0, 1.0 - math.sqrt(variance) / mean)


def throughput(completed_units: float, elapsed_s: float) -> float:
    """Completed work per second."""
    if elapsed_s <= 0:
        raise InvalidInputError(f"elapsed_s must be positive, got {elapsed_s}")
    if completed_units < 0:
        raise InvalidInputError(f"completed_units must be non-negative, got {completed_units}")
    return completed_units / elapsed_s
