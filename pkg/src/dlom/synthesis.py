"""Candidate-plan synthesis: exhaustive search over optimization-method
subsets against the signed effect matrix.

The effect matrix ships as ``data/effect_matrix.csv`` (one row per method,
one signed column per objective) so it can be audited as data rather than
read out of code.
"""

from __future__ import annotations

import csv
import uuid
from dataclasses import dataclass
from datetime import date
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Iterable, Optional

from .errors import DlomError
from .schema import (
    EFFECT_METHODS,
    OBJECTIVES,
    EndDeviceSpec,
    MainDln,
    ModelRecord,
    Objective,
    ObjectiveScores,
    ObjectiveWeights,
    OptimizationMethod,
    OptimizationPlan,
    Provenance,
    money,
)
from .query import Query

__all__ = [
    "EffectMatrix",
    "SynthesisResult",
    "UnsupportedMethodError",
    "load_effect_matrix",
    "effect_matrix",
    "predict_effect",
    "synthesize",
    "draft_model",
]

# effect-matrix CSV column header -> rated objective
_COLUMN_OBJECTIVE = {
    "Performance": Objective.PERFORMANCE,
    "Latency Reduction": Objective.LATENCY,
    "Cost Reduction": Objective.COST,
    "Complexity Reduction": Objective.COMPLEXITY,
    "Reliability": Objective.RELIABILITY,
    "Privacy": Objective.SECURITY,
}

_ROW_METHOD = {
    "Pruning": OptimizationMethod.PRUNING,
    "Knowledge Distillation": OptimizationMethod.KNOWLEDGE_DISTILLATION,
    "Quantization": OptimizationMethod.QUANTIZATION,
    "Fog Computing": OptimizationMethod.FOG_COMPUTING,
    "Shielded Execution": OptimizationMethod.SHIELDED_EXECUTION,
    "Tensor Decomposition": OptimizationMethod.TENSOR_DECOMPOSITION,
    "Hardware Optimization": OptimizationMethod.HARDWARE_OPTIMIZATION,
}

_SIGNS = {"+": 1, "-": -1, "0": 0}


class UnsupportedMethodError(DlomError):
    pass


@dataclass(frozen=True)
class EffectMatrix:
    """Signed effect of each of the seven methods on each objective."""

    effects: dict[OptimizationMethod, dict[Objective, int]]

    def effect(self, method: OptimizationMethod, objective: Objective) -> int:
        if method not in self.effects:
            raise UnsupportedMethodError(
                f"{method.value} has no effect-matrix row"
            )
        return self.effects[method][objective]


def load_effect_matrix() -> EffectMatrix:
    """Parse the shipped CSV into an EffectMatrix, checking shape and values."""
    text = resources.files("dlom.data").joinpath("effect_matrix.csv").read_text("utf-8")
    rows = list(csv.DictReader(text.splitlines()))
    if len(rows) != 7:
        raise ValueError(f"effect matrix must have 7 method rows, found {len(rows)}")
    effects: dict[OptimizationMethod, dict[Objective, int]] = {}
    for row in rows:
        method = _ROW_METHOD[row["Method"]]
        effects[method] = {
            objective: _SIGNS[row[column].strip()]
            for column, objective in _COLUMN_OBJECTIVE.items()
        }
    return EffectMatrix(effects)


_MATRIX: Optional[EffectMatrix] = None


def effect_matrix() -> EffectMatrix:
    global _MATRIX
    if _MATRIX is None:
        _MATRIX = load_effect_matrix()
    return _MATRIX


def predict_effect(
    methods: Iterable[OptimizationMethod],
) -> dict[Objective, int]:
    """Componentwise sum of the chosen methods' effect rows."""
    matrix = effect_matrix()
    chosen = set(methods)
    unsupported = chosen - set(EFFECT_METHODS)
    if unsupported:
        names = sorted(m.value for m in unsupported)
        raise UnsupportedMethodError(f"no effect-matrix row for: {names}")
    return {
        objective: sum(matrix.effect(m, objective) for m in chosen)
        for objective in OBJECTIVES
    }


@dataclass(frozen=True)
class SynthesisResult:
    methods: frozenset[OptimizationMethod]
    net_effect: dict[Objective, int]
    weighted_score: float

    def method_names(self) -> list[str]:
        return sorted(m.value for m in self.methods)


def synthesize(
    weights: ObjectiveWeights, max_methods: Optional[int] = None
) -> SynthesisResult:
    """Pick the method subset maximizing the weighted net effect.

    All 2^7 subsets are evaluated (the search space is tiny, so the optimum
    is exact). Ties resolve to fewer methods, then lexicographic method
    names; scores compare as exact rationals so mathematically tied subsets
    never split on floating-point rounding.
    """
    if max_methods is not None and not 0 <= max_methods <= 7:
        raise ValueError(f"max_methods must be in [0, 7], got {max_methods}")
    limit = 7 if max_methods is None else max_methods

    best = None
    best_key = None
    for size in range(limit + 1):
        for subset in combinations(EFFECT_METHODS, size):
            net = predict_effect(subset)
            score = sum(
                (Fraction(weights[o]) * net[o] for o in OBJECTIVES), Fraction(0)
            )
            names = tuple(sorted(m.value for m in subset))
            key = (-score, size, names)
            if best_key is None or key < best_key:
                best_key = key
                best = (frozenset(subset), net, score)
    methods, net, score = best
    return SynthesisResult(
        methods=methods, net_effect=net, weighted_score=float(score)
    )


_AREA_OPS = {"=", "contains"}
_UPPER_OPS = {"=", "<=", "<"}
_LOWER_OPS = {"=", ">=", ">"}


def draft_model(
    result: SynthesisResult,
    criteria: Optional[Query],
    weights: ObjectiveWeights,
    draft_id: Optional[str] = None,
) -> ModelRecord:
    """Draft a candidate record around a synthesized plan.

    Application area, budget, and device count are pinned from the session
    criteria where bounds exist; everything else takes placeholder defaults.
    The rating starts at 3.0 on every axis pending real measurements, and no
    performance report is attached.
    """
    area = "unspecified"
    total_cost = money(0)
    devices = 1
    if criteria is not None:
        for condition in criteria.conditions:
            if condition.field_path == "model.application_area" and (
                condition.operator in _AREA_OPS
            ):
                area = str(condition.literal)
            elif condition.field_path == "model.total_cost" and (
                condition.operator in _UPPER_OPS
            ):
                bound = money(condition.literal)
                total_cost = bound if total_cost == 0 else min(total_cost, bound)
            elif condition.field_path == "model.num_iot_devices" and (
                condition.operator in _LOWER_OPS
            ):
                devices = max(devices, int(condition.literal))
    note = "synthesized from effect-matrix search; weights " + ", ".join(
        f"{o.value}={weights[o]:.4f}" for o in OBJECTIVES
    )
    return ModelRecord(
        id=draft_id or f"synth-{uuid.uuid4().hex[:12]}",
        created_year=date.today().year,
        rating=ObjectiveScores.uniform(3.0),
        application_area=area,
        purpose="unspecified",
        total_cost=total_cost,
        num_iot_devices=devices,
        device=EndDeviceSpec(name="unspecified", memory_mb=1),
        dln=MainDln(name="unspecified"),
        optimization=OptimizationPlan(
            methods=result.methods, algorithm_notes=note
        ),
        performance=None,
        provenance=Provenance.SYNTHESIZED,
    )
