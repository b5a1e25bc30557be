"""Domain types for stored DL optimization models.

Covers the six record classes (model metadata, cloud configuration, end-device
specs, main DLN, optimization plan, performance report), validation, the 1-5
objective rating scale, and canonical JSON serialization.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from decimal import Decimal, ROUND_HALF_UP
from enum import Enum
from typing import Mapping, Optional, Sequence

from .errors import DlomError

__all__ = [
    "Objective",
    "ObjectiveScores",
    "ObjectiveWeights",
    "CloudConfig",
    "EndDeviceSpec",
    "MainDln",
    "OptimizationMethod",
    "OptimizationPlan",
    "PerformanceReport",
    "Provenance",
    "ModelRecord",
    "Violation",
    "InvalidPopulationError",
    "money",
    "validate_model",
    "normalize_metric",
    "suggest_scores",
    "record_to_dict",
    "record_from_dict",
]

_CENTS = Decimal("0.01")


def money(value) -> Decimal:
    """Normalize a money amount to a Decimal with exactly 2 fraction digits."""
    if isinstance(value, float):
        value = repr(value)
    return Decimal(value).quantize(_CENTS, rounding=ROUND_HALF_UP)


class Objective(Enum):
    """The six rating objectives. Declaration order fixes vector index order."""

    PERFORMANCE = "performance"
    RELIABILITY = "reliability"
    SECURITY = "security"
    COST = "cost"
    LATENCY = "latency"
    COMPLEXITY = "complexity"


OBJECTIVES: tuple[Objective, ...] = tuple(Objective)


@dataclass(frozen=True)
class ObjectiveScores:
    """One 1-5 rating per objective; 5 is best on every axis."""

    performance: float
    reliability: float
    security: float
    cost: float
    latency: float
    complexity: float

    def as_tuple(self) -> tuple[float, ...]:
        return (
            self.performance,
            self.reliability,
            self.security,
            self.cost,
            self.latency,
            self.complexity,
        )

    def __getitem__(self, objective: Objective) -> float:
        return getattr(self, objective.value)

    def mean(self) -> float:
        return sum(self.as_tuple()) / 6.0

    @classmethod
    def uniform(cls, value: float) -> "ObjectiveScores":
        return cls(*([value] * 6))


@dataclass(frozen=True)
class ObjectiveWeights:
    """Non-negative weight per objective, normalized to sum 1."""

    performance: float
    reliability: float
    security: float
    cost: float
    latency: float
    complexity: float

    def as_tuple(self) -> tuple[float, ...]:
        return (
            self.performance,
            self.reliability,
            self.security,
            self.cost,
            self.latency,
            self.complexity,
        )

    def __getitem__(self, objective: Objective) -> float:
        return getattr(self, objective.value)

    def normalized(self) -> "ObjectiveWeights":
        values = self.as_tuple()
        if any(v < 0 for v in values):
            raise ValueError("weights must be non-negative")
        total = sum(values)
        if total <= 0:
            return ObjectiveWeights.uniform()
        return ObjectiveWeights(*(v / total for v in values))

    @classmethod
    def uniform(cls) -> "ObjectiveWeights":
        return cls(*([1.0 / 6.0] * 6))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, float]) -> "ObjectiveWeights":
        lowered = {k.lower(): float(v) for k, v in mapping.items()}
        unknown = set(lowered) - {o.value for o in OBJECTIVES}
        if unknown:
            raise ValueError(f"unknown objective names: {sorted(unknown)}")
        return cls(*(lowered.get(o.value, 0.0) for o in OBJECTIVES))

    def to_mapping(self) -> dict[str, float]:
        return {o.value: self[o] for o in OBJECTIVES}


@dataclass(frozen=True)
class CloudConfig:
    host_address: str = ""
    response_time_ms: float = 0.0
    shielded_execution: bool = False
    security_protocols: tuple[str, ...] = ()
    cost_plan: str = ""
    backup_address: str = ""


@dataclass(frozen=True)
class EndDeviceSpec:
    name: str = ""
    cpu: str = ""
    gpu: str = ""
    memory_mb: int = 0
    camera_mp: float = 0.0
    dl_framework: str = ""
    price: Decimal = Decimal("0.00")

    def __post_init__(self):
        object.__setattr__(self, "price", money(self.price))


@dataclass(frozen=True)
class MainDln:
    name: str = ""
    training_dataset: str = ""
    hyperparameters: Mapping[str, str] = field(default_factory=dict)
    activation_fn: str = ""
    loss_fn: str = ""
    num_layers: int = 1
    num_inputs: int = 1
    num_outputs: int = 1


class OptimizationMethod(Enum):
    """Catalog of optimization methods. The first seven carry effect-matrix rows;
    fine-tuning is storable metadata only."""

    PRUNING = "Pruning"
    KNOWLEDGE_DISTILLATION = "KnowledgeDistillation"
    QUANTIZATION = "Quantization"
    FOG_COMPUTING = "FogComputing"
    SHIELDED_EXECUTION = "ShieldedExecution"
    TENSOR_DECOMPOSITION = "TensorDecomposition"
    HARDWARE_OPTIMIZATION = "HardwareOptimization"
    FINE_TUNING = "FineTuning"


EFFECT_METHODS: tuple[OptimizationMethod, ...] = tuple(OptimizationMethod)[:7]


@dataclass(frozen=True)
class OptimizationPlan:
    methods: frozenset[OptimizationMethod] = frozenset()
    algorithm_notes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "methods", frozenset(self.methods))

    def method_names(self) -> list[str]:
        return sorted(m.value for m in self.methods)


@dataclass(frozen=True)
class PerformanceReport:
    system_latency_ms: float = 0.0
    inference_latency_ms: float = 0.0
    accuracy_pct: float = 0.0
    stability_pct: float = 0.0
    avg_power_w: float = 0.0
    throughput_per_s: float = 0.0
    runtime_memory_mb: float = 0.0


class Provenance(Enum):
    INGESTED = "ingested"
    SYNTHESIZED = "synthesized"


@dataclass(frozen=True)
class ModelRecord:
    """One stored optimization model aggregating all six record classes.

    ``rating_aggregate`` is always recomputed as the mean of the six rating
    components; it is never stored independently.
    """

    id: str
    created_year: int
    rating: ObjectiveScores
    application_area: str
    purpose: str
    total_cost: Decimal
    num_iot_devices: int
    cloud: CloudConfig = field(default_factory=CloudConfig)
    device: EndDeviceSpec = field(default_factory=EndDeviceSpec)
    dln: MainDln = field(default_factory=MainDln)
    optimization: OptimizationPlan = field(default_factory=OptimizationPlan)
    performance: Optional[PerformanceReport] = None
    provenance: Provenance = Provenance.INGESTED

    def __post_init__(self):
        object.__setattr__(self, "total_cost", money(self.total_cost))

    @property
    def rating_aggregate(self) -> float:
        return self.rating.mean()

    def with_device(self, device: EndDeviceSpec) -> "ModelRecord":
        return replace(self, device=device)


@dataclass(frozen=True)
class Violation:
    """A single validation failure, naming the offending field and the rule."""

    field: str
    rule: str

    def __str__(self) -> str:
        return f"{self.field}: {self.rule}"


def validate_model(record: ModelRecord) -> list[Violation]:
    """Check every record invariant; returns all violations (empty means ok)."""
    out: list[Violation] = []
    if not record.id:
        out.append(Violation("id", "id must be non-empty"))
    if record.num_iot_devices < 1:
        out.append(Violation("num_iot_devices", "num_iot_devices >= 1"))
    if record.total_cost < 0:
        out.append(Violation("total_cost", "total_cost >= 0"))
    for objective in OBJECTIVES:
        value = record.rating[objective]
        if not 1.0 <= value <= 5.0:
            out.append(Violation(f"rating.{objective.value}", "rating in [1, 5]"))
    if record.cloud.response_time_ms < 0:
        out.append(Violation("cloud.response_time_ms", "response_time_ms >= 0"))
    if record.device.memory_mb <= 0:
        out.append(Violation("device.memory_mb", "memory_mb > 0"))
    if record.device.price < 0:
        out.append(Violation("device.price", "price >= 0"))
    if record.device.camera_mp < 0:
        out.append(Violation("device.camera_mp", "camera_mp >= 0"))
    if record.dln.num_layers < 1:
        out.append(Violation("dln.num_layers", "num_layers >= 1"))
    if record.dln.num_inputs < 1:
        out.append(Violation("dln.num_inputs", "num_inputs >= 1"))
    if record.dln.num_outputs < 1:
        out.append(Violation("dln.num_outputs", "num_outputs >= 1"))
    perf = record.performance
    if perf is not None:
        for name in (
            "system_latency_ms",
            "inference_latency_ms",
            "avg_power_w",
            "throughput_per_s",
            "runtime_memory_mb",
        ):
            if getattr(perf, name) < 0:
                out.append(Violation(f"performance.{name}", f"{name} >= 0"))
        for name in ("accuracy_pct", "stability_pct"):
            if not 0.0 <= getattr(perf, name) <= 100.0:
                out.append(Violation(f"performance.{name}", f"{name} in [0, 100]"))
        if perf.inference_latency_ms > perf.system_latency_ms:
            out.append(
                Violation(
                    "performance.inference_latency_ms",
                    "inference latency <= system latency",
                )
            )
    return out


class InvalidPopulationError(DlomError):
    pass


def normalize_metric(
    value: float,
    population_min: float,
    population_max: float,
    direction: str = "forward",
) -> float:
    """Map a raw metric onto the 1-5 rating scale against a population range.

    ``forward`` means larger raw values are better, ``reverse`` means smaller
    are better. A degenerate population (min == max) maps to the midpoint 3.0;
    values outside the population range are clamped to [1, 5].
    """
    if direction not in ("forward", "reverse"):
        raise ValueError(f"direction must be 'forward' or 'reverse', got {direction!r}")
    if population_min > population_max:
        raise InvalidPopulationError(
            f"population_min {population_min} > population_max {population_max}"
        )
    if population_min == population_max:
        return 3.0
    span = population_max - population_min
    scaled = 4.0 * (value - population_min) / span
    score = 1.0 + scaled if direction == "forward" else 5.0 - scaled
    return min(5.0, max(1.0, score))


def _security_feature_count(record: ModelRecord) -> float:
    return (1 if record.cloud.shielded_execution else 0) + len(
        record.cloud.security_protocols
    )


def suggest_scores(
    record: ModelRecord, population: Sequence[ModelRecord]
) -> ObjectiveScores:
    """Suggest default 1-5 ratings for ``record`` relative to a population.

    Ratings remain user-provided; this only seeds them from measured metrics.
    Every population member (including ``record``) must carry a performance
    report, since four of the six axes read from it.
    """
    if not population:
        raise InvalidPopulationError("population must be non-empty")
    if not any(m.id == record.id for m in population):
        raise InvalidPopulationError("population must include the record being scored")
    missing = [m.id for m in population if m.performance is None]
    if missing:
        raise InvalidPopulationError(
            f"population members lack performance reports: {missing}"
        )

    axes = {
        Objective.PERFORMANCE: (lambda m: m.performance.accuracy_pct, "forward"),
        Objective.RELIABILITY: (lambda m: m.performance.stability_pct, "forward"),
        Objective.SECURITY: (_security_feature_count, "forward"),
        Objective.COST: (
            lambda m: float(m.total_cost) / m.num_iot_devices,
            "reverse",
        ),
        Objective.LATENCY: (lambda m: m.performance.system_latency_ms, "reverse"),
        Objective.COMPLEXITY: (lambda m: len(m.optimization.methods), "reverse"),
    }
    values = {}
    for objective, (extract, direction) in axes.items():
        pop_values = [extract(m) for m in population]
        values[objective.value] = normalize_metric(
            extract(record), min(pop_values), max(pop_values), direction
        )
    return ObjectiveScores(**values)


# --- canonical JSON serialization ------------------------------------------


def _money_str(value: Decimal) -> str:
    return f"{money(value):.2f}"


def record_to_dict(record: ModelRecord) -> dict:
    """Canonical JSON-ready form: snake_case fields, money as 2-digit strings."""
    return {
        "id": record.id,
        "created_year": record.created_year,
        "rating": {o.value: record.rating[o] for o in OBJECTIVES},
        "rating_aggregate": record.rating_aggregate,
        "application_area": record.application_area,
        "purpose": record.purpose,
        "total_cost": _money_str(record.total_cost),
        "num_iot_devices": record.num_iot_devices,
        "cloud": {
            "host_address": record.cloud.host_address,
            "response_time_ms": record.cloud.response_time_ms,
            "shielded_execution": record.cloud.shielded_execution,
            "security_protocols": list(record.cloud.security_protocols),
            "cost_plan": record.cloud.cost_plan,
            "backup_address": record.cloud.backup_address,
        },
        "device": {
            "name": record.device.name,
            "cpu": record.device.cpu,
            "gpu": record.device.gpu,
            "memory_mb": record.device.memory_mb,
            "camera_mp": record.device.camera_mp,
            "dl_framework": record.device.dl_framework,
            "price": _money_str(record.device.price),
        },
        "dln": {
            "name": record.dln.name,
            "training_dataset": record.dln.training_dataset,
            "hyperparameters": dict(record.dln.hyperparameters),
            "activation_fn": record.dln.activation_fn,
            "loss_fn": record.dln.loss_fn,
            "num_layers": record.dln.num_layers,
            "num_inputs": record.dln.num_inputs,
            "num_outputs": record.dln.num_outputs,
        },
        "optimization": {
            "methods": record.optimization.method_names(),
            "algorithm_notes": record.optimization.algorithm_notes,
        },
        "performance": None
        if record.performance is None
        else {
            "system_latency_ms": record.performance.system_latency_ms,
            "inference_latency_ms": record.performance.inference_latency_ms,
            "accuracy_pct": record.performance.accuracy_pct,
            "stability_pct": record.performance.stability_pct,
            "avg_power_w": record.performance.avg_power_w,
            "throughput_per_s": record.performance.throughput_per_s,
            "runtime_memory_mb": record.performance.runtime_memory_mb,
        },
        "provenance": record.provenance.value,
    }


def record_from_dict(data: Mapping) -> ModelRecord:
    cloud = data.get("cloud") or {}
    device = data.get("device") or {}
    dln = data.get("dln") or {}
    optimization = data.get("optimization") or {}
    perf = data.get("performance")
    rating = data["rating"]
    return ModelRecord(
        id=data["id"],
        created_year=int(data["created_year"]),
        rating=ObjectiveScores(**{o.value: float(rating[o.value]) for o in OBJECTIVES}),
        application_area=data.get("application_area", ""),
        purpose=data.get("purpose", ""),
        total_cost=money(data["total_cost"]),
        num_iot_devices=int(data["num_iot_devices"]),
        cloud=CloudConfig(
            host_address=cloud.get("host_address", ""),
            response_time_ms=float(cloud.get("response_time_ms", 0.0)),
            shielded_execution=bool(cloud.get("shielded_execution", False)),
            security_protocols=tuple(cloud.get("security_protocols", ())),
            cost_plan=cloud.get("cost_plan", ""),
            backup_address=cloud.get("backup_address", ""),
        ),
        device=EndDeviceSpec(
            name=device.get("name", ""),
            cpu=device.get("cpu", ""),
            gpu=device.get("gpu", ""),
            memory_mb=int(device.get("memory_mb", 0)),
            camera_mp=float(device.get("camera_mp", 0.0)),
            dl_framework=device.get("dl_framework", ""),
            price=money(device.get("price", "0.00")),
        ),
        dln=MainDln(
            name=dln.get("name", ""),
            training_dataset=dln.get("training_dataset", ""),
            hyperparameters=dict(dln.get("hyperparameters", {})),
            activation_fn=dln.get("activation_fn", ""),
            loss_fn=dln.get("loss_fn", ""),
            num_layers=int(dln.get("num_layers", 1)),
            num_inputs=int(dln.get("num_inputs", 1)),
            num_outputs=int(dln.get("num_outputs", 1)),
        ),
        optimization=OptimizationPlan(
            methods=frozenset(
                OptimizationMethod(name) for name in optimization.get("methods", ())
            ),
            algorithm_notes=optimization.get("algorithm_notes", ""),
        ),
        performance=None
        if perf is None
        else PerformanceReport(
            system_latency_ms=float(perf.get("system_latency_ms", 0.0)),
            inference_latency_ms=float(perf.get("inference_latency_ms", 0.0)),
            accuracy_pct=float(perf.get("accuracy_pct", 0.0)),
            stability_pct=float(perf.get("stability_pct", 0.0)),
            avg_power_w=float(perf.get("avg_power_w", 0.0)),
            throughput_per_s=float(perf.get("throughput_per_s", 0.0)),
            runtime_memory_mb=float(perf.get("runtime_memory_mb", 0.0)),
        ),
        provenance=Provenance(data.get("provenance", "ingested")),
    )


def field_paths() -> dict[str, str]:
    """Queryable dotted field paths mapped to their value kind.

    Kinds: ``string``, ``number``, ``boolean``, ``string_set``. Used by the
    query module for path and operator/type checking.
    """
    paths = {
        "model.id": "string",
        "model.created_year": "number",
        "model.rating_aggregate": "number",
        "model.application_area": "string",
        "model.purpose": "string",
        "model.total_cost": "number",
        "model.num_iot_devices": "number",
        "model.provenance": "string",
        "cloud.host_address": "string",
        "cloud.response_time_ms": "number",
        "cloud.shielded_execution": "boolean",
        "cloud.security_protocols": "string_set",
        "cloud.cost_plan": "string",
        "cloud.backup_address": "string",
        "device.name": "string",
        "device.cpu": "string",
        "device.gpu": "string",
        "device.memory_mb": "number",
        "device.camera_mp": "number",
        "device.dl_framework": "string",
        "device.price": "number",
        "dln.name": "string",
        "dln.training_dataset": "string",
        "dln.activation_fn": "string",
        "dln.loss_fn": "string",
        "dln.num_layers": "number",
        "dln.num_inputs": "number",
        "dln.num_outputs": "number",
        "optimization.methods": "string_set",
        "optimization.algorithm_notes": "string",
        "performance.system_latency_ms": "number",
        "performance.inference_latency_ms": "number",
        "performance.accuracy_pct": "number",
        "performance.stability_pct": "number",
        "performance.avg_power_w": "number",
        "performance.throughput_per_s": "number",
        "performance.runtime_memory_mb": "number",
    }
    for objective in OBJECTIVES:
        paths[f"model.rating.{objective.value}"] = "number"
    return paths


def field_value(record: ModelRecord, path: str):
    """Resolve a dotted field path against a record.

    Returns None when the path reads through an absent performance report.
    Money resolves to float, sets to a frozenset of method/protocol names.
    """
    head, _, rest = path.partition(".")
    if head == "model":
        if rest == "rating_aggregate":
            return record.rating_aggregate
        if rest.startswith("rating."):
            return record.rating[Objective(rest.split(".", 1)[1])]
        if rest == "total_cost":
            return float(record.total_cost)
        if rest == "provenance":
            return record.provenance.value
        return getattr(record, rest)
    if head == "performance":
        if record.performance is None:
            return None
        return getattr(record.performance, rest)
    if head == "dln":
        return getattr(record.dln, rest)
    if head == "optimization":
        if rest == "methods":
            return frozenset(record.optimization.method_names())
        return getattr(record.optimization, rest)
    if head == "cloud":
        if rest == "security_protocols":
            return frozenset(record.cloud.security_protocols)
        return getattr(record.cloud, rest)
    if head == "device":
        value = getattr(record.device, rest)
        return float(value) if rest == "price" else value
    raise KeyError(path)
