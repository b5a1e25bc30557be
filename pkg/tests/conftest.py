"""Shared fixtures: the walkthrough scenario repository and random record
generation used by persistence and oracle tests."""

from __future__ import annotations

import random
from decimal import Decimal

import pytest

from dlom.schema import (
    CloudConfig,
    EndDeviceSpec,
    MainDln,
    ModelRecord,
    ObjectiveScores,
    OptimizationMethod,
    OptimizationPlan,
    PerformanceReport,
    Provenance,
    money,
)

MEDICAL_QUERY = (
    'SELECT * WHERE { model.application_area = "Medical" ; '
    "model.num_iot_devices >= 10 ; model.total_cost <= 14000 }"
)

# directed elicitation set used by the scenario replay: performance dominates
# cost absolutely and complexity weakly; security outranks latency and
# complexity; cost outranks reliability and latency; reliability equals latency
SCENARIO_COMPARISONS = [
    ("performance", "cost", "absolute"),
    ("security", "latency", "weak"),
    ("security", "complexity", "stronger"),
    ("performance", "complexity", "weak"),
    ("cost", "reliability", "stronger"),
    ("reliability", "latency", "equal"),
    ("cost", "latency", "stronger"),
]


def fig8b_model() -> ModelRecord:
    """The walkthrough's result-card model."""
    return ModelRecord(
        id="med-fig8b",
        created_year=2019,
        rating=ObjectiveScores(4.5, 4.0, 3.0, 3.5, 4.4, 4.0),  # mean 3.9
        application_area="Medical",
        purpose="Object detection",
        total_cost=money("12315.00"),
        num_iot_devices=6,
        cloud=CloudConfig(
            host_address="tpu.googleapis.example",
            response_time_ms=45.0,
            shielded_execution=True,
            security_protocols=("TLS1.3",),
            cost_plan="on-demand",
            backup_address="tpu-backup.googleapis.example",
        ),
        device=EndDeviceSpec(
            name="Raspberry Pi 3.0",
            cpu="Cortex-A53",
            gpu="",
            memory_mb=1024,
            camera_mp=8.0,
            dl_framework="TensorFlow Lite",
            price=money("785.12"),
        ),
        dln=MainDln(
            name="ResNet-50",
            training_dataset="skin-cancer-imaging",
            hyperparameters={"lr": "0.001", "batch_size": "32"},
            activation_fn="SoftMax",
            loss_fn="cross-entropy",
            num_layers=50,
            num_inputs=300,
            num_outputs=300,
        ),
        optimization=OptimizationPlan(
            methods=frozenset(
                {OptimizationMethod.PRUNING, OptimizationMethod.QUANTIZATION}
            ),
            algorithm_notes="magnitude pruning + 8-bit post-training quantization",
        ),
        performance=PerformanceReport(
            system_latency_ms=340.0,
            inference_latency_ms=123.0,
            accuracy_pct=94.356,
            stability_pct=89.0,
            avg_power_w=3.8,
            throughput_per_s=12.0,
            runtime_memory_mb=5.6,
        ),
        provenance=Provenance.INGESTED,
    )


def _model(
    model_id,
    year,
    rating,
    area,
    purpose,
    cost,
    devices,
    accuracy,
    system_ms,
    inference_ms,
    stability,
    memory_mb,
    methods,
    device_name="Raspberry Pi 3",
    dln_name="ResNet-50",
    host="cloud.example",
) -> ModelRecord:
    return ModelRecord(
        id=model_id,
        created_year=year,
        rating=ObjectiveScores(*rating),
        application_area=area,
        purpose=purpose,
        total_cost=money(cost),
        num_iot_devices=devices,
        cloud=CloudConfig(
            host_address=host,
            response_time_ms=50.0,
            shielded_execution=False,
            security_protocols=("TLS1.2",),
            cost_plan="monthly",
            backup_address="backup.example",
        ),
        device=EndDeviceSpec(
            name=device_name,
            cpu="Cortex-A53",
            memory_mb=1024,
            camera_mp=8.0,
            dl_framework="TensorFlow Lite",
            price=money("70.00"),
        ),
        dln=MainDln(
            name=dln_name,
            training_dataset=f"{area.lower()}-images",
            hyperparameters={"lr": "0.01"},
            activation_fn="ReLU",
            loss_fn="cross-entropy",
            num_layers=50,
            num_inputs=224,
            num_outputs=10,
        ),
        optimization=OptimizationPlan(methods=frozenset(methods)),
        performance=PerformanceReport(
            system_latency_ms=system_ms,
            inference_latency_ms=inference_ms,
            accuracy_pct=accuracy,
            stability_pct=stability,
            avg_power_w=4.0,
            throughput_per_s=10.0,
            runtime_memory_mb=memory_mb,
        ),
    )


def scenario_models() -> list[ModelRecord]:
    """Six models; exactly three satisfy the medical query."""
    return [
        _model(
            "med-skin-resnet", 2019, (5.0, 4.0, 3.0, 4.0, 4.0, 3.0),
            "Medical", "Object detection", "12315.00", 10,
            94.356, 340.0, 123.0, 89.0, 5.6,
            {OptimizationMethod.PRUNING, OptimizationMethod.QUANTIZATION},
            host="tpu.googleapis.example", dln_name="ResNet-50",
        ),
        _model(
            "med-mobilenet-edge", 2020, (3.5, 4.5, 2.5, 4.5, 3.0, 4.0),
            "Medical", "Lesion classification", "9800.00", 12,
            91.2, 410.0, 150.0, 86.0, 4.2,
            {OptimizationMethod.KNOWLEDGE_DISTILLATION},
            dln_name="MobileNet V3",
        ),
        _model(
            "med-vgg-fog", 2018, (4.0, 3.0, 4.5, 2.5, 2.0, 2.5),
            "Medical", "Dermatology triage", "14000.00", 20,
            92.5, 520.0, 210.0, 84.0, 12.0,
            {OptimizationMethod.FOG_COMPUTING, OptimizationMethod.PRUNING},
            dln_name="VGG-16",
        ),
        fig8b_model(),  # Medical but only 6 devices: outside the query
        _model(
            "agri-yolo-nano", 2021, (3.0, 3.5, 2.0, 4.0, 4.5, 3.5),
            "Agriculture", "Crop monitoring", "8000.00", 15,
            88.0, 280.0, 95.0, 91.0, 3.1,
            {OptimizationMethod.TENSOR_DECOMPOSITION},
            dln_name="YOLOv5-nano",
        ),
        _model(
            "retail-ssd-lite", 2022, (4.5, 4.0, 3.5, 2.0, 3.5, 3.0),
            "Retail", "Shelf auditing", "22000.00", 40,
            90.5, 300.0, 110.0, 87.0, 6.8,
            {OptimizationMethod.HARDWARE_OPTIMIZATION},
            dln_name="SSD-Lite",
        ),
    ]


def random_record(rng: random.Random, model_id: str) -> ModelRecord:
    """A random valid record; money lands on whole cents so round trips are exact."""
    methods = frozenset(
        rng.sample(list(OptimizationMethod), k=rng.randint(0, 4))
    )
    system = rng.uniform(50, 2000)
    rating = [round(rng.uniform(1.0, 5.0), 2) for _ in range(6)]
    return ModelRecord(
        id=model_id,
        created_year=rng.randint(2015, 2026),
        rating=ObjectiveScores(*rating),
        application_area=rng.choice(["Medical", "Retail", "Agriculture", "Industrial"]),
        purpose=rng.choice(["detection", "classification", "forecasting"]),
        total_cost=Decimal(rng.randint(0, 5_000_000)) / 100,
        num_iot_devices=rng.randint(1, 500),
        cloud=CloudConfig(
            host_address=f"host-{rng.randint(0, 999)}.example",
            response_time_ms=round(rng.uniform(0, 500), 3),
            shielded_execution=rng.random() < 0.5,
            security_protocols=tuple(
                rng.sample(["TLS1.2", "TLS1.3", "IPsec", "mTLS"], k=rng.randint(0, 3))
            ),
            cost_plan=rng.choice(["on-demand", "monthly", "spot"]),
            backup_address=f"backup-{rng.randint(0, 999)}.example",
        ),
        device=EndDeviceSpec(
            name=rng.choice(["Raspberry Pi 3", "Jetson Nano", "Coral Dev Board"]),
            cpu=rng.choice(["Cortex-A53", "Cortex-A57", "x86"]),
            gpu=rng.choice(["", "Maxwell", "EdgeTPU"]),
            memory_mb=rng.choice([512, 1024, 2048, 4096, 8192]),
            camera_mp=round(rng.uniform(0, 48), 1),
            dl_framework=rng.choice(["TensorFlow Lite", "MobileNet V3", "ONNX Runtime"]),
            price=Decimal(rng.randint(0, 100_000)) / 100,
        ),
        dln=MainDln(
            name=rng.choice(["ResNet-50", "MobileNet V3", "YOLOv5", "BERT-tiny"]),
            training_dataset=f"dataset-{rng.randint(0, 99)}",
            hyperparameters={
                f"param{i}": str(round(rng.random(), 4)) for i in range(rng.randint(0, 3))
            },
            activation_fn=rng.choice(["ReLU", "SoftMax", "GELU"]),
            loss_fn=rng.choice(["cross-entropy", "mse"]),
            num_layers=rng.randint(1, 200),
            num_inputs=rng.randint(1, 1024),
            num_outputs=rng.randint(1, 1024),
        ),
        optimization=OptimizationPlan(
            methods=methods, algorithm_notes=f"notes-{rng.randint(0, 99)}"
        ),
        performance=None
        if rng.random() < 0.15
        else PerformanceReport(
            system_latency_ms=round(system, 3),
            inference_latency_ms=round(system * rng.uniform(0.1, 1.0), 3),
            accuracy_pct=round(rng.uniform(0, 100), 3),
            stability_pct=round(rng.uniform(0, 100), 3),
            avg_power_w=round(rng.uniform(0, 30), 3),
            throughput_per_s=round(rng.uniform(0, 1000), 3),
            runtime_memory_mb=round(rng.uniform(0, 512), 3),
        ),
        provenance=rng.choice(list(Provenance)),
    )


@pytest.fixture
def fig8b():
    return fig8b_model()


@pytest.fixture
def fixture_models():
    return scenario_models()


@pytest.fixture
def seeded_repo(tmp_path):
    from dlom.repository import Repository

    repo = Repository(tmp_path / "repo")
    for record in scenario_models():
        repo.add_model(record)
    return repo
