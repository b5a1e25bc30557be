/** Test fixtures: model records in the service's canonical JSON shape, the
 * walkthrough comparison rows, and a ranking response recorded from a live
 * service run against this same fixture set. */

import type { PairRow } from "../src/elicitation.js";
import type { ModelRecordJson, RankingResponse } from "../src/types.js";

interface ModelOverrides {
  id: string;
  created_year: number;
  rating: number[];
  application_area: string;
  purpose: string;
  total_cost: string;
  num_iot_devices: number;
  accuracy_pct: number;
  system_latency_ms: number;
  inference_latency_ms: number;
  stability_pct: number;
  runtime_memory_mb: number;
  methods: string[];
  device_name?: string;
  dln_name?: string;
  host?: string;
}

export function makeModel(spec: ModelOverrides): ModelRecordJson {
  const [performance, reliability, security, cost, latency, complexity] = spec.rating;
  return {
    id: spec.id,
    created_year: spec.created_year,
    rating: { performance, reliability, security, cost, latency, complexity },
    application_area: spec.application_area,
    purpose: spec.purpose,
    total_cost: spec.total_cost,
    num_iot_devices: spec.num_iot_devices,
    cloud: {
      host_address: spec.host ?? "cloud.example",
      response_time_ms: 50.0,
      shielded_execution: false,
      security_protocols: ["TLS1.2"],
      cost_plan: "monthly",
      backup_address: "backup.example",
    },
    device: {
      name: spec.device_name ?? "Raspberry Pi 3",
      cpu: "Cortex-A53",
      gpu: "",
      memory_mb: 1024,
      camera_mp: 8.0,
      dl_framework: "TensorFlow Lite",
      price: "70.00",
    },
    dln: {
      name: spec.dln_name ?? "ResNet-50",
      training_dataset: `${spec.application_area.toLowerCase()}-images`,
      hyperparameters: { lr: "0.01" },
      activation_fn: "ReLU",
      loss_fn: "cross-entropy",
      num_layers: 50,
      num_inputs: 224,
      num_outputs: 10,
    },
    optimization: { methods: spec.methods, algorithm_notes: "" },
    performance: {
      system_latency_ms: spec.system_latency_ms,
      inference_latency_ms: spec.inference_latency_ms,
      accuracy_pct: spec.accuracy_pct,
      stability_pct: spec.stability_pct,
      avg_power_w: 4.0,
      throughput_per_s: 10.0,
      runtime_memory_mb: spec.runtime_memory_mb,
    },
    provenance: "ingested",
  };
}

/** Six models; exactly three satisfy Medical & budget<=14000 & devices>=10. */
export function fixtureModels(): ModelRecordJson[] {
  return [
    makeModel({
      id: "med-skin-resnet", created_year: 2019, rating: [5.0, 4.0, 3.0, 4.0, 4.0, 3.0],
      application_area: "Medical", purpose: "Object detection", total_cost: "12315.00",
      num_iot_devices: 10, accuracy_pct: 94.356, system_latency_ms: 340.0,
      inference_latency_ms: 123.0, stability_pct: 89.0, runtime_memory_mb: 5.6,
      methods: ["Pruning", "Quantization"], host: "tpu.googleapis.example",
    }),
    makeModel({
      id: "med-mobilenet-edge", created_year: 2020, rating: [3.5, 4.5, 2.5, 4.5, 3.0, 4.0],
      application_area: "Medical", purpose: "Lesion classification", total_cost: "9800.00",
      num_iot_devices: 12, accuracy_pct: 91.2, system_latency_ms: 410.0,
      inference_latency_ms: 150.0, stability_pct: 86.0, runtime_memory_mb: 4.2,
      methods: ["KnowledgeDistillation"], dln_name: "MobileNet V3",
    }),
    makeModel({
      id: "med-vgg-fog", created_year: 2018, rating: [4.0, 3.0, 4.5, 2.5, 2.0, 2.5],
      application_area: "Medical", purpose: "Dermatology triage", total_cost: "14000.00",
      num_iot_devices: 20, accuracy_pct: 92.5, system_latency_ms: 520.0,
      inference_latency_ms: 210.0, stability_pct: 84.0, runtime_memory_mb: 12.0,
      methods: ["FogComputing", "Pruning"], dln_name: "VGG-16",
    }),
    makeModel({
      id: "med-fig8b", created_year: 2019, rating: [4.5, 4.0, 3.0, 3.5, 4.4, 4.0],
      application_area: "Medical", purpose: "Object detection", total_cost: "12315.00",
      num_iot_devices: 6, accuracy_pct: 94.356, system_latency_ms: 340.0,
      inference_latency_ms: 123.0, stability_pct: 89.0, runtime_memory_mb: 5.6,
      methods: ["Pruning", "Quantization"],
    }),
    makeModel({
      id: "agri-yolo-nano", created_year: 2021, rating: [3.0, 3.5, 2.0, 4.0, 4.5, 3.5],
      application_area: "Agriculture", purpose: "Crop monitoring", total_cost: "8000.00",
      num_iot_devices: 15, accuracy_pct: 88.0, system_latency_ms: 280.0,
      inference_latency_ms: 95.0, stability_pct: 91.0, runtime_memory_mb: 3.1,
      methods: ["TensorDecomposition"], dln_name: "YOLOv5-nano",
    }),
    makeModel({
      id: "retail-ssd-lite", created_year: 2022, rating: [4.5, 4.0, 3.5, 2.0, 3.5, 3.0],
      application_area: "Retail", purpose: "Shelf auditing", total_cost: "22000.00",
      num_iot_devices: 40, accuracy_pct: 90.5, system_latency_ms: 300.0,
      inference_latency_ms: 110.0, stability_pct: 87.0, runtime_memory_mb: 6.8,
      methods: ["HardwareOptimization"], dln_name: "SSD-Lite",
    }),
  ];
}

/** The walkthrough's seven directed judgments as grid rows. */
export function scenarioRows(): PairRow[] {
  return [
    { left: "performance", right: "cost", intensity: "absolute", dominant: "left", touched: true },
    { left: "security", right: "latency", intensity: "weak", dominant: "left", touched: true },
    { left: "security", right: "complexity", intensity: "stronger", dominant: "left", touched: true },
    { left: "performance", right: "complexity", intensity: "weak", dominant: "left", touched: true },
    { left: "cost", right: "reliability", intensity: "stronger", dominant: "left", touched: true },
    { left: "reliability", right: "latency", intensity: "equal", dominant: "left", touched: true },
    { left: "cost", right: "latency", intensity: "stronger", dominant: "left", touched: true },
  ];
}

/** Ranking response recorded from a live service against fixtureModels(). */
export const RECORDED_RANKING: RankingResponse = {
  weights: {
    performance: 0.517036,
    reliability: 0.028822,
    security: 0.216897,
    cost: 0.114508,
    latency: 0.036272,
    complexity: 0.086465,
  },
  consistency: 0.563186,
  ranking: [
    {
      id: "med-skin-resnet",
      score: 4.213674541751953,
      contributions: {
        performance: 2.585181,
        reliability: 0.115287,
        security: 0.65069,
        cost: 0.458033,
        latency: 0.145088,
        complexity: 0.259395,
      },
    },
    {
      id: "med-vgg-fog",
      score: 3.705622126823473,
      contributions: {
        performance: 2.068145,
        reliability: 0.086465,
        security: 0.976034,
        cost: 0.286271,
        latency: 0.072544,
        complexity: 0.216163,
      },
    },
    {
      id: "med-mobilenet-edge",
      score: 3.451530051724153,
      contributions: {
        performance: 1.809627,
        reliability: 0.129698,
        security: 0.542241,
        cost: 0.515287,
        latency: 0.108816,
        complexity: 0.345861,
      },
    },
  ],
  top_model: {
    id: "med-skin-resnet",
    total_cost: "12315.00",
    purpose: "Object detection",
    rating: 3.8333,
    year_created: 2019,
    application_area: "Medical",
    num_iot_devices: 10,
    cost_per_device: "1231.50",
    device_name: "Raspberry Pi 3",
    dln_name: "ResNet-50",
    cloud_host: "tpu.googleapis.example",
    accuracy_pct: 94.356,
    system_latency_ms: 340.0,
    inference_latency_ms: 123.0,
    stability_pct: 89.0,
    runtime_memory_mb: 5.6,
    optimization_methods: ["Pruning", "Quantization"],
  },
};
