"""Durable storage for model records, split across four JSON-lines stores
(DLN parameters, client-side config, server-side config, model+performance),
plus knowledge-graph triple export and device-spec XML ingest."""

from __future__ import annotations

import json
import os
import re
import threading
import xml.etree.ElementTree as ET
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .errors import DlomError
from .schema import (
    OBJECTIVES,
    EndDeviceSpec,
    ModelRecord,
    Violation,
    money,
    record_from_dict,
    record_to_dict,
    validate_model,
)

__all__ = [
    "STORE_NAMES",
    "Repository",
    "Triple",
    "DeviceParseResult",
    "ModelNotFoundError",
    "DuplicateModelError",
    "ValidationFailedError",
    "DeviceXmlError",
    "export_triples_for_record",
    "format_ntriples",
    "parse_device_xml",
]

STORE_NAMES = (
    "dln_params",
    "client_config",
    "server_config",
    "model_performance",
)

NAMESPACE_PREFIX = "dlom:"
NAMESPACE_IRI = "urn:dlom:"


class ModelNotFoundError(DlomError):
    def __init__(self, model_id: str):
        self.model_id = model_id
        super().__init__(f"no model with id {model_id!r}")


class DuplicateModelError(DlomError):
    def __init__(self, model_id: str):
        self.model_id = model_id
        super().__init__(f"model id {model_id!r} already exists")


class ValidationFailedError(DlomError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in violations)
        super().__init__(f"record failed validation: {summary}")


class _RWLock:
    """Many concurrent readers, one exclusive writer."""

    def __init__(self):
        self._cond = threading.Condition()
        self._readers = 0
        self._writing = False

    @contextmanager
    def read(self):
        with self._cond:
            while self._writing:
                self._cond.wait()
            self._readers += 1
        try:
            yield
        finally:
            with self._cond:
                self._readers -= 1
                if self._readers == 0:
                    self._cond.notify_all()

    @contextmanager
    def write(self):
        with self._cond:
            while self._writing or self._readers:
                self._cond.wait()
            self._writing = True
        try:
            yield
        finally:
            with self._cond:
                self._writing = False
                self._cond.notify_all()


def _split_record(record: ModelRecord) -> dict[str, dict]:
    doc = record_to_dict(record)
    meta = {
        "id": doc["id"],
        "created_year": doc["created_year"],
        "rating": doc["rating"],
        "rating_aggregate": doc["rating_aggregate"],
        "application_area": doc["application_area"],
        "purpose": doc["purpose"],
        "total_cost": doc["total_cost"],
        "num_iot_devices": doc["num_iot_devices"],
        "optimization": doc["optimization"],
        "performance": doc["performance"],
        "provenance": doc["provenance"],
    }
    return {
        "dln_params": {"id": doc["id"], **doc["dln"]},
        "client_config": {"id": doc["id"], **doc["device"]},
        "server_config": {"id": doc["id"], **doc["cloud"]},
        "model_performance": meta,
    }


def _join_rows(model_id: str, rows: dict[str, dict]) -> ModelRecord:
    meta = dict(rows["model_performance"])
    payload = {
        **meta,
        "cloud": {k: v for k, v in rows["server_config"].items() if k != "id"},
        "device": {k: v for k, v in rows["client_config"].items() if k != "id"},
        "dln": {k: v for k, v in rows["dln_params"].items() if k != "id"},
    }
    # the optimization plan lives in the metadata store
    payload["optimization"] = meta.get("optimization", {})
    payload["id"] = model_id
    return record_from_dict(payload)


class Repository:
    """Four JSON-lines stores under one root directory.

    Writers rewrite each store to a temp file and rename it into place under
    an exclusive lock, so readers always observe a consistent snapshot of all
    four stores and a crash never leaves a half-written file.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = _RWLock()

    def _store_path(self, store: str) -> Path:
        return self.root / f"{store}.jsonl"

    def _read_store(self, store: str) -> dict[str, dict]:
        path = self._store_path(store)
        rows: dict[str, dict] = {}
        if not path.exists():
            return rows
        with path.open("r", encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                row = json.loads(line)
                row_id = row["id"]
                if row_id in rows:
                    raise DlomError(
                        f"{path.name}:{line_no}: duplicate id {row_id!r} in store"
                    )
                rows[row_id] = row
        return rows

    def _write_store(self, store: str, rows: dict[str, dict]):
        path = self._store_path(store)
        tmp = path.with_suffix(".jsonl.tmp")
        with tmp.open("w", encoding="utf-8") as handle:
            for row in rows.values():
                handle.write(json.dumps(row) + "\n")
            handle.flush()
            os.fsync(handle.fileno())
        tmp.replace(path)

    def _read_all(self) -> dict[str, dict[str, dict]]:
        return {store: self._read_store(store) for store in STORE_NAMES}

    def add_model(self, record: ModelRecord) -> str:
        violations = validate_model(record)
        if violations:
            raise ValidationFailedError(violations)
        with self._lock.write():
            stores = self._read_all()
            if record.id in stores["model_performance"]:
                raise DuplicateModelError(record.id)
            parts = _split_record(record)
            for store in STORE_NAMES:
                stores[store][record.id] = parts[store]
                self._write_store(store, stores[store])
        return record.id

    def get_model(self, model_id: str) -> ModelRecord:
        with self._lock.read():
            stores = self._read_all()
        if model_id not in stores["model_performance"]:
            raise ModelNotFoundError(model_id)
        return _join_rows(
            model_id, {store: stores[store][model_id] for store in STORE_NAMES}
        )

    def list_models(self) -> list[ModelRecord]:
        with self._lock.read():
            stores = self._read_all()
        return [
            _join_rows(model_id, {store: stores[store][model_id] for store in STORE_NAMES})
            for model_id in stores["model_performance"]
        ]

    def remove_model(self, model_id: str) -> ModelRecord:
        with self._lock.write():
            stores = self._read_all()
            if model_id not in stores["model_performance"]:
                raise ModelNotFoundError(model_id)
            record = _join_rows(
                model_id, {store: stores[store][model_id] for store in STORE_NAMES}
            )
            for store in STORE_NAMES:
                stores[store].pop(model_id, None)
                self._write_store(store, stores[store])
        return record

    def replace_model(self, record: ModelRecord) -> str:
        """Swap an existing record for a new version under one write lock."""
        violations = validate_model(record)
        if violations:
            raise ValidationFailedError(violations)
        with self._lock.write():
            stores = self._read_all()
            if record.id not in stores["model_performance"]:
                raise ModelNotFoundError(record.id)
            parts = _split_record(record)
            for store in STORE_NAMES:
                stores[store][record.id] = parts[store]
                self._write_store(store, stores[store])
        return record.id

    def check_integrity(self) -> list[str]:
        """Cross-store referential integrity problems; empty means clean."""
        with self._lock.read():
            stores = self._read_all()
        problems = []
        reference = set(stores["model_performance"])
        for store in STORE_NAMES:
            ids = set(stores[store])
            for missing in sorted(reference - ids):
                problems.append(f"{store}: missing row for {missing!r}")
            for orphan in sorted(ids - reference):
                problems.append(f"{store}: orphan row for {orphan!r}")
        return problems

    def export_triples(self, model_id: str) -> list["Triple"]:
        return export_triples_for_record(self.get_model(model_id))


# --- knowledge-graph triple export ------------------------------------------


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    object: str


def _lexical(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) and value == int(value):
        return str(int(value))
    return str(value)


def export_triples_for_record(record: ModelRecord) -> list[Triple]:
    """One triple per scalar field plus one per set/map element, sorted by
    (predicate, object) so exports are deterministic."""
    doc = record_to_dict(record)
    subject = f"{NAMESPACE_PREFIX}model/{record.id}"
    triples: list[Triple] = []

    def emit(cls: str, name: str, value):
        triples.append(Triple(subject, f"{NAMESPACE_PREFIX}{cls}/{name}", _lexical(value)))

    for name in (
        "id",
        "created_year",
        "rating_aggregate",
        "application_area",
        "purpose",
        "total_cost",
        "num_iot_devices",
        "provenance",
    ):
        emit("model", name, doc[name])
    for objective in OBJECTIVES:
        emit("model", f"rating_{objective.value}", doc["rating"][objective.value])
    for name, value in doc["cloud"].items():
        if name == "security_protocols":
            for protocol in value:
                emit("cloud", name, protocol)
        else:
            emit("cloud", name, value)
    for name, value in doc["device"].items():
        emit("device", name, value)
    for name, value in doc["dln"].items():
        if name == "hyperparameters":
            for key in value:
                emit("dln", name, f"{key}={value[key]}")
        else:
            emit("dln", name, value)
    for method in doc["optimization"]["methods"]:
        emit("optimization", "methods", method)
    emit("optimization", "algorithm_notes", doc["optimization"]["algorithm_notes"])
    if doc["performance"] is not None:
        for name, value in doc["performance"].items():
            emit("performance", name, value)
    triples.sort(key=lambda t: (t.predicate, t.object))
    return triples


def _escape_literal(text: str) -> str:
    return (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def _expand(iri: str) -> str:
    return NAMESPACE_IRI + iri[len(NAMESPACE_PREFIX):] if iri.startswith(NAMESPACE_PREFIX) else iri


def format_ntriples(triples: Sequence[Triple]) -> str:
    lines = [
        f'<{_expand(t.subject)}> <{_expand(t.predicate)}> "{_escape_literal(t.object)}" .'
        for t in triples
    ]
    return "\n".join(lines) + ("\n" if lines else "")


# --- device-spec XML ingest ---------------------------------------------------


class DeviceXmlError(DlomError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(message)


@dataclass(frozen=True)
class DeviceParseResult:
    device: EndDeviceSpec
    warnings: tuple[str, ...] = ()


_EXPECTED_TAGS = ("name", "price", "dlframework", "memory", "camera", "cpu")
_OPTIONAL_TAGS = ("gpu",)

_VALUE_UNIT_RE = re.compile(r"^([0-9]+(?:\.[0-9]+)?)\s*([A-Za-z]*)$")


def _tag_near(text: str, offset: int) -> Optional[str]:
    match = re.match(r"\s*</?\s*([A-Za-z_][\w.-]*)", text[offset:])
    if match:
        return match.group(1)
    # fall back to the innermost tag still open at end of input
    stack = []
    for m in re.finditer(r"<(/?)([A-Za-z_][\w.-]*)[^<>]*?(/?)>", text):
        closing, name, selfclosed = m.group(1), m.group(2), m.group(3)
        if selfclosed:
            continue
        if closing:
            if stack and stack[-1] == name:
                stack.pop()
        else:
            stack.append(name)
    return stack[-1] if stack else None


def _parse_memory_mb(text: str, warnings: list[str]) -> int:
    match = _VALUE_UNIT_RE.match(text)
    unit = match.group(2).lower() if match else None
    if match and unit in ("", "mb"):
        return int(round(float(match.group(1))))
    if match and unit == "gb":
        return int(round(float(match.group(1)) * 1024))
    warnings.append(f"Memory: unrecognized value {text!r}, default 0 used")
    return 0


def _parse_camera_mp(text: str, warnings: list[str]) -> float:
    match = _VALUE_UNIT_RE.match(text)
    if match and match.group(2).lower() in ("", "mp"):
        return float(match.group(1))
    warnings.append(f"Camera: unrecognized value {text!r}, default 0 used")
    return 0.0


def parse_device_xml(fragment: str) -> DeviceParseResult:
    """Parse an ``End_devices_Specs`` XML fragment into an EndDeviceSpec.

    Accepts the unit forms seen in real fragments ("8 GB" memory, "16 MP"
    camera). Missing expected tags fall back to empty/zero defaults and are
    reported in the warnings; unknown tags warn but never fail.
    """
    try:
        root = ET.fromstring(fragment)
    except ET.ParseError as err:
        line, column = getattr(err, "position", (0, 0))
        offset = 0
        for _ in range(line - 1):
            offset = fragment.find("\n", offset) + 1
        tag = _tag_near(fragment, offset + column)
        detail = f" (near tag {tag!r})" if tag else ""
        raise DeviceXmlError(
            f"malformed XML at line {line}, column {column}: {err.msg if hasattr(err, 'msg') else err}{detail}",
            line,
            column,
        ) from err
    if root.tag != "End_devices_Specs":
        raise DeviceXmlError(
            f"expected root element End_devices_Specs, found {root.tag!r}"
        )

    warnings: list[str] = []
    seen: dict[str, str] = {}
    for child in root:
        key = child.tag.lower()
        text = (child.text or "").strip()
        if key in _EXPECTED_TAGS or key in _OPTIONAL_TAGS:
            seen[key] = text
        else:
            warnings.append(f"unknown tag {child.tag!r} ignored")
    for tag in _EXPECTED_TAGS:
        if tag not in seen:
            warnings.append(f"missing tag {tag!r}, default used")

    price = money(0)
    if seen.get("price"):
        raw = seen["price"].lstrip("$").replace(",", "")
        try:
            price = money(raw)
        except ArithmeticError:
            warnings.append(f"price: unrecognized value {seen['price']!r}, default 0 used")
    memory_mb = _parse_memory_mb(seen["memory"], warnings) if seen.get("memory") else 0
    camera_mp = _parse_camera_mp(seen["camera"], warnings) if seen.get("camera") else 0.0

    device = EndDeviceSpec(
        name=seen.get("name", ""),
        cpu=seen.get("cpu", ""),
        gpu=seen.get("gpu", ""),
        memory_mb=memory_mb,
        camera_mp=camera_mp,
        dl_framework=seen.get("dlframework", ""),
        price=price,
    )
    return DeviceParseResult(device=device, warnings=tuple(warnings))
