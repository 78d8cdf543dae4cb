# Copyright 2026 The Falsesum Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Readers and writers for the JSON Lines files shared with the C++ pipeline.

Readers validate every line and raise ContractError listing all offending
line numbers (1-based) rather than stopping at the first.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

import jsonschema

MASK_PREFIX = "<span_"

_CODE = {"enum": ["intrinsic", "extrinsic"]}

SEQ2SEQ_SCHEMA = {
    "type": "object",
    "required": ["doc_id", "summary_index", "mode", "code", "input", "target", "mask_map"],
    "properties": {
        "doc_id": {"type": "string"},
        "summary_index": {"type": "integer", "minimum": 0},
        "mode": {"enum": ["train", "test"]},
        "code": _CODE,
        "input": {"type": "string", "pattern": "^Predicates: .*; Arguments: .*; Code: (intrinsic|extrinsic); Summary: "},
        "target": {"type": ["string", "null"]},
        "mask_map": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "integer", "minimum": 0}, {"type": "string"}],
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}

GENERATION_BATCH_SCHEMA = {
    "type": "object",
    "required": ["doc_id", "summary_index", "code", "input"],
    "properties": {
        "doc_id": {"type": "string"},
        "summary_index": {"type": "integer", "minimum": 0},
        "code": _CODE,
        "input": {"type": "string"},
    },
}

GENERATION_OUTPUT_SCHEMA = {
    "type": "object",
    "required": ["doc_id", "summary_index", "code", "generated"],
    "properties": {
        "doc_id": {"type": "string"},
        "summary_index": {"type": "integer", "minimum": 0},
        "code": _CODE,
        "generated": {"type": "string"},
    },
}

NLI_LABELS = ("entailment", "non-entailment")

NLI_SCHEMA = {
    "type": "object",
    "required": ["premise", "hypothesis", "label"],
    "properties": {
        "pair_id": {"type": "string"},
        "premise": {"type": "string"},
        "hypothesis": {"type": "string"},
        "label": {"type": "string"},
        "provenance": {"enum": ["gold", "generated-intrinsic", "generated-extrinsic", "base"]},
    },
}

BENCHMARK_GOLD_SCHEMA = {
    "type": "object",
    "required": ["example_id", "gold", "premise", "hypothesis"],
    "properties": {
        "example_id": {"type": "string"},
        "gold": {"oneOf": [{"type": "boolean"}, {"enum": ["consistent", "inconsistent", "entailment", "non-entailment"]}]},
        "premise": {"type": "string"},
        "hypothesis": {"type": "string"},
    },
}


class ContractError(ValueError):
    """A file violates its contract. `lines` holds the offending line numbers."""

    def __init__(self, path: Path, problems: Sequence[Tuple[int, str]]):
        self.path = Path(path)
        self.lines = [line for line, _ in problems]
        shown = "; ".join(f"line {line}: {msg}" for line, msg in problems[:10])
        more = f" (+{len(problems) - 10} more)" if len(problems) > 10 else ""
        super().__init__(f"{self.path}: {shown}{more}")


def _read(path: Path, schema: dict, extra=None) -> List[dict]:
    validator = jsonschema.Draft202012Validator(schema)
    records, problems = [], []
    with open(path, encoding="utf-8") as f:
        for number, raw in enumerate(f, start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as e:
                problems.append((number, f"invalid JSON: {e.msg}"))
                continue
            error = jsonschema.exceptions.best_match(validator.iter_errors(record))
            if error is not None:
                where = "/".join(str(p) for p in error.absolute_path) or "record"
                problems.append((number, f"{where}: {error.message}"))
                continue
            message = extra(record) if extra else None
            if message:
                problems.append((number, message))
                continue
            records.append(record)
    if problems:
        raise ContractError(path, problems)
    return records


def _write(path: Path, records: Iterable[dict]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")
            n += 1
    return n


def read_seq2seq_train(path: Path) -> List[dict]:
    """Training file for the generator: train-mode records with a target."""

    def check(record):
        if record["mode"] != "train":
            return "expected a train-mode record"
        if not record["target"]:
            return "train record without target"
        return None

    return _read(path, SEQ2SEQ_SCHEMA, check)


def read_generation_batch(path: Path) -> List[dict]:
    return _read(path, GENERATION_BATCH_SCHEMA)


def generation_rejection(generated: str) -> Optional[str]:
    """Reason the pipeline would reject this text, or None."""
    if not generated.strip():
        return "empty"
    if MASK_PREFIX in generated:
        return "residual_mask"
    return None


def write_generation_output(path: Path, requests: Sequence[dict],
                            generated: Sequence[str]) -> Tuple[int, List[Tuple[int, str]]]:
    """Writes one output record per valid generation.

    Returns the number written and (request index, reason) for each dropped
    generation; callers retry those once before giving up.
    """
    if len(requests) != len(generated):
        raise ValueError("one generation per request expected")
    kept, dropped = [], []
    for i, (request, text) in enumerate(zip(requests, generated)):
        reason = generation_rejection(text)
        if reason:
            dropped.append((i, reason))
            continue
        kept.append({"doc_id": request["doc_id"],
                     "summary_index": request["summary_index"],
                     "code": request["code"],
                     "generated": text})
    return _write(path, kept), dropped


def read_nli_train(path: Path, labels: Sequence[str] = NLI_LABELS) -> List[dict]:
    """NLI training file; a label outside `labels` aborts with its line."""
    allowed: Set[str] = set(labels)

    def check(record):
        if record["label"] not in allowed:
            return f"label {record['label']!r} not in {sorted(allowed)}"
        return None

    return _read(path, NLI_SCHEMA, check)


def read_benchmark_gold(path: Path) -> List[dict]:
    seen: Set[str] = set()

    def check(record):
        if record["example_id"] in seen:
            return f"duplicate example_id {record['example_id']!r}"
        seen.add(record["example_id"])
        return None

    return _read(path, BENCHMARK_GOLD_SCHEMA, check)


Score = Union[float, Sequence[Sequence[float]]]


def _check_probability(value: float, example_id: str) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and 0.0 <= value <= 1.0):
        raise ValueError(f"score for {example_id!r} outside [0, 1]: {value!r}")


def write_predictions(path: Path, predictions: Iterable[Tuple[str, Score]]) -> int:
    """Classifier output for the evaluation harness.

    A float is a single consistency probability. A matrix is sentence-wise
    scores (summary sentences x document sentences), left unaggregated for
    the harness to reduce.
    """
    records = []
    for example_id, score in predictions:
        if isinstance(score, (int, float)):
            _check_probability(score, example_id)
            records.append({"example_id": example_id, "score": float(score)})
            continue
        rows = [list(map(float, row)) for row in score]
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError(f"score matrix for {example_id!r} is empty or ragged")
        for row in rows:
            for v in row:
                _check_probability(v, example_id)
        records.append({"example_id": example_id, "scores": rows})
    return _write(path, records)
