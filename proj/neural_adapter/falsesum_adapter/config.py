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

"""Training configs with the published defaults.

Warmup, weight decay and the schedule were never specified; they stay None
here, meaning "training library default", and are written out as such so a
saved config says what was actually left open.
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path
from typing import List, Optional


@dataclasses.dataclass
class DecodeConfig:
    num_beams: int = 2
    min_length: int = 10
    max_length: int = 60
    repetition_penalty: float = 2.5
    length_penalty: float = 1.0


@dataclasses.dataclass
class GeneratorTrainingConfig:
    model: str = "t5-base"
    epochs: int = 3
    batch_size: int = 24
    optimizer: str = "adamw"
    learning_rate: float = 3e-5
    max_source_tokens: int = 256
    max_target_tokens: int = 42
    seed: int = 11
    warmup_steps: Optional[int] = None
    weight_decay: Optional[float] = None
    decode: DecodeConfig = dataclasses.field(default_factory=DecodeConfig)

    def to_json(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "GeneratorTrainingConfig":
        data = dict(data)
        decode = DecodeConfig(**data.pop("decode", {}))
        return cls(decode=decode, **data)


@dataclasses.dataclass
class ClassifierTrainingConfig:
    model: str = "roberta-base"
    epochs: int = 3
    batch_size: int = 32
    learning_rate: float = 1e-5
    # 128 or 512 depending on the evaluation set.
    max_input_tokens: int = 128
    seeds: List[int] = dataclasses.field(default_factory=lambda: [11, 12, 13, 14, 15])
    warmup_steps: Optional[int] = None
    weight_decay: Optional[float] = None

    def to_json(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "ClassifierTrainingConfig":
        return cls(**data)


def save_config(config, path: Path) -> None:
    Path(path).write_text(json.dumps(config.to_json(), indent=2, sort_keys=True) + "\n")


def load_config(cls, path: Path):
    return cls.from_json(json.loads(Path(path).read_text()))
