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

"""Python side of the Falsesum file contracts.

Model training and decoding live outside this package; what is here is the
part every trainer shares with the C++ pipeline: default training configs and
validated readers/writers for the JSON Lines files exchanged with it.
"""

from falsesum_adapter.config import ClassifierTrainingConfig, GeneratorTrainingConfig
from falsesum_adapter.contracts import (
    ContractError,
    generation_rejection,
    read_benchmark_gold,
    read_generation_batch,
    read_nli_train,
    read_seq2seq_train,
    write_generation_output,
    write_predictions,
)

__all__ = [
    "ClassifierTrainingConfig",
    "ContractError",
    "GeneratorTrainingConfig",
    "generation_rejection",
    "read_benchmark_gold",
    "read_generation_batch",
    "read_nli_train",
    "read_seq2seq_train",
    "write_generation_output",
    "write_predictions",
]
