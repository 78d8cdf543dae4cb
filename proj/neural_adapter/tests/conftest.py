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

import os
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("FALSESUM_CLI")
    if not path or not Path(path).exists():
        pytest.skip("FALSESUM_CLI not set; build the falsesum tool first")
    return path


@pytest.fixture(scope="session")
def fixture_corpus():
    corpus = Path(os.environ.get(
        "FALSESUM_FIXTURE_CORPUS", ROOT.parent / "tests" / "data" / "corpus"))
    return corpus, corpus / "parses"
