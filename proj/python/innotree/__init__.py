# Copyright 2026 The innotree Authors.
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

"""Python access to the innotree engine.

Engine results are decoded from the same JSON bodies the HTTP service
serves, so a dict returned here equals the parsed HTTP response.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import _innotree
from ._innotree import Error

__all__ = ["ApiError", "Engine", "Error", "MinedRules", "explain", "forward_chain", "interpolate", "mine_csv"]


class ApiError(Exception):
    """Non-2xx response from an engine operation."""

    def __init__(self, status: int, body: dict):
        super().__init__(f"{status} {body.get('error', '')}: {body.get('detail', '')}")
        self.status = status
        self.body = body


def _decode(response, *, text: bool = False):
    status, content_type, body, _version = response
    if status >= 400:
        raise ApiError(status, json.loads(body))
    return body if text else json.loads(body)


class Engine:
    def __init__(self, config: str):
        self._engine = _innotree.Engine(str(config))

    @property
    def version(self) -> int:
        return self._engine.version

    def reload(self) -> int:
        return _decode(self._engine.reload())["version"]

    def validate(self) -> list[dict]:
        return json.loads(self._engine.validate())

    def health(self) -> dict:
        return _decode(self._engine.health())

    def model(self) -> dict:
        return _decode(self._engine.model())

    def whatif(self, selection: Iterable[str], param: Optional[float] = None) -> dict:
        body = json.dumps({"selection": list(selection), "param": param})
        return _decode(self._engine.whatif(body))

    def variants(self, limit: int, param: Optional[float] = None) -> dict:
        return _decode(self._engine.variants(str(limit), None if param is None else repr(float(param))))

    def static_report(self, report_id: str) -> str:
        return _decode(self._engine.static_report(report_id), text=True)

    def pivot_report(self, report_id: str) -> str:
        return _decode(self._engine.pivot_report(report_id), text=True)

    def trace(self, seed: Iterable[str], explain: Optional[str] = None) -> dict:
        body = json.dumps({"seed": list(seed), "explain": explain})
        return _decode(self._engine.trace(body))


def forward_chain(rules: list | str, seed: Iterable[str]) -> dict:
    text = rules if isinstance(rules, str) else json.dumps(rules)
    return json.loads(_innotree.forward_chain(text, list(seed)))


def explain(rules: list | str, seed: Iterable[str], fact: str) -> dict:
    text = rules if isinstance(rules, str) else json.dumps(rules)
    return json.loads(_innotree.explain(text, list(seed), fact))


@dataclass(frozen=True)
class MinedRules:
    rules: list
    correct: int
    rows: int
    depth: int
    leaves: int


def mine_csv(text: str, max_depth: Optional[int] = None, min_rows: int = 1) -> MinedRules:
    rules, correct, rows, depth, leaves = _innotree.mine_csv(text, max_depth, min_rows)
    return MinedRules(json.loads(rules), correct, rows, depth, leaves)


def interpolate(points: Sequence[tuple[float, float]], param: float) -> float:
    return _innotree.interpolate([(float(x), float(y)) for x, y in points], float(param))
