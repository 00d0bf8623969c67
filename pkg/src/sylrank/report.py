"""Verification reports and the canonical JSON encoding.

Reports are plain data: one entry per clause/property/instance with the
number of samples exercised and the first counterexample if any, serialized
deterministically (sorted keys, compact separators, exact fraction strings).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .matrices import Matrix, matrix_to_text
from .values import fmt_value

SCHEMA = "sylrank/1"

PASS = "pass"
FAIL = "fail"
SKIP = "skipped"


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def encode_witness_value(v) -> str | bool | int:
    if isinstance(v, Matrix):
        return matrix_to_text(v)
    if isinstance(v, bool) or isinstance(v, int):
        return v
    if isinstance(v, str):
        return v
    return fmt_value(v)


@dataclass
class ClauseResult:
    clause: str
    samples: int
    status: str
    witness: dict | None = None

    def to_doc(self) -> dict:
        doc = {"clause": self.clause, "samples": self.samples, "status": self.status}
        if self.witness is not None:
            doc["witness"] = {k: encode_witness_value(v) for k, v in self.witness.items()}
        return doc


@dataclass
class VerificationReport:
    kind: str
    label: str
    seed: int
    clauses: list[ClauseResult] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.clauses)

    def clause(self, name: str) -> ClauseResult:
        for c in self.clauses:
            if c.clause == name:
                return c
        raise KeyError(name)

    def to_doc(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": self.kind,
            "label": self.label,
            "seed": self.seed,
            "clauses": [c.to_doc() for c in self.clauses],
            "ok": self.passed,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_doc())


class ClauseRun:
    """Accumulates samples for one clause; records the first counterexample."""

    def __init__(self, name: str):
        self.name = name
        self.samples = 0
        self.witness = None

    def record(self, ok: bool, witness_factory) -> bool:
        self.samples += 1
        if not ok and self.witness is None:
            self.witness = witness_factory()
        return ok

    def result(self) -> ClauseResult:
        status = PASS if self.witness is None else FAIL
        return ClauseResult(self.name, self.samples, status, self.witness)


def skipped(name: str, reason: str) -> ClauseResult:
    return ClauseResult(name, 0, SKIP, {"reason": reason})
