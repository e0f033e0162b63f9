"""Verdict objects returned by every checker, and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not_applicable"
FINDING = "finding"


def to_jsonable(x):
    """Recursively convert Fractions, numpy scalars and tuples for ``json``."""
    if isinstance(x, Fraction):
        return {"numerator": x.numerator, "denominator": x.denominator}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


@dataclass
class Verdict:
    statement: str
    spec: str
    parameters: dict = field(default_factory=dict)
    verdict: str = HOLDS
    witness_or_counterexample: object = None
    exact_quantities: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict != VIOLATED

    def to_dict(self) -> dict:
        return to_jsonable(
            {
                "statement": self.statement,
                "spec": self.spec,
                "parameters": self.parameters,
                "verdict": self.verdict,
                "witness_or_counterexample": self.witness_or_counterexample,
                "exact_quantities": self.exact_quantities,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
