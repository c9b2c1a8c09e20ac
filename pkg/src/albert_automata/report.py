"""Chain reports and their stable JSON form."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = ["Assertion", "ChainReport", "dumps_report"]


@dataclass
class Assertion:
    """One checked claim.

    ``kind`` is ``"max"`` (pass iff measured <= threshold) or ``"min"``
    (pass iff measured > threshold). ``passed is None`` marks a check that
    was skipped, e.g. on degenerate input.
    """

    name: str
    measured: float
    threshold: float
    kind: str = "max"
    passed: bool | None = None
    line: int | None = None

    @classmethod
    def check(cls, name, measured, threshold, kind="max", line=None) -> "Assertion":
        measured = float(measured)
        ok = measured <= threshold if kind == "max" else measured > threshold
        return cls(name, measured, float(threshold), kind, bool(ok), line)

    @classmethod
    def skipped(cls, name, measured, threshold, kind="max", line=None) -> "Assertion":
        return cls(name, float(measured), float(threshold), kind, None, line)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind,
            "measured": self.measured,
            "threshold": self.threshold,
            "pass": self.passed,
            "line": self.line,
        }


@dataclass
class ChainReport:
    """Outcome of a measurement chain.

    Everything in :meth:`to_dict` is reproducible from ``seed``, ``layout``
    and ``coefficients``. The live objects (final state, observables) are
    kept on ``artifacts`` for follow-up runs and are never serialized.
    """

    kind: str
    seed: int | None
    layout: str
    coefficients: list[complex] = field(default_factory=list)
    godel_numbers: list[int] = field(default_factory=list)
    accuracy: dict[str, float] = field(default_factory=dict)
    commutators: dict[str, float] = field(default_factory=dict)
    assertions: list[Assertion] = field(default_factory=list)
    norm_drift: float = 0.0
    degenerate: bool = False
    notes: list[str] = field(default_factory=list)
    steps: list[dict[str, Any]] = field(default_factory=list)
    artifacts: dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def passed(self) -> bool:
        return all(a.passed is not False for a in self.assertions)

    @property
    def status(self) -> str:
        if not self.passed:
            return "fail"
        return "degenerate" if self.degenerate else "pass"

    def assertion(self, name: str) -> Assertion:
        for a in self.assertions:
            if a.name == name:
                return a
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "status": self.status,
            "seed": self.seed,
            "layout": self.layout,
            "coefficients": [[c.real, c.imag] for c in map(complex, self.coefficients)],
            "godel_numbers": [int(n) for n in self.godel_numbers],
            "accuracy": dict(self.accuracy),
            "commutators": dict(self.commutators),
            "norm_drift": self.norm_drift,
            "degenerate": self.degenerate,
            "assertions": [a.to_dict() for a in self.assertions],
            "steps": list(self.steps),
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        out = [f"{self.kind} chain [{self.status}]  layout {self.layout}  seed {self.seed}"]
        for k, v in self.accuracy.items():
            out.append(f"  {k:<28s} {v:.3e}")
        for k, v in self.commutators.items():
            out.append(f"  {k:<28s} {v:.6g}")
        out.append(f"  {'norm drift':<28s} {self.norm_drift:.3e}")
        for a in self.assertions:
            verdict = {True: "PASS", False: "FAIL", None: "SKIP"}[a.passed]
            op = "<=" if a.kind == "max" else ">"
            out.append(f"  {verdict} {a.name}: {a.measured:.3e} {op} {a.threshold:g}")
        for n in self.notes:
            out.append(f"  note: {n}")
        return "\n".join(out)


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite float {x!r}")
        return format(x, ".16e")
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_report(doc, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(doc, indent, 0) + "\n"
