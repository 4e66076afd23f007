"""File formats: matrix/vector CSV and the JSON trace document.

Matrices are one row per line, vectors one value per line, both
comma-separated with no header. Floats are written with 17 significant
digits so a 64-bit value survives a write/read cycle unchanged.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .corner import Branch, CornerResult, CornerSearchConfig, IterationRecord
from .errors import MalformedInput
from .lcurve import LCurvePoint

SCHEMA_VERSION = "1"
FLOAT_FMT = "%.17g"


def _load(path) -> np.ndarray:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error")  # loadtxt only warns on empty input
            return np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    except (OSError, ValueError, UserWarning) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def read_matrix_csv(path) -> np.ndarray:
    a = _load(path)
    if a.size == 0:
        raise MalformedInput(f"{path} is empty")
    return a


def read_vector_csv(path) -> np.ndarray:
    a = _load(path)
    if a.size == 0:
        raise MalformedInput(f"{path} is empty")
    if a.shape[1] != 1:
        raise MalformedInput(f"{path}: expected one value per line, got {a.shape[1]} columns")
    return a[:, 0]


def write_matrix_csv(path, a) -> None:
    np.savetxt(path, np.atleast_2d(a), delimiter=",", fmt=FLOAT_FMT)


def write_vector_csv(path, v) -> None:
    np.savetxt(path, np.ravel(v), fmt=FLOAT_FMT)


def _point_to_dict(p: LCurvePoint) -> dict[str, float]:
    return {"lambda": p.lam, "xi": p.xi, "eta": p.eta}


def _point_from_dict(d) -> LCurvePoint:
    return LCurvePoint(float(d["lambda"]), float(d["xi"]), float(d["eta"]))


def _record_to_dict(r: IterationRecord) -> dict[str, Any]:
    return {
        "index": r.index,
        "lambdas": list(r.lambdas),
        "c2": r.c2,
        "c3": r.c3,
        "branch": None if r.branch is None else r.branch.value,
        "new_point": None if r.new_point is None else _point_to_dict(r.new_point),
    }


def _record_from_dict(d) -> IterationRecord:
    return IterationRecord(
        index=int(d["index"]),
        lambdas=tuple(float(v) for v in d["lambdas"]),
        c2=float(d["c2"]),
        c3=float(d["c3"]),
        branch=None if d["branch"] is None else Branch(d["branch"]),
        new_point=None if d["new_point"] is None else _point_from_dict(d["new_point"]),
    )


@dataclass
class TraceDocument:
    """Everything a corner search did, in a self-describing form."""

    config: CornerSearchConfig
    lambda_opt: float
    evaluations: int
    iterations: list[IterationRecord]
    points: list[LCurvePoint]
    at_boundary: bool = False
    schema_version: str = field(default=SCHEMA_VERSION)

    @classmethod
    def from_result(cls, result: CornerResult, config: CornerSearchConfig) -> "TraceDocument":
        return cls(
            config=config,
            lambda_opt=result.lambda_opt,
            evaluations=result.evaluations,
            iterations=list(result.trace),
            points=list(result.points),
            at_boundary=result.at_boundary,
        )

    def to_dict(self) -> dict[str, Any]:
        c = self.config
        return {
            "schema_version": self.schema_version,
            "config": {
                "lambda_lo": c.lambda_lo,
                "lambda_hi": c.lambda_hi,
                "epsilon": c.epsilon,
                "scale": c.scale.value,
                "max_iterations": c.max_iterations,
            },
            "lambda_opt": self.lambda_opt,
            "evaluations": self.evaluations,
            "at_boundary": self.at_boundary,
            "iterations": [_record_to_dict(r) for r in self.iterations],
            "points": [_point_to_dict(p) for p in self.points],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TraceDocument":
        try:
            version = str(d["schema_version"])
            if version != SCHEMA_VERSION:
                raise MalformedInput(f"unsupported trace schema_version {version!r}")
            return cls(
                config=CornerSearchConfig(**d["config"]),
                lambda_opt=float(d["lambda_opt"]),
                evaluations=int(d["evaluations"]),
                iterations=[_record_from_dict(r) for r in d["iterations"]],
                points=[_point_from_dict(p) for p in d["points"]],
                at_boundary=bool(d.get("at_boundary", False)),
                schema_version=version,
            )
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"malformed trace document: {exc!r}") from exc

    def dumps(self, indent: int | None = 2) -> str:
        # json writes floats with repr(), the shortest string that round-trips
        return json.dumps(self.to_dict(), indent=indent, allow_nan=False)

    @classmethod
    def loads(cls, text: str) -> "TraceDocument":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"trace is not valid JSON: {exc}") from exc
        return cls.from_dict(d)

    def save(self, path) -> None:
        Path(path).write_text(self.dumps() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "TraceDocument":
        return cls.loads(Path(path).read_text(encoding="utf-8"))
