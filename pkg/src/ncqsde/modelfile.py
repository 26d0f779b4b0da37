"""JSON model files and result-object validation."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import DimensionMismatch, ParseError
from .ncpoly import NcPoly, Scalar, render_scalar
from .parser import parse_poly, parse_scalar
from .realize import QsdeModel, Realization


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    """Load a bundled schema: "model" or "result"."""
    text = resources.files("ncqsde").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


class ModelFileError(ParseError):
    pass


def validate(obj, name: str) -> None:
    try:
        jsonschema.validate(obj, schema(name))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ModelFileError(f"{name} schema violation at {where}: {exc.message}") from None


@dataclass(frozen=True)
class ModelFile:
    modes: int
    channels: int
    f: tuple
    g: tuple
    S: tuple | None = None
    C: tuple | None = None
    degree_cap: int | None = None

    @classmethod
    def from_json(cls, obj: dict) -> "ModelFile":
        validate(obj, "model")
        m, n = obj["modes"], obj["channels"]
        if len(obj["f"]) != 2 * m:
            raise ModelFileError(f"f has {len(obj['f'])} entries, expected {2 * m}")
        if len(obj["g"]) != 2 * m or any(len(r) != n for r in obj["g"]):
            raise ModelFileError(f"g must be a {2 * m}x{n} array")
        S = obj.get("S")
        if S is not None and (len(S) != n or any(len(r) != n for r in S)):
            raise ModelFileError(f"S must be a {n}x{n} array")
        C = obj.get("C")
        if C is not None and len(C) != n:
            raise ModelFileError(f"C must have {n} entries")
        return cls(m, n, tuple(obj["f"]), tuple(tuple(r) for r in obj["g"]),
                   None if S is None else tuple(tuple(r) for r in S),
                   None if C is None else tuple(C), obj.get("degree_cap"))

    @classmethod
    def load(cls, path) -> "ModelFile":
        try:
            obj = json.loads(Path(path).read_text("utf-8"))
        except json.JSONDecodeError as exc:
            raise ModelFileError(f"{path}: invalid JSON: {exc}") from None
        return cls.from_json(obj)

    def _poly(self, src: str, where: str) -> NcPoly:
        try:
            return parse_poly(src, self.modes, self.degree_cap)
        except ParseError as exc:
            raise type(exc)(f"{where}: {exc.detail}", exc.position) from None

    def _scalar(self, src: str, where: str) -> Scalar:
        try:
            return parse_scalar(src)
        except ParseError as exc:
            raise type(exc)(f"{where}: {exc.detail}", exc.position) from None

    def to_model(self) -> QsdeModel:
        f = tuple(self._poly(e, f"f[{i}]") for i, e in enumerate(self.f))
        g = tuple(tuple(self._poly(e, f"g[{i}][{k}]") for k, e in enumerate(row))
                  for i, row in enumerate(self.g))
        S = None
        if self.S is not None:
            S = tuple(tuple(self._scalar(e, f"S[{a}][{b}]") for b, e in enumerate(row))
                      for a, row in enumerate(self.S))
        try:
            return QsdeModel(self.modes, self.channels, f, g, S)
        except DimensionMismatch as exc:
            raise ModelFileError(str(exc)) from None

    def coupling_constants(self) -> tuple | None:
        if self.C is None:
            return None
        return tuple(self._scalar(e, f"C[{k}]") for k, e in enumerate(self.C))

    def to_json(self) -> dict:
        obj = {"modes": self.modes, "channels": self.channels, "degree_cap": self.degree_cap,
               "f": list(self.f), "g": [list(r) for r in self.g]}
        if self.S is not None:
            obj["S"] = [list(r) for r in self.S]
        if self.C is not None:
            obj["C"] = list(self.C)
        return obj


def from_model(model: QsdeModel, C=None) -> ModelFile:
    """Render a model back into text form; parsing the result gives the same model."""
    return ModelFile(model.modes, model.channels, tuple(str(e) for e in model.f),
                     tuple(tuple(str(e) for e in row) for row in model.g),
                     tuple(tuple(render_scalar(s) for s in row) for row in model.S),
                     None if C is None else tuple(render_scalar(Scalar.coerce(c)) for c in C))


def realization_json(r: Realization) -> dict:
    return {"H": str(r.H), "L": [str(l) for l in r.L],
            "S": [[render_scalar(s) for s in row] for row in r.S],
            "C_used": [render_scalar(c) for c in r.C_used]}
