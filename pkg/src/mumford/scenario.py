"""Scenario files: JSON descriptions of (g, W, T, sigma, N, cover).

See ``docs/scenarios.md`` for the grammar; ``SCHEMA`` is enforced on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import jsonschema

from .abelian import FinAbGroup
from .cohomology import Cochain, h2
from .extension import Extension, build_extension, extension_for_class, split_extension
from .group import FiniteGroup, GAction, cyclic, dihedral, from_permutations, klein, symmetric
from .surface import DEFAULT_BUDGET, SurfaceRep, surjective_classes


class ScenarioError(ValueError):
    pass


_GROUP = {
    "type": "object",
    "properties": {
        "group": {"enum": ["trivial", "cyclic", "symmetric", "dihedral", "klein", "permutations"]},
        "n": {"type": "integer", "minimum": 1},
        "generators": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    },
    "required": ["group"],
    "additionalProperties": False,
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "genus": {"type": "integer", "minimum": 0},
        "W": _GROUP,
        "G": _GROUP,
        "T": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "sigma": {
            "oneOf": [
                {"enum": ["trivial", "sign", "permutation", "even_permutation"]},
                {
                    "type": "object",
                    "properties": {"matrices": {"type": "array"}},
                    "required": ["matrices"],
                    "additionalProperties": False,
                },
            ]
        },
        "N": {
            "oneOf": [
                {"const": "split"},
                {
                    "type": "object",
                    "properties": {
                        "class": {"type": "array", "items": {"type": "integer"}},
                        "factor_set": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                    },
                    "minProperties": 1,
                    "maxProperties": 1,
                    "additionalProperties": False,
                },
            ]
        },
        "cover": {
            "type": "object",
            "properties": {
                "index": {"type": "integer", "minimum": 0},
                "images": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            },
            "minProperties": 1,
            "maxProperties": 1,
            "additionalProperties": False,
        },
        "n": {"type": "integer", "minimum": 1},
        "family": {"enum": ["B_or_C", "D"]},
        "budget": {"type": "integer", "minimum": 1},
        "criteria": {"type": "array", "items": {"enum": [str(i) for i in range(1, 11)]}},
    },
    "additionalProperties": False,
}


def parse_group(spec: dict) -> FiniteGroup:
    kind = spec["group"]
    n = spec.get("n")
    if kind in ("cyclic", "symmetric", "dihedral") and n is None:
        raise ScenarioError(f"group {kind!r} needs 'n'")
    if kind == "trivial":
        return cyclic(1)
    if kind == "cyclic":
        return cyclic(n)
    if kind == "symmetric":
        return symmetric(n)
    if kind == "dihedral":
        return dihedral(n)
    if kind == "klein":
        return klein()
    gens = [tuple(p) for p in spec.get("generators", [])]
    if not gens:
        raise ScenarioError("permutation group needs 'generators'")
    degree = len(gens[0])
    if any(sorted(p) != list(range(degree)) for p in gens):
        raise ScenarioError("generators must be permutations of 0..d-1 of one degree")
    return from_permutations(gens)


def parse_action(spec, W: FiniteGroup, T: FinAbGroup) -> GAction:
    if isinstance(spec, dict):
        return GAction(W, T, [[tuple(col) for col in m] for m in spec["matrices"]])
    if spec == "trivial":
        return GAction.trivial(W, T)
    if spec == "sign":
        return GAction.inversion(W, T)
    degree = len(W.label(W.identity))
    if spec == "permutation":
        sigma = GAction.permutation(W, degree)
    else:
        sigma = GAction.even_permutation(W, degree)
    if sigma.target != T:
        raise ScenarioError(f"action {spec!r} needs T = {list(sigma.target.cyclic_orders)}")
    return sigma


@dataclass
class Scenario:
    data: dict
    budget_override: int | None = None

    @classmethod
    def load(cls, path: str | None, budget: int | None = None) -> "Scenario":
        if path is None:
            return cls({}, budget)
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario: {exc}") from None
        if not text.strip():
            raise ScenarioError("scenario file is empty")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"scenario is not valid JSON: {exc}") from None
        return cls.from_dict(data, budget)

    @classmethod
    def from_dict(cls, data, budget: int | None = None) -> "Scenario":
        try:
            jsonschema.validate(data, SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise ScenarioError(f"scenario invalid at {where}: {exc.message}") from None
        return cls(data, budget)

    def require(self, *keys) -> None:
        missing = [k for k in keys if k not in self.data]
        if missing:
            raise ScenarioError(f"scenario is missing {', '.join(missing)}")

    @property
    def genus(self) -> int:
        return self.data.get("genus", 1)

    @property
    def budget(self) -> int:
        if self.budget_override is not None:
            return self.budget_override
        return self.data.get("budget", DEFAULT_BUDGET)

    @cached_property
    def W(self) -> FiniteGroup:
        self.require("W")
        return parse_group(self.data["W"])

    @cached_property
    def G(self) -> FiniteGroup:
        return parse_group(self.data["G"]) if "G" in self.data else self.W

    @cached_property
    def T(self) -> FinAbGroup:
        return FinAbGroup(tuple(self.data.get("T", [2])))

    @cached_property
    def sigma(self) -> GAction:
        try:
            return parse_action(self.data.get("sigma", "trivial"), self.W, self.T)
        except (ValueError, IndexError, TypeError) as exc:
            raise ScenarioError(f"bad action: {exc}") from None

    @cached_property
    def extension(self) -> Extension:
        spec = self.data.get("N", "split")
        W, T, s = self.W, self.T, self.sigma
        try:
            if spec == "split":
                return split_extension(T, W, s, name="split")
            if "class" in spec:
                H = h2(W, T, s)
                coords = tuple(spec["class"])
                if len(coords) != len(H.orders):
                    raise ScenarioError(f"class needs {len(H.orders)} coordinates")
                return extension_for_class(s, coords, name=f"class{list(coords)}")
            table = tuple(T.reduce(v) for v in spec["factor_set"])
            if len(table) != W.order ** 2:
                raise ScenarioError("factor set needs |W|^2 entries")
            return build_extension(T, W, s, Cochain(2, table), name="factor_set")
        except ScenarioError:
            raise
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None

    def cover_rep(self, W: FiniteGroup | None = None) -> SurfaceRep:
        W = self.W if W is None else W
        spec = self.data.get("cover", {"index": 0})
        if "images" in spec:
            images = tuple(spec["images"])
            if len(images) != 2 * self.genus or any(x >= W.order for x in images):
                raise ScenarioError("cover images must be 2g elements of W")
            rho = SurfaceRep(W, images)
            if not rho.is_valid():
                raise ScenarioError("cover images violate the surface relation")
            if not rho.is_surjective():
                raise ScenarioError("cover images must generate W")
            return rho
        reps = surjective_classes(self.genus, W, budget=self.budget)
        if spec["index"] >= len(reps):
            raise ScenarioError(f"cover index {spec['index']} out of range ({len(reps)} surjections)")
        return reps[spec["index"]]
