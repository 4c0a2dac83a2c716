"""Definition files: JSON documents describing algebras, bimodules and tasks.

Layout (all matrices are integer lists, residues mod ``mod_p``)::

    {
      "schema_version": 1,
      "mod_p": 7,
      "warnings": [],
      "algebras":  {"R": {"preset": "path", "n": 3, "h": 2}},
      "bimodules": {"M": {"algebra": "R", "recipe": {"left": 1, "right": 3}}},
      "tensor_ring": {"base": "R", "bimodule": "M"},
      "morita": null,
      "modules": {"S1": {"over": "R", "simple": 1}},
      "pairs": {"p": {"base": "S1", "u": [[...]]}},
      "tasks": ["condition-t", "pgf S1", "verify theorem-a"]
    }

Algebras are ``{"preset": "path", "n", "h"}``, ``{"preset": "field"}`` or
``{"mult", "unit", "labels"?}``.  Bimodules are an idempotent recipe
R e_i (x)_k e_j R, a simple recipe (k with e_i acting on the left and e_j
on the right), explicit action arrays, or ``{"zero": algebra}``.  A module
lives over an algebra name, over "T" (the tensor ring) or over "Lambda"
(the Morita context ring).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import List

import numpy as np

from .algebra import (
    FinDimAlgebra,
    MoritaData,
    QuiverPreset,
    ground_field,
    path_algebra,
)
from .exactlin import FieldSpec
from .homological import projective_summand, simple_module
from .modules import (
    FdBimodule,
    FdModule,
    LEFT,
    RIGHT,
    k_dual,
    zero_bimodule,
)
from .tensor_ring import DEFAULT_NIL_BOUND, TensorRing, idempotent_bimodule, tensor_ring

SCHEMA_VERSION = 1
TASK_NAMES = ("condition-t", "pgf", "gf", "gp", "phi", "verify")
VERIFY_NAMES = ("theorem-a", "theorem-b", "lemma-1.6", "cor-1.7", "section-4")
TENSOR_TASKS = ("condition-t", "phi", "verify")


class DefinitionError(ValueError):
    """Schema violation; ``path`` names the offending field."""

    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


# ----------------------------------------------------------------------------
# presets


def simple_bimodule(r: FinDimAlgebra, i: int, j: int) -> FdBimodule:
    """k with e_i acting on the left and e_j on the right (1-based)."""
    left = simple_module(r, i - 1, LEFT)
    right = simple_module(r, j - 1, RIGHT)
    return FdBimodule(r, r, left.action, right.action, f"S{i}|S{j}")


def preset_nakayama(n: int = 3, h: int = 2, i: int = 1, j: int = 3, p: int = 7) -> dict:
    QuiverPreset(n, h, FieldSpec(p))  # validates n, h, p
    for name, v in (("i", i), ("j", j)):
        if not 1 <= v <= n:
            raise DefinitionError(name, f"vertex {v} outside 1..{n}")
    warnings = []
    if j - i < h:
        warnings.append(f"j - i = {j - i} < h = {h}: M (x)_R M = 0 is not guaranteed; "
                        "tensor-ring tasks are refused")
    tasks = ["condition-t", "verify theorem-a", "verify theorem-b", "verify lemma-1.6",
             "verify cor-1.7"] + [f"pgf S{v}" for v in range(1, n + 1)]
    return {
        "schema_version": SCHEMA_VERSION,
        "mod_p": p,
        "warnings": warnings,
        "algebras": {"R": {"preset": "path", "n": n, "h": h}},
        "bimodules": {"M": {"algebra": "R", "recipe": {"left": i, "right": j}}},
        "tensor_ring": {"base": "R", "bimodule": "M"},
        "morita": None,
        "modules": {f"S{v}": {"over": "R", "simple": v} for v in range(1, n + 1)},
        "pairs": {},
        "tasks": tasks,
    }


def preset_triangular(p: int = 7) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "mod_p": p,
        "warnings": [],
        "algebras": {"k": {"preset": "field"}},
        "bimodules": {
            "U": {"left_algebra": "k", "right_algebra": "k",
                  "left_action": [[[1]]], "right_action": [[[1]]]},
            "V": {"zero": "k"},
        },
        "tensor_ring": None,
        "morita": {"A": "k", "B": "k", "U": "U", "V": "V"},
        "modules": {"S1": {"over": "Lambda", "simple": 1},
                    "S2": {"over": "Lambda", "simple": 2},
                    "P1": {"over": "Lambda", "projective": 1}},
        "pairs": {},
        "tasks": ["pgf S1", "gp S1", "gf S1", "pgf P1", "verify section-4"],
    }


def preset_morita_zero(n: int = 3, h: int = 2, i: int = 1, j: int = 3, p: int = 7) -> dict:
    base = preset_nakayama(n, h, i, j, p)
    return {
        "schema_version": SCHEMA_VERSION,
        "mod_p": p,
        "warnings": base["warnings"],
        "algebras": base["algebras"],
        "bimodules": base["bimodules"],
        "tensor_ring": None,
        "morita": {"A": "R", "B": "R", "U": "M", "V": "M"},
        "modules": {"S1": {"over": "Lambda", "simple": 1}},
        "pairs": {},
        "tasks": ["verify section-4"],
    }


PRESETS = {"nakayama": preset_nakayama, "triangular": preset_triangular,
           "morita-zero": preset_morita_zero}


# ----------------------------------------------------------------------------
# parse / render


def render(defn: dict) -> str:
    """Canonical text of a definition (stable key order)."""
    return json.dumps(defn, indent=1, sort_keys=True) + "\n"


def parse(text: str) -> dict:
    try:
        defn = json.loads(text)
    except json.JSONDecodeError as e:
        raise DefinitionError(f"line {e.lineno}", e.msg) from None
    validate(defn)
    return defn


def _req(d: dict, key: str, path: str):
    if not isinstance(d, dict) or key not in d:
        raise DefinitionError(path, f"missing field {key!r}")
    return d[key]


def validate(defn: dict):
    """Structural checks that need no algebra; semantic ones happen in build."""
    if not isinstance(defn, dict):
        raise DefinitionError("$", "definition must be an object")
    v = _req(defn, "schema_version", "$")
    if v != SCHEMA_VERSION:
        raise DefinitionError("schema_version", f"unsupported version {v}")
    p = _req(defn, "mod_p", "$")
    if not isinstance(p, int):
        raise DefinitionError("mod_p", "must be an integer")
    FieldSpec(p)
    algs = defn.get("algebras") or {}
    bims = defn.get("bimodules") or {}
    for name, spec in algs.items():
        if not isinstance(spec, dict):
            raise DefinitionError(f"algebras.{name}", "must be an object")
        if "preset" in spec:
            if spec["preset"] not in ("path", "field"):
                raise DefinitionError(f"algebras.{name}.preset", f"unknown preset {spec['preset']!r}")
        else:
            _req(spec, "mult", f"algebras.{name}")
            _req(spec, "unit", f"algebras.{name}")
    for name, spec in bims.items():
        path = f"bimodules.{name}"
        refs = [spec.get(k) for k in ("algebra", "left_algebra", "right_algebra", "zero")
                if spec.get(k) is not None]
        if not refs:
            raise DefinitionError(path, "no algebra given")
        for r in refs:
            if r not in algs:
                raise DefinitionError(path, f"unknown algebra {r!r}")
    tr = defn.get("tensor_ring")
    if tr:
        if _req(tr, "base", "tensor_ring") not in algs:
            raise DefinitionError("tensor_ring.base", f"unknown algebra {tr['base']!r}")
        if _req(tr, "bimodule", "tensor_ring") not in bims:
            raise DefinitionError("tensor_ring.bimodule", f"unknown bimodule {tr['bimodule']!r}")
    mo = defn.get("morita")
    if mo:
        for k in ("A", "B"):
            if _req(mo, k, "morita") not in algs:
                raise DefinitionError(f"morita.{k}", f"unknown algebra {mo[k]!r}")
        for k in ("U", "V"):
            if _req(mo, k, "morita") not in bims:
                raise DefinitionError(f"morita.{k}", f"unknown bimodule {mo[k]!r}")
    mods = defn.get("modules") or {}
    for name, spec in mods.items():
        over = _req(spec, "over", f"modules.{name}")
        if over not in algs and over not in ("T", "Lambda"):
            raise DefinitionError(f"modules.{name}.over", f"unknown algebra {over!r}")
        if over == "T" and not tr:
            raise DefinitionError(f"modules.{name}.over", "no tensor_ring declared")
        if over == "Lambda" and not mo:
            raise DefinitionError(f"modules.{name}.over", "no morita data declared")
        if sum(k in spec for k in ("simple", "projective", "injective", "action")) != 1:
            raise DefinitionError(f"modules.{name}",
                                  "exactly one of simple/projective/injective/action")
    for name, spec in (defn.get("pairs") or {}).items():
        b = _req(spec, "base", f"pairs.{name}")
        if b not in mods:
            raise DefinitionError(f"pairs.{name}.base", f"unknown module {b!r}")
    for k, t in enumerate(defn.get("tasks") or []):
        words = str(t).split()
        if not words or words[0] not in TASK_NAMES:
            raise DefinitionError(f"tasks[{k}]", f"unknown task {t!r}")
        if words[0] in ("pgf", "gf", "gp") and (len(words) != 2 or words[1] not in mods):
            raise DefinitionError(f"tasks[{k}]", f"{words[0]} needs a declared module")
        if words[0] == "phi" and (len(words) != 2 or words[1] not in (defn.get("pairs") or {})):
            raise DefinitionError(f"tasks[{k}]", "phi needs a declared pair")
        if words[0] == "verify" and (len(words) != 2 or words[1] not in VERIFY_NAMES):
            raise DefinitionError(f"tasks[{k}]", f"verify needs one of {', '.join(VERIFY_NAMES)}")


# ----------------------------------------------------------------------------
# building objects


def _arr(x, path: str, ndim: int) -> np.ndarray:
    a = np.asarray(x, dtype=np.int64)
    if a.ndim != ndim and a.size:
        raise DefinitionError(path, f"expected a {ndim}-dimensional integer array")
    return a


@dataclass(eq=False)
class Workspace:
    defn: dict
    nil_bound: int = DEFAULT_NIL_BOUND
    _cache: dict = dc_field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.defn["mod_p"]

    @property
    def field(self) -> FieldSpec:
        return FieldSpec(self.p)

    @property
    def warnings(self) -> List[str]:
        return list(self.defn.get("warnings") or [])

    def algebra(self, name: str) -> FinDimAlgebra:
        key = ("alg", name)
        if key in self._cache:
            return self._cache[key]
        spec = self.defn["algebras"][name]
        path = f"algebras.{name}"
        if spec.get("preset") == "path":
            a = path_algebra(QuiverPreset(int(spec["n"]), int(spec["h"]), self.field)).algebra
        elif spec.get("preset") == "field":
            a = ground_field(self.field)
        else:
            mult = _arr(spec["mult"], f"{path}.mult", 3)
            unit = _arr(spec["unit"], f"{path}.unit", 1)
            d = unit.shape[0]
            if mult.shape != (d, d, d):
                raise DefinitionError(f"{path}.mult", f"shape {mult.shape}, expected {(d, d, d)}")
            labels = tuple(spec.get("labels") or [f"b{i}" for i in range(d)])
            a = FinDimAlgebra(mult, unit, self.field, labels, name)
            bad = a.associativity_defect()
            if bad is not None:
                raise DefinitionError(f"{path}.mult", f"not associative at basis triple {bad}")
            if a.unit_defect() is not None:
                raise DefinitionError(f"{path}.unit", "not a two-sided unit")
        self._cache[key] = a
        return a

    def bimodule(self, name: str) -> FdBimodule:
        key = ("bim", name)
        if key in self._cache:
            return self._cache[key]
        spec = self.defn["bimodules"][name]
        path = f"bimodules.{name}"
        if "zero" in spec:
            b = zero_bimodule(self.algebra(spec["zero"]))
        elif "recipe" in spec:
            r = self.algebra(spec["algebra"])
            rec = spec["recipe"]
            ids = r.primitive_idempotents
            i, j = int(rec["left"]), int(rec["right"])
            for v in (i, j):
                if not 1 <= v <= len(ids):
                    raise DefinitionError(f"{path}.recipe", f"idempotent {v} outside 1..{len(ids)}")
            b = idempotent_bimodule(r, ids[i - 1], ids[j - 1], f"Re{i}(x)e{j}R")
        elif "simple" in spec:
            r = self.algebra(spec["algebra"])
            b = simple_bimodule(r, int(spec["simple"]["left"]), int(spec["simple"]["right"]))
        else:
            la, ra = self.algebra(spec["left_algebra"]), self.algebra(spec["right_algebra"])
            b = FdBimodule(la, ra, _arr(spec["left_action"], f"{path}.left_action", 3),
                           _arr(spec["right_action"], f"{path}.right_action", 3), name)
        try:
            b.validate()
        except ValueError as e:
            raise DefinitionError(path, str(e)) from None
        self._cache[key] = b
        return b

    def tensor_ring(self) -> TensorRing:
        if "ring" not in self._cache:
            tr = self.defn.get("tensor_ring")
            if tr:
                ring = tensor_ring(self.algebra(tr["base"]), self.bimodule(tr["bimodule"]),
                                   self.nil_bound)
            elif self.defn.get("morita"):
                ring = self.morita().ring
            else:
                raise DefinitionError("tensor_ring", "no tensor ring declared")
            self._cache["ring"] = ring
        return self._cache["ring"]

    def morita_data(self) -> MoritaData:
        mo = self.defn.get("morita")
        if not mo:
            raise DefinitionError("morita", "no morita data declared")
        return MoritaData(self.algebra(mo["A"]), self.algebra(mo["B"]),
                          self.bimodule(mo["U"]), self.bimodule(mo["V"]))

    def morita(self):
        from .quadruples import morita_setup
        if "morita" not in self._cache:
            self._cache["morita"] = morita_setup(self.morita_data())
        return self._cache["morita"]

    def over(self, name: str) -> FinDimAlgebra:
        if name == "T":
            return self.tensor_ring().algebra
        if name == "Lambda":
            return self.morita().lam
        return self.algebra(name)

    def module(self, name: str) -> FdModule:
        key = ("mod", name)
        if key in self._cache:
            return self._cache[key]
        spec = self.defn["modules"][name]
        path = f"modules.{name}"
        a = self.over(spec["over"])
        side = spec.get("side", LEFT)
        if side not in (LEFT, RIGHT):
            raise DefinitionError(f"{path}.side", f"unknown side {side!r}")
        n_ids = len(a.primitive_idempotents)
        if "action" in spec:
            m = FdModule(a, side, _arr(spec["action"], f"{path}.action", 3))
            bad = m.action_defect()
            if bad:
                raise DefinitionError(f"{path}.action", bad)
        else:
            kind = "simple" if "simple" in spec else "projective" if "projective" in spec else "injective"
            idx = int(spec[kind])
            if not 1 <= idx <= n_ids:
                raise DefinitionError(f"{path}.{kind}", f"index {idx} outside 1..{n_ids}")
            if kind == "simple":
                m = simple_module(a, idx - 1, side)
            else:
                alg = a if (side == LEFT) == (kind == "projective") else a.opposite
                s = projective_summand(alg, alg.primitive_idempotents[idx - 1]).module
                m = s if kind == "projective" else k_dual(s)
                m = FdModule(a, side, m.action)
        self._cache[key] = m
        return m

    def pair(self, name: str):
        from .pairs import PairModule, functor_Ind, functor_S
        spec = self.defn["pairs"][name]
        ring = self.tensor_ring()
        x = self.module(spec["base"])
        if x.algebra is not ring.base:
            raise DefinitionError(f"pairs.{name}.base", "base module is not over the base algebra")
        if spec.get("ind"):
            return functor_Ind(ring, x)
        if "u" not in spec:
            return functor_S(ring, x)
        pr = PairModule(ring, x, _arr(spec["u"], f"pairs.{name}.u", 2))
        try:
            pr.validate()
        except ValueError as e:
            raise DefinitionError(f"pairs.{name}.u", str(e)) from None
        return pr


def load(path: str, nil_bound: int = DEFAULT_NIL_BOUND) -> Workspace:
    with open(path) as fh:
        return Workspace(parse(fh.read()), nil_bound)


__all__ = [
    "SCHEMA_VERSION",
    "TASK_NAMES",
    "VERIFY_NAMES",
    "DefinitionError",
    "Workspace",
    "PRESETS",
    "preset_nakayama",
    "preset_triangular",
    "preset_morita_zero",
    "simple_bimodule",
    "render",
    "parse",
    "validate",
    "load",
]
