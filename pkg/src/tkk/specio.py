"""Spec-file ingestion and emission.

Two file schemas, both JSON objects with scalars carried as exact "p/q"
strings:

* algebra: {name, kind, basis, unit?, products: [{i, j, terms: [{k, c}]}]}
* triple system: {name, basis, gamma: [{u, v, w, terms: [{t, c}]}]}

A builder object {construct: ..., ...} expands to a concrete table; the
named builtin bases used throughout the test corpus are builder specs.
"""

from __future__ import annotations

import functools
import json
from fractions import Fraction
from pathlib import Path

from .errors import SpecFileError, ValidationError
from .algebra import (
    Algebra, StructureTable, direct_sum, grassmann_algebra, make_algebra,
    matrix_algebra, plus_algebra, scalar_algebra, special_linear,
    truncated_free,
)
from .jordan import TripleSystem, make_triple_system
from .linalg import BasedSpace

BUILTIN_BASES = {
    "scalar": {"construct": "scalar"},
    "dual": {"construct": "truncated_free", "generators": ["x"], "max_degree": 1},
    "double": {"construct": "direct_sum", "left": {"construct": "scalar"},
               "right": {"construct": "scalar"}},
    "grassmann2": {"construct": "grassmann", "generators": 2},
    "mat2": {"construct": "matrix", "n": 2, "base": {"construct": "scalar"}},
    "free2d2": {"construct": "truncated_free", "generators": ["x", "y"],
                "max_degree": 2},
    "free2d3": {"construct": "truncated_free", "generators": ["x", "y"],
                "max_degree": 3},
}


def parse_scalar(text, where: str) -> Fraction:
    try:
        value = Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecFileError(f"bad scalar {text!r} at {where}: {exc}") from exc
    return value


def scalar_str(c: Fraction) -> str:
    return str(Fraction(c))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_from_spec(obj) -> Algebra:
    """Expand a builder object (or builtin name) to a concrete algebra."""
    if isinstance(obj, str):
        if obj not in BUILTIN_BASES:
            raise SpecFileError(f"unknown builtin base {obj!r}; "
                                f"known: {sorted(BUILTIN_BASES)}")
        return build_from_spec(BUILTIN_BASES[obj])
    kind = obj.get("construct")
    try:
        if kind == "scalar":
            return scalar_algebra()
        if kind == "matrix":
            return matrix_algebra(build_from_spec(obj["base"]), int(obj["n"]))
        if kind == "sl":
            return special_linear(build_from_spec(obj["base"]), int(obj["n"]))
        if kind == "plus":
            return plus_algebra(build_from_spec(obj["base"]))
        if kind == "grassmann":
            return grassmann_algebra(int(obj["generators"]))
        if kind == "direct_sum":
            return direct_sum(build_from_spec(obj["left"]),
                              build_from_spec(obj["right"]))
        if kind == "truncated_free":
            relations = []
            for ridx, rel in enumerate(obj.get("relations") or ()):
                terms = []
                for tidx, term in enumerate(rel):
                    c = parse_scalar(term.get("c", "1"),
                                     f"relations[{ridx}][{tidx}].c")
                    terms.append((tuple(term.get("word", ())), c))
                relations.append(terms)
            return truncated_free(tuple(obj["generators"]), int(obj["max_degree"]),
                                  relations or None)
    except (KeyError, TypeError) as exc:
        raise SpecFileError(f"malformed builder {kind!r}: {exc}") from exc
    raise SpecFileError(f"unknown construct {kind!r}")


@functools.lru_cache(maxsize=None)
def builtin_base(name: str) -> Algebra:
    """Builtin bases, cached; treat the result as read-only."""
    return build_from_spec(name)


# ---------------------------------------------------------------------------
# concrete tables
# ---------------------------------------------------------------------------

def algebra_from_spec(obj) -> Algebra:
    try:
        labels = tuple(obj["basis"])
        kind = obj.get("kind", "untagged")
        space = BasedSpace.make(labels)
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFileError(f"malformed algebra spec: {exc}") from exc
    entries: dict = {}
    for pidx, prod in enumerate(obj.get("products", ())):
        try:
            i, j = int(prod["i"]), int(prod["j"])
            terms = {int(t["k"]): parse_scalar(t["c"], f"products[{pidx}]")
                     for t in prod["terms"]}
        except (KeyError, TypeError) as exc:
            raise SpecFileError(f"malformed product entry {pidx}: {exc}") from exc
        entries[(i, j)] = terms
    unit = None
    if obj.get("unit") is not None:
        coeffs = [parse_scalar(c, "unit") for c in obj["unit"]]
        if len(coeffs) != space.dim:
            raise SpecFileError("unit length does not match basis")
        unit = {i: c for i, c in enumerate(coeffs) if c}
    try:
        table = StructureTable(entries)
        table.validate_indices(space.dim)
        return make_algebra(space, table, kind, unit if unit is not None else "auto")
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise SpecFileError(str(exc)) from exc


def algebra_to_spec(a: Algebra, name: str) -> dict:
    products = []
    for (i, j) in sorted(a.table.entries):
        terms = [{"k": k, "c": scalar_str(c)}
                 for k, c in sorted(a.table.entries[(i, j)].items())]
        products.append({"i": i, "j": j, "terms": terms})
    out = {
        "name": name,
        "kind": a.kind,
        "basis": list(a.space.labels),
        "products": products,
    }
    if a.unit is not None:
        out["unit"] = [scalar_str(a.unit.get(i, 0)) for i in range(a.dim)]
    return out


def triple_from_spec(obj) -> TripleSystem:
    try:
        space = BasedSpace.make(tuple(obj["basis"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFileError(f"malformed triple spec: {exc}") from exc
    gamma: dict = {}
    for gidx, ent in enumerate(obj.get("gamma", ())):
        try:
            key = (int(ent["u"]), int(ent["v"]), int(ent["w"]))
            terms = {int(t["t"]): parse_scalar(t["c"], f"gamma[{gidx}]")
                     for t in ent["terms"]}
        except (KeyError, TypeError) as exc:
            raise SpecFileError(f"malformed gamma entry {gidx}: {exc}") from exc
        gamma[key] = terms
    try:
        return make_triple_system(space, gamma)
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise SpecFileError(str(exc)) from exc


def triple_to_spec(t: TripleSystem, name: str) -> dict:
    gamma = []
    for (u, v, w) in sorted(t.gamma):
        terms = [{"t": k, "c": scalar_str(c)}
                 for k, c in sorted(t.gamma[(u, v, w)].items())]
        gamma.append({"u": u, "v": v, "w": w, "terms": terms})
    return {"name": name, "basis": list(t.space.labels), "gamma": gamma}


# ---------------------------------------------------------------------------
# file-level entry points
# ---------------------------------------------------------------------------

def parse_spec(path):
    """Load an algebra or triple system from a spec file.

    Dispatch: builder objects carry "construct", triple systems carry
    "gamma", concrete algebras carry "products".
    """
    p = Path(path)
    try:
        obj = json.loads(p.read_text())
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{path} is not valid JSON: line {exc.lineno}, "
                            f"{exc.msg}") from exc
    if not isinstance(obj, dict):
        raise SpecFileError(f"{path}: top level must be an object")
    if "construct" in obj:
        return build_from_spec(obj)
    if "gamma" in obj:
        return triple_from_spec(obj)
    if "products" in obj:
        return algebra_from_spec(obj)
    raise SpecFileError(f"{path}: expected construct, gamma, or products")


def load_base(name_or_path: str) -> Algebra:
    """Resolve a --base argument: builtin name or spec-file path."""
    if name_or_path in BUILTIN_BASES:
        return builtin_base(name_or_path)
    obj = parse_spec(name_or_path)
    if not isinstance(obj, Algebra):
        raise SpecFileError(f"{name_or_path} is a triple system, not an algebra")
    return obj


def dump_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
