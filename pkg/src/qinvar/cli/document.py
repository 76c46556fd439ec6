"""Workspace documents: JSON schema, validation, and round-trip printing."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import jsonschema

from ..algebras import (
    ExteriorAlgebra,
    QuantExteriorAlgebra,
    QuantumWeylAlgebra,
    QuotientAlgebra,
    SkewPolyAlgebra,
    TensorAlgebra,
    WeylAlgebra,
)
from ..automorphisms import Automorphism, filtered_decompose
from ..errors import DocumentError, InvalidRational, QinvarError, UnknownReference
from ..exactmath import format_rational, format_scalar, parse_rational, parse_scalar

SCHEMA_VERSION = "qinvar-workspace/1"

_RATIONAL = {"type": ["string", "integer"]}
_IMAGES = {
    "type": "object",
    "additionalProperties": {"type": "object", "additionalProperties": _RATIONAL},
}

TASK_OPS = ["trace", "hdet", "molien", "stanley", "verdict", "oracle",
            "weyl", "qweyl", "lie-det", "u-verdict"]

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "qinvar workspace",
    "type": "object",
    "required": ["schema"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "title": {"type": "string"},
        "parameters": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name"],
                "additionalProperties": False,
                "properties": {"name": {"type": "string", "pattern": "^[A-Za-z][A-Za-z0-9_]*$"},
                               "value": _RATIONAL},
            },
        },
        "algebras": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["kind"],
                "properties": {
                    "kind": {"enum": ["skew_poly", "exterior", "quant_exterior", "quotient",
                                      "tensor", "weyl", "qweyl"]},
                    "n": {"type": "integer", "minimum": 1},
                    "names": {"type": "array", "items": {"type": "string"}},
                    "degrees": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "p": {"type": "object", "additionalProperties": _RATIONAL},
                    "q": _RATIONAL,
                    "base": {"type": "string"},
                    "var": {"type": "string"},
                    "power": {"type": "integer", "minimum": 1},
                    "left": {"type": "string"},
                    "right": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "automorphisms": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["algebra", "images"],
                "additionalProperties": False,
                "properties": {"algebra": {"type": "string"}, "images": _IMAGES, "lambda": _RATIONAL},
            },
        },
        "groups": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["algebra", "generators"],
                "additionalProperties": False,
                "properties": {
                    "algebra": {"type": "string"},
                    "generators": {"type": "array", "items": {"type": "string"}},
                    "close": {"type": "boolean"},
                },
            },
        },
        "tasks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["op"],
                "properties": {
                    "op": {"enum": TASK_OPS},
                    "algebra": {"type": "string"},
                    "automorphism": {"type": "string"},
                    "group": {"type": "string"},
                    "series": {"type": "object", "required": ["num", "den"],
                               "properties": {"num": {"type": "array", "items": _RATIONAL},
                                              "den": {"type": "array", "items": _RATIONAL}}},
                    "max_degree": {"type": "integer", "minimum": 0},
                    "n": {"type": "integer", "minimum": 1},
                    "generators": {"type": "array"},
                    "close": {"type": "boolean"},
                    "type": {"enum": list("ABCDEFG")},
                    "rank": {"type": "integer", "minimum": 1},
                    "tau": {"oneOf": [{"type": "string"},
                                      {"type": "array", "items": {"type": "integer"}}]},
                    "expect": {"type": "object"},
                    "claims": {"type": "object"},
                    "note": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
    },
}


@dataclass
class WorkspaceDoc:
    """A validated workspace; equality is equality of the normalized document."""

    data: dict
    symbols: dict = field(default_factory=dict, compare=False)
    algebras: dict = field(default_factory=dict, compare=False)
    automorphisms: dict = field(default_factory=dict, compare=False)
    groups: dict = field(default_factory=dict, compare=False)

    @property
    def tasks(self) -> list:
        return self.data.get("tasks", [])


class _Collector:
    def __init__(self):
        self.errors: list[DocumentError] = []

    def add(self, err: DocumentError):
        self.errors.append(err)


def _rational(value, where: str) -> str:
    try:
        return format_rational(parse_rational(value))
    except InvalidRational as e:
        raise InvalidRational(f"{where}: {e}") from None


def _scalar(value, where: str, symbols: dict):
    formal = tuple(k for k, v in symbols.items() if v is None)
    numeric = {k: v for k, v in symbols.items() if v is not None}
    try:
        return parse_scalar(value, formal, numeric)
    except InvalidRational as e:
        raise InvalidRational(f"{where}: {e}") from None
    except KeyError as e:
        raise UnknownReference(f"undeclared parameter {e.args[0]!r}", where) from None


def _pair_table(spec: dict, names, where: str, symbols: dict, normalized: dict) -> dict:
    out = {}
    for key, value in spec.items():
        parts = [s.strip() for s in key.split(",")]
        if len(parts) != 2:
            raise DocumentError(f"pair key {key!r} must look like 'a,b'", f"{where}.{key}")
        idx = []
        for part in parts:
            if part in names:
                idx.append(names.index(part))
            elif part.isdigit() and 1 <= int(part) <= len(names):
                idx.append(int(part) - 1)
            else:
                raise UnknownReference(f"unknown generator {part!r}", f"{where}.{key}")
        i, j = idx
        if i == j:
            raise DocumentError("pair must name two different generators", f"{where}.{key}")
        v = _scalar(value, f"{where}.{key}", symbols)
        if i > j:
            from ..exactmath import invert

            i, j, v = j, i, invert(v)
        out[(i, j)] = v
        normalized[key] = format_scalar(_scalar(value, f"{where}.{key}", symbols)) if isinstance(value, str) else format_rational(value)
    return out


def _build_algebra(name: str, spec: dict, built: dict, symbols: dict, norm: dict):
    where = f"$.algebras.{name}"
    kind = spec["kind"]
    names = spec.get("names")
    n = spec.get("n", len(names) if names else None)
    if kind in ("skew_poly", "exterior", "quant_exterior", "weyl", "qweyl") and n is None:
        raise DocumentError("need 'n' or 'names'", where)
    if names is not None and len(names) != n:
        raise DocumentError("len(names) != n", where)
    if kind == "skew_poly":
        gen_names = names or [f"x{i + 1}" for i in range(n)]
        p = _pair_table(spec.get("p", {}), gen_names, f"{where}.p", symbols, norm.setdefault("p", {})) if "p" in spec else None
        degrees = spec.get("degrees")
        if degrees is not None and len(degrees) != n:
            raise DocumentError("len(degrees) != n", f"{where}.degrees")
        return SkewPolyAlgebra(n, degrees, p, names)
    if kind == "exterior":
        return ExteriorAlgebra(n, names)
    if kind == "quant_exterior":
        gen_names = names or [f"x{i + 1}" for i in range(n)]
        p = _pair_table(spec.get("p", {}), gen_names, f"{where}.p", symbols, norm.setdefault("p", {})) if "p" in spec else None
        return QuantExteriorAlgebra(n, p, names)
    if kind == "weyl":
        return WeylAlgebra(n)
    if kind == "qweyl":
        if "q" not in spec:
            raise DocumentError("quantum Weyl algebra needs 'q'", where)
        q = _scalar(spec["q"], f"{where}.q", symbols)
        norm["q"] = format_scalar(q)
        p = _pair_table(spec.get("p", {}), [str(i + 1) for i in range(n)], f"{where}.p", symbols,
                        norm.setdefault("p", {})) if "p" in spec else None
        return QuantumWeylAlgebra(n, q, p)
    if kind == "quotient":
        for key in ("base", "var", "power"):
            if key not in spec:
                raise DocumentError(f"quotient needs {key!r}", where)
        if spec["base"] not in built:
            raise UnknownReference(f"unknown algebra {spec['base']!r}", f"{where}.base")
        base = built[spec["base"]]
        if spec["var"] not in base.names:
            raise UnknownReference(f"unknown generator {spec['var']!r}", f"{where}.var")
        try:
            return QuotientAlgebra(base, spec["var"], spec["power"])
        except QinvarError as e:
            raise DocumentError(str(e), where) from None
    if kind == "tensor":
        for key in ("left", "right"):
            if spec.get(key) not in built:
                raise UnknownReference(f"unknown algebra {spec.get(key)!r}", f"{where}.{key}")
        return TensorAlgebra(built[spec["left"]], built[spec["right"]])
    raise DocumentError(f"unknown kind {kind!r}", where)


def _json_position(text: str, err: json.JSONDecodeError) -> str:
    return f"line {err.lineno}, column {err.colno}"


def parse_document(text: str) -> WorkspaceDoc:
    """Parse and validate a workspace document.

    Raises :class:`DocumentError` (with ``diagnostics`` listing every problem
    found), :class:`UnknownReference` or :class:`InvalidRational`.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, _json_position(text, e)) from None
    validator = jsonschema.Draft202012Validator(SCHEMA)
    problems = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if problems:
        diags = [DocumentError(p.message, "$" + "".join(f"[{x!r}]" if isinstance(x, int) else f".{x}"
                                                        for x in p.absolute_path)) for p in problems]
        err = DocumentError(diags[0].args[0])
        err.diagnostics = diags
        raise err
    coll = _Collector()
    norm: dict = {"schema": SCHEMA_VERSION}
    if "title" in data:
        norm["title"] = data["title"]

    symbols: dict = {}
    norm_params = []
    for k, par in enumerate(data.get("parameters", [])):
        entry = {"name": par["name"]}
        if "value" in par:
            try:
                v = parse_rational(par["value"])
                entry["value"] = format_rational(v)
                symbols[par["name"]] = v
            except InvalidRational as e:
                coll.add(InvalidRational(f"$.parameters[{k}].value: {e}"))
                continue
        else:
            symbols[par["name"]] = None
        norm_params.append(entry)
    if "parameters" in data:
        norm["parameters"] = norm_params

    doc = WorkspaceDoc(norm, symbols)
    norm_algs: dict = {}
    for name, spec in data.get("algebras", {}).items():
        entry = dict(spec)
        extra: dict = {}
        try:
            doc.algebras[name] = _build_algebra(name, spec, doc.algebras, symbols, extra)
        except (DocumentError, InvalidRational) as e:
            coll.add(e)
            continue
        except QinvarError as e:
            coll.add(DocumentError(str(e), f"$.algebras.{name}"))
            continue
        entry.update(extra)
        norm_algs[name] = entry
    if "algebras" in data:
        norm["algebras"] = norm_algs

    norm_autos: dict = {}
    for name, spec in data.get("automorphisms", {}).items():
        where = f"$.automorphisms.{name}"
        alg = doc.algebras.get(spec["algebra"])
        if alg is None:
            coll.add(UnknownReference(f"unknown algebra {spec['algebra']!r}", f"{where}.algebra"))
            continue
        try:
            images = []
            for gen in alg.names:
                if gen not in spec["images"]:
                    raise DocumentError(f"no image given for generator {gen!r}", f"{where}.images")
                images.append(spec["images"][gen])
            for gen in spec["images"]:
                if gen not in alg.names:
                    raise UnknownReference(f"unknown generator {gen!r}", f"{where}.images.{gen}")
            for gen, img in spec["images"].items():
                for key in img:
                    if key != "1" and key not in alg.names:
                        raise UnknownReference(f"unknown generator {key!r}", f"{where}.images.{gen}.{key}")
                for key, val in img.items():
                    _rational(val, f"{where}.images.{gen}.{key}")
            sigma, eps = filtered_decompose(images, alg.names)
            lam = _rational(spec["lambda"], f"{where}.lambda") if "lambda" in spec else None
            doc.automorphisms[name] = Automorphism(alg, sigma, eps, None if lam is None else parse_rational(lam))
        except (DocumentError, InvalidRational) as e:
            coll.add(e)
            continue
        except QinvarError as e:
            coll.add(DocumentError(str(e), where))
            continue
        entry = {"algebra": spec["algebra"],
                 "images": {g: {k: _rational(v, where) for k, v in img.items()} for g, img in spec["images"].items()}}
        if "lambda" in spec:
            entry["lambda"] = _rational(spec["lambda"], where)
        norm_autos[name] = entry
    if "automorphisms" in data:
        norm["automorphisms"] = norm_autos

    norm_groups: dict = {}
    for name, spec in data.get("groups", {}).items():
        where = f"$.groups.{name}"
        if spec["algebra"] not in doc.algebras:
            coll.add(UnknownReference(f"unknown algebra {spec['algebra']!r}", f"{where}.algebra"))
            continue
        gens = []
        for k, gname in enumerate(spec["generators"]):
            if gname not in doc.automorphisms:
                coll.add(UnknownReference(f"unknown automorphism {gname!r}", f"{where}.generators[{k}]"))
                break
            if doc.automorphisms[gname].algebra is not doc.algebras[spec["algebra"]]:
                coll.add(DocumentError(f"{gname!r} acts on a different algebra", f"{where}.generators[{k}]"))
                break
            gens.append(doc.automorphisms[gname])
        else:
            doc.groups[name] = (doc.algebras[spec["algebra"]], gens, spec.get("close", True))
            norm_groups[name] = dict(spec)
    if "groups" in data:
        norm["groups"] = norm_groups

    refs = {"algebra": doc.algebras, "automorphism": doc.automorphisms, "group": doc.groups}
    for k, task in enumerate(data.get("tasks", [])):
        for key, table in refs.items():
            if key in task and task[key] not in table:
                coll.add(UnknownReference(f"unknown {key} {task[key]!r}", f"$.tasks[{k}].{key}"))
        if "series" in task:
            for part in ("num", "den"):
                for m, c in enumerate(task["series"][part]):
                    try:
                        parse_rational(c)
                    except InvalidRational as e:
                        coll.add(InvalidRational(f"$.tasks[{k}].series.{part}[{m}]: {e}"))
    if "tasks" in data:
        norm["tasks"] = data["tasks"]

    if coll.errors:
        first = coll.errors[0]
        first.diagnostics = list(coll.errors)
        raise first
    return doc


def dump_document(doc: WorkspaceDoc) -> str:
    """Canonical JSON text; parse_document(dump_document(d)) == d."""
    return json.dumps(doc.data, indent=2, ensure_ascii=False) + "\n"


def schema_text() -> str:
    return json.dumps(SCHEMA, indent=2) + "\n"
