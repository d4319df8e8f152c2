"""JSON presentation files, table dumps, and report serialization.

Scalars travel as strings (``"-3/4"``) so nothing ever passes through a float.
Plain JSON integers are accepted on input as a convenience.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Sequence

import jsonschema

from .embedding import Certificate, EmbeddingTables
from .extension import ExtensionAlgebra, ExtensionData
from .hom import TruncatedHom
from .lie import LieAlgebra, RightAction, ValidationReport
from .pbw import format_monomial, parse_monomial
from .scalars import CharacteristicTwo, FieldSpec, ScalarParseError, format_scalar, scalar_parse

__all__ = [
    "PresentationError",
    "algebra_to_json",
    "certificate_to_json",
    "dump_presentation",
    "hom_from_json",
    "hom_to_json",
    "load_presentation",
    "parse_presentation",
    "presentation_from_json",
    "presentation_to_json",
    "tables_from_json",
    "tables_to_json",
    "validation_to_json",
]


class PresentationError(ValueError):
    """Schema or content error; ``path`` locates the offending key, e.g. ``M.brackets[0].i``."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path or '<root>'}: {message}")


_SCALAR = {"type": ["string", "integer"]}
_COEFFS = {"type": "object", "additionalProperties": _SCALAR}
_ALGEBRA = {
    "type": "object",
    "required": ["dim", "basis"],
    "additionalProperties": False,
    "properties": {
        "dim": {"type": "integer", "minimum": 0},
        "basis": {"type": "array", "items": {"type": "string", "minLength": 1}},
        "brackets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "coeffs"],
                "additionalProperties": False,
                "properties": {"i": {"type": "integer"}, "j": {"type": "integer"}, "coeffs": _COEFFS},
            },
        },
    },
}
SCHEMA = {
    "type": "object",
    "required": ["field", "M", "L"],
    "additionalProperties": False,
    "properties": {
        "field": {
            "type": "object",
            "required": ["type"],
            "additionalProperties": False,
            "properties": {"type": {"enum": ["rational", "prime"]}, "p": {"type": "integer"}},
        },
        "M": _ALGEBRA,
        "L": _ALGEBRA,
        "action": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["u", "matrix"],
                "additionalProperties": False,
                "properties": {
                    "u": {"type": "integer"},
                    "matrix": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["row", "col", "val"],
                            "additionalProperties": False,
                            "properties": {"row": {"type": "integer"}, "col": {"type": "integer"}, "val": _SCALAR},
                        },
                    },
                },
            },
        },
        "factor_set": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["u", "v", "value"],
                "additionalProperties": False,
                "properties": {"u": {"type": "integer"}, "v": {"type": "integer"}, "value": _COEFFS},
            },
        },
    },
}


def _fmt_path(parts: Iterable) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def _field_from_json(obj: Mapping) -> FieldSpec:
    if obj["type"] == "rational":
        if "p" in obj:
            raise PresentationError("field.p", "the rational field takes no modulus")
        return FieldSpec("rational")
    p = obj.get("p")
    if p is None:
        raise PresentationError("field.p", "prime field requires p")
    if p == 2:
        raise CharacteristicTwo("field.p: characteristic 2 is not supported")
    try:
        return FieldSpec("prime", p)
    except ValueError as exc:
        raise PresentationError("field.p", str(exc)) from None


def _scalar(text, F: FieldSpec, path: str):
    try:
        return scalar_parse(str(text), F)
    except ScalarParseError as exc:
        raise PresentationError(path, str(exc)) from None


def _coeffs(obj: Mapping, names: Sequence[str], F: FieldSpec, path: str) -> dict:
    idx = {n: i for i, n in enumerate(names)}
    out = {}
    for name, val in obj.items():
        if name not in idx:
            raise PresentationError(f"{path}.{name}", f"unknown basis name {name!r}")
        c = _scalar(val, F, f"{path}.{name}")
        if c:
            out[idx[name]] = c
    return out


def _index(value: int, bound: int, path: str) -> int:
    if not 0 <= value < bound:
        raise PresentationError(path, f"index {value} out of range [0, {bound})")
    return value


def _algebra_from_json(obj: Mapping, F: FieldSpec, tag: str) -> LieAlgebra:
    basis = obj["basis"]
    if obj["dim"] != len(basis):
        raise PresentationError(f"{tag}.dim", f"dim {obj['dim']} but {len(basis)} basis names")
    if len(set(basis)) != len(basis):
        raise PresentationError(f"{tag}.basis", "basis names must be unique")
    sc = {}
    for n, entry in enumerate(obj.get("brackets", [])):
        path = f"{tag}.brackets[{n}]"
        i = _index(entry["i"], len(basis), f"{path}.i")
        j = _index(entry["j"], len(basis), f"{path}.j")
        if not i < j:
            raise PresentationError(path, f"bracket entries need i < j, got i={i}, j={j}")
        if (i, j) in sc:
            raise PresentationError(path, f"duplicate bracket entry ({i},{j})")
        sc[(i, j)] = _coeffs(entry["coeffs"], basis, F, f"{path}.coeffs")
    return LieAlgebra(basis, sc, F)


def presentation_from_json(obj: Any) -> ExtensionData:
    validator = jsonschema.Draft7Validator(SCHEMA)
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise PresentationError(_fmt_path(err.absolute_path), err.message)
    F = _field_from_json(obj["field"])
    M = _algebra_from_json(obj["M"], F, "M")
    L = _algebra_from_json(obj["L"], F, "L")
    if set(M.basis) & set(L.basis):
        raise PresentationError("L.basis", "basis names of M and L must be distinct")
    images: Dict[int, Dict[int, dict]] = {}
    for n, block in enumerate(obj.get("action", [])):
        path = f"action[{n}]"
        u = _index(block["u"], L.dim, f"{path}.u")
        if u in images:
            raise PresentationError(f"{path}.u", f"duplicate action block for generator {u}")
        cols: Dict[int, dict] = {}
        for k, ent in enumerate(block["matrix"]):
            epath = f"{path}.matrix[{k}]"
            r = _index(ent["row"], M.dim, f"{epath}.row")
            c = _index(ent["col"], M.dim, f"{epath}.col")
            val = _scalar(ent["val"], F, f"{epath}.val")
            if val:
                cols.setdefault(c, {})[r] = val
        images[u] = cols
    g = {}
    for n, ent in enumerate(obj.get("factor_set", [])):
        path = f"factor_set[{n}]"
        u = _index(ent["u"], L.dim, f"{path}.u")
        v = _index(ent["v"], L.dim, f"{path}.v")
        if not u < v:
            raise PresentationError(path, f"factor set entries need u < v, got u={u}, v={v}")
        if (u, v) in g:
            raise PresentationError(path, f"duplicate factor set entry ({u},{v})")
        g[(u, v)] = _coeffs(ent["value"], M.basis, F, f"{path}.value")
    return ExtensionData(M, L, RightAction(M.dim, L.dim, images), g)


def parse_presentation(path) -> ExtensionData:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PresentationError("", f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError("", f"malformed JSON: {exc}") from None
    return presentation_from_json(obj)


load_presentation = parse_presentation


def vector_to_json(v: Mapping[int, object], names: Sequence[str]) -> Dict[str, str]:
    return {names[k]: format_scalar(c) for k, c in sorted(v.items())}


def algebra_to_json(A: LieAlgebra) -> dict:
    return {
        "dim": A.dim,
        "basis": list(A.basis),
        "brackets": [{"i": i, "j": j, "coeffs": vector_to_json(v, A.basis)} for (i, j), v in sorted(A.sc.items())],
    }


def presentation_to_json(d: ExtensionData) -> dict:
    action = []
    for u in range(d.L.dim):
        entries = [{"row": r, "col": c, "val": format_scalar(x)}
                   for w, r, c, x in d.action.entries() if w == u]
        if entries:
            action.append({"u": u, "matrix": sorted(entries, key=lambda e: (e["row"], e["col"]))})
    return {
        "field": d.field.to_json(),
        "M": algebra_to_json(d.M),
        "L": algebra_to_json(d.L),
        "action": action,
        "factor_set": [{"u": u, "v": v, "value": vector_to_json(w, d.M.basis)} for (u, v), w in sorted(d.g.items())],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def dump_presentation(d: ExtensionData) -> str:
    return dumps(presentation_to_json(d))


def digest(text: str | bytes) -> str:
    if isinstance(text, str):
        text = text.encode()
    return "sha256:" + hashlib.sha256(text).hexdigest()


def extension_to_json(ext: ExtensionAlgebra) -> dict:
    out = algebra_to_json(ext.N)
    out["m_dim"] = ext.m_dim
    return out


def hom_to_json(f: TruncatedHom, M: LieAlgebra, L: LieAlgebra) -> dict:
    rows = [{"monomial": format_monomial(E, L.basis), "value": vector_to_json(v, M.basis)}
            for E, v in sorted(f.values.items(), key=lambda kv: (len(kv[0]), kv[0])) if v]
    return {"valid_degree": f.valid_degree, "values": rows}


def hom_from_json(obj: Mapping, M: LieAlgebra, L: LieAlgebra) -> TruncatedHom:
    F = M.field
    values = {}
    for n, row in enumerate(obj["values"]):
        E = parse_monomial(row["monomial"], L.basis)
        values[E] = _coeffs(row["value"], M.basis, F, f"values[{n}].value")
    return TruncatedHom({E: v for E, v in values.items() if v}, obj["valid_degree"])


def tables_to_json(t: EmbeddingTables) -> dict:
    M, L = t.data.M, t.data.L

    def rows(table, names):
        return [{"index": names[k], "monomial": format_monomial(E, L.basis), "value": vector_to_json(v, M.basis)}
                for (k, E), v in sorted(table.items(), key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0]))]

    return {"degree": t.D, "field": t.data.field.to_json(), "fo": rows(t.fo, L.basis), "fx": rows(t.fx, M.basis)}


def tables_from_json(obj: Mapping, d: ExtensionData) -> EmbeddingTables:
    M, L = d.M, d.L

    def read(rows, names):
        idx = {n: i for i, n in enumerate(names)}
        out = {}
        for n, row in enumerate(rows):
            E = parse_monomial(row["monomial"], L.basis)
            v = _coeffs(row["value"], M.basis, d.field, f"[{n}].value")
            if v:
                out[(idx[row["index"]], E)] = v
        return out

    return EmbeddingTables(obj["degree"], read(obj["fo"], L.basis), read(obj["fx"], M.basis), d)


def _instance_names(c: Certificate, d: ExtensionData) -> List[str]:
    M, L = d.M.basis, d.L.basis
    if c.relation == "R1":
        return [L[i] for i in c.instance]
    if c.relation == "R2":
        return [M[c.instance[0]], L[c.instance[1]]]
    if c.relation == "R3":
        return [M[i] for i in c.instance]
    if c.relation == "HOM":
        names = M + L
        return [names[i] for i in c.instance]
    return [str(i) for i in c.instance]


def certificate_to_json(c: Certificate, d: ExtensionData) -> dict:
    M, L = d.M, d.L
    out = {
        "relation": c.relation,
        "instance": _instance_names(c, d),
        "monomial": "leg" if c.monomial is None and c.relation == "HOM" else (
            None if c.monomial is None else format_monomial(c.monomial, L.basis)),
        "status": c.status,
    }
    if not c.passed:
        if c.relation == "HOM" and c.monomial is None:
            names = L.basis
        elif c.relation == "INJ":
            names = M.basis + L.basis
        else:
            names = M.basis
        out["residual"] = vector_to_json(c.residual, names)
    return out


def _violation_instance(cond: str, inst, d: ExtensionData) -> list:
    M, L = d.M.basis, d.L.basis
    if cond == "jacobi-M":
        return [M[i] for i in inst]
    if cond in ("jacobi-L", "b"):
        return [L[i] for i in inst]
    if cond == "derivation":
        return [M[inst[0]], M[inst[1]], L[inst[2]]]
    if cond == "c":
        return [M[inst[0]], L[inst[1]], L[inst[2]]]
    if cond == "fo":
        return [L[inst[0]], format_monomial(inst[1:], L)]
    if cond == "fx":
        return [M[inst[0]], format_monomial(inst[1:], L)]
    return list(inst)


def validation_to_json(report: ValidationReport, d: ExtensionData) -> dict:
    out = []
    for v in report.violations:
        res_names = d.L.basis if v.condition == "jacobi-L" else d.M.basis
        out.append({
            "condition": v.condition,
            "instance": _violation_instance(v.condition, v.instance, d),
            "residual": vector_to_json(v.residual, res_names),
        })
    return {"ok": report.ok, "checked": report.checked, "violations": out}
