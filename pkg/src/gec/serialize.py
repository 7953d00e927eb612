"""JSON encodings for meshes, forms, cochains, stresses and vector fields.

Rationals are written as canonical strings (lowest terms, sign on the
numerator, ``"p/q"`` or ``"p"`` when the denominator is 1) and read back from
``"p/q"`` or decimal strings.  Multi-indices and exponent vectors are
comma-separated, 0-based; the empty string is the 0-form basis.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .cochain import Cochain
from .complex import SimplicialComplex, build_complex
from .magnetostatics import PolyVectorField
from .numeric import ExprCoeff
from .poly import Poly
from .smoothform import PolyForm, PolyMultivectorField
from .stress import BodyForceField, TractionStressField


class FormatError(ValueError):
    """Malformed JSON payload."""


def rational_to_str(q) -> str:
    if isinstance(q, float):
        return repr(q)
    return str(Fraction(q))


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise FormatError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise FormatError(f"floats are not exact; encode {text!r} as a string")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {text!r}") from exc


def _key(t) -> str:
    return ",".join(str(i) for i in t)


def _parse_key(s: str) -> tuple[int, ...]:
    s = s.strip()
    if not s:
        return ()
    try:
        return tuple(int(p) for p in s.split(","))
    except ValueError as exc:
        raise FormatError(f"bad index key {s!r}") from exc


# meshes

def mesh_to_json(mesh: dict) -> dict:
    return {
        "dimension": mesh["dimension"],
        "vertices": [[rational_to_str(c) for c in p] for p in mesh["vertices"]],
        "simplices": [list(s) for s in mesh["simplices"]],
    }


def complex_to_json(K: SimplicialComplex) -> dict:
    order = sorted(K.coords)
    pos = {v: i for i, v in enumerate(order)}
    return {
        "dimension": K.dim,
        "vertices": [[rational_to_str(c) for c in K.coords[v]] for v in order],
        "simplices": [[pos[v] for v in s.oriented_vertices()] for s in K.top],
    }


def complex_from_json(data: dict) -> SimplicialComplex:
    try:
        d = int(data["dimension"])
        verts = [[parse_rational(c) for c in p] for p in data["vertices"]]
        simplices = [list(map(int, s)) for s in data["simplices"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed mesh: {exc}") from exc
    return build_complex(d, verts, simplices)


# polynomials, forms, multivectors

def poly_to_json(p) -> dict:
    if isinstance(p, ExprCoeff):
        return {"expr": str(p.expr)}
    return {"monomials": {_key(e): rational_to_str(c) for e, c in sorted(p.terms.items())}}


def poly_from_json(data: dict, nvars: int):
    if "expr" in data:
        return ExprCoeff.parse(nvars, data["expr"])
    try:
        monos = data["monomials"]
    except (KeyError, TypeError) as exc:
        raise FormatError("polynomial needs a 'monomials' (or 'expr') entry") from exc
    terms = {}
    for k, c in monos.items():
        e = _parse_key(k)
        if len(e) != nvars:
            raise FormatError(f"exponent {k!r} does not have {nvars} entries")
        terms[e] = parse_rational(c)
    return Poly(nvars, terms)


def _graded_to_json(f) -> dict:
    return {
        "dimension": f.dim,
        "degree": f.degree,
        "terms": {_key(i): poly_to_json(c) for i, c in sorted(f.terms.items())},
    }


def _graded_from_json(cls, data: dict):
    try:
        d, r = int(data["dimension"]), int(data["degree"])
        raw = data.get("terms", {})
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed form: {exc}") from exc
    try:
        return cls(d, r, {_parse_key(k): poly_from_json(v, d) for k, v in raw.items()})
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def form_to_json(f: PolyForm) -> dict:
    return _graded_to_json(f)


def form_from_json(data: dict) -> PolyForm:
    return _graded_from_json(PolyForm, data)


def multivector_to_json(X: PolyMultivectorField) -> dict:
    return _graded_to_json(X)


def multivector_from_json(data: dict) -> PolyMultivectorField:
    return _graded_from_json(PolyMultivectorField, data)


# cochains

def cochain_to_json(c: Cochain) -> dict:
    return {
        "degree": c.degree,
        "values": {_key(k): rational_to_str(v) for k, v in sorted(c.values.items())},
    }


def cochain_from_json(data: dict, K: SimplicialComplex) -> Cochain:
    try:
        r = int(data["degree"])
        vals = {_parse_key(k): parse_rational(v) for k, v in data.get("values", {}).items()}
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed cochain: {exc}") from exc
    return Cochain(r, K, vals)


# stresses and body forces

def _pairs_to_json(obj) -> dict:
    return {
        "dimension": obj.dim,
        "degree": obj.degree,
        "terms": [{"multivector": multivector_to_json(X), "form": form_to_json(b)} for X, b in obj.terms],
    }


def _pairs_from_json(cls, data: dict):
    try:
        terms = tuple(
            (multivector_from_json(t["multivector"]), form_from_json(t["form"]))
            for t in data.get("terms", [])
        )
        return cls(int(data["dimension"]), int(data["degree"]), terms)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed term list: {exc}") from exc


def stress_to_json(s: TractionStressField) -> dict:
    return _pairs_to_json(s)


def stress_from_json(data: dict) -> TractionStressField:
    return _pairs_from_json(TractionStressField, data)


def body_force_to_json(b: BodyForceField) -> dict:
    return _pairs_to_json(b)


def body_force_from_json(data: dict) -> BodyForceField:
    return _pairs_from_json(BodyForceField, data)


# vector fields

def vector_field_to_json(v: PolyVectorField) -> dict:
    return {"components": [poly_to_json(c) for c in v.components]}


def vector_field_from_json(data: dict) -> PolyVectorField:
    try:
        comps = data["components"]
    except (KeyError, TypeError) as exc:
        raise FormatError("vector field needs 'components'") from exc
    if len(comps) != 3:
        raise FormatError("vector field needs exactly 3 components")
    return PolyVectorField(tuple(poly_from_json(c, 3) for c in comps))


# files

def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def dump_json(data, path=None) -> str:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
