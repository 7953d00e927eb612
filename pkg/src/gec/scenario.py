"""Scenario files: which mesh, which fields and which identity suites to run."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .complex import ComplexError, SimplicialComplex
from .electro import ElectroConfig
from .magnetostatics import PolyVectorField
from .meshgen import complex_from_mesh, mesh_gen
from .serialize import (
    FormatError,
    body_force_from_json,
    complex_from_json,
    form_from_json,
    load_json,
    stress_from_json,
    vector_field_from_json,
)
from .smoothform import PolyForm
from .stress import BodyForceField, TractionStressField

MODES = ("smooth", "discrete", "magnetostatics", "crosscheck")
ALL_SUITES = (
    "dd", "stokes", "leibniz", "smooth_algebra", "maxwell", "emforces", "decomposition",
    "stress", "currents", "magnetostatics", "crosscheck", "affine",
)


class ScenarioError(ValueError):
    """The scenario file is malformed or inconsistent (CLI exit code 2)."""


@dataclass
class Scenario:
    mode: str
    d: int
    r: int
    complex: SimplicialComplex
    mesh_spec: object = None
    g: PolyForm | None = None
    alpha: PolyForm | None = None
    b: BodyForceField | None = None
    sigma: TractionStressField | None = None
    w: PolyVectorField | None = None
    g_vec: PolyVectorField | None = None
    suites: tuple[str, ...] = ()
    seed: int = 0
    cases: int = 5
    test_degree: int = 3
    refine: tuple[int, ...] = ()
    quadrature_order: int = 4
    inject_sign_error: bool = False
    base_dir: Path = field(default=Path("."))

    @property
    def cfg(self) -> ElectroConfig:
        return ElectroConfig(self.d, self.r, sign_fault=self.inject_sign_error)

    def mesh_for(self, subdivisions: int) -> SimplicialComplex:
        """Refined box mesh for convergence studies."""
        spec = self.mesh_spec if isinstance(self.mesh_spec, dict) else {"kind": "box"}
        return complex_from_mesh(mesh_gen(spec.get("kind", "box"), self.d, subdivisions))


def _load_mesh(spec, base: Path, d: int) -> SimplicialComplex:
    if isinstance(spec, str):
        path = Path(spec)
        if not path.is_absolute():
            path = base / path
        if not path.exists():
            raise ScenarioError(f"mesh file {path} does not exist")
        K = complex_from_json(load_json(path))
    elif isinstance(spec, dict) and "kind" in spec:
        K = complex_from_mesh(mesh_gen(spec["kind"], int(spec.get("dim", d)), int(spec.get("sub", 1))))
    elif isinstance(spec, dict) and "vertices" in spec:
        K = complex_from_json(spec)
    else:
        raise ScenarioError("scenario needs 'mesh': a path, a generator spec or an inline mesh")
    if K.dim != d:
        raise ScenarioError(f"mesh has dimension {K.dim}, scenario says d={d}")
    return K


def parse_scenario(data: dict, base_dir: Path | str = ".") -> Scenario:
    """Validate a scenario dict; every problem is reported as ScenarioError."""
    base = Path(base_dir)
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    try:
        mode = data.get("mode", "smooth")
        if mode not in MODES:
            raise ScenarioError(f"unknown mode {mode!r}; expected one of {MODES}")
        d = int(data.get("d", 3))
        r = int(data.get("r", 1))
        if mode in ("magnetostatics", "crosscheck") and (d, r) != (3, 1):
            raise ScenarioError("magnetostatics and crosscheck modes need d=3, r=1")
        try:
            ElectroConfig(d, r)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from exc
        suites = data.get("suites")
        if suites is None:
            suites = list(ALL_SUITES)
        if not isinstance(suites, list) or not suites:
            raise ScenarioError("suite list must be a non-empty list")
        unknown = [s for s in suites if s not in ALL_SUITES]
        if unknown:
            raise ScenarioError(f"unknown suites {unknown}; known: {ALL_SUITES}")
        mesh_spec = data.get("mesh", {"kind": "box", "sub": 1})
        K = _load_mesh(mesh_spec, base, d)
        scn = Scenario(
            mode=mode, d=d, r=r, complex=K, mesh_spec=mesh_spec,
            suites=tuple(suites),
            seed=int(data.get("seed", 0)),
            cases=int(data.get("cases", 5)),
            test_degree=int(data.get("test_degree", 3)),
            refine=tuple(int(x) for x in data.get("refine", ())),
            quadrature_order=int(data.get("quadrature_order", 4)),
            inject_sign_error=bool(data.get("inject_sign_error", False)),
            base_dir=base,
        )
        if "g" in data:
            scn.g = _form(data["g"], d, d - r - 1, "g")
        if "alpha" in data:
            scn.alpha = _form(data["alpha"], d, r, "alpha")
        if "b" in data:
            scn.b = body_force_from_json(data["b"])
            _degrees(scn.b, d, r, "b")
        if "sigma" in data:
            scn.sigma = stress_from_json(data["sigma"])
            _degrees(scn.sigma, d, r, "sigma")
        if "w" in data:
            scn.w = vector_field_from_json(data["w"])
        if "g_vector" in data:
            scn.g_vec = vector_field_from_json(data["g_vector"])
        return scn
    except ScenarioError:
        raise
    except (FormatError, ComplexError, ValueError, TypeError, KeyError) as exc:
        raise ScenarioError(str(exc)) from exc


def _form(data, d: int, degree: int, name: str) -> PolyForm:
    f = form_from_json(data)
    if f.dim != d or f.degree != degree:
        raise ScenarioError(f"field {name} must be a degree-{degree} form on R^{d}")
    return f


def _degrees(obj, d: int, r: int, name: str):
    if obj.dim != d or obj.degree != r:
        raise ScenarioError(f"field {name} does not match d={d}, r={r}")


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        data = load_json(path)
    except FormatError as exc:
        raise ScenarioError(str(exc)) from exc
    return parse_scenario(data, path.parent)
