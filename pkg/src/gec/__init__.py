"""Metric-independent exterior calculus for stress theory and generalized electrodynamics."""

from .cochain import Cochain, coboundary, cup, pair, restrict
from .complex import (
    Chain,
    ComplexError,
    DegreeError,
    Simplex,
    SimplicialComplex,
    boundary_chain,
    boundary_subcomplex,
    build_complex,
    region_chain,
)
from .currents import (
    Current,
    boundary_current,
    contract_current,
    current_from_chain,
    force_functional_identity,
)
from .electro import (
    ElectroConfig,
    FieldStrengths,
    IdentityViolation,
    field_strengths,
    maxwell_traction,
    power_chain_identity,
    total_power,
    variational_split,
)
from .poly import Poly
from .smoothform import (
    PolyForm,
    PolyMultivectorField,
    coordinate,
    de_rham,
    dx,
    exterior_derivative,
    integrate_simplex,
    pullback,
    wedge,
)
from .affine import AffineMap
from .meshgen import kuhn_box

__version__ = "0.1.0"

__all__ = [
    "coordinate",
    "dx",
    "kuhn_box",
    "Cochain",
    "coboundary",
    "cup",
    "pair",
    "restrict",
    "AffineMap",
    "Chain",
    "ComplexError",
    "Current",
    "DegreeError",
    "ElectroConfig",
    "FieldStrengths",
    "IdentityViolation",
    "Poly",
    "PolyForm",
    "PolyMultivectorField",
    "Simplex",
    "SimplicialComplex",
    "boundary_chain",
    "boundary_current",
    "boundary_subcomplex",
    "build_complex",
    "contract_current",
    "current_from_chain",
    "de_rham",
    "exterior_derivative",
    "field_strengths",
    "force_functional_identity",
    "integrate_simplex",
    "maxwell_traction",
    "power_chain_identity",
    "pullback",
    "region_chain",
    "total_power",
    "variational_split",
    "wedge",
]
