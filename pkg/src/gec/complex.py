"""Oriented simplicial complexes embedded in R^d, rational chains and their boundary."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .affine import AffineMap, det, rank
from .poly import as_fraction

Key = tuple[int, ...]


class ComplexError(ValueError):
    """Raised for malformed simplices, meshes or chains."""


class DegreeError(ValueError):
    """Raised when an operator is applied outside its admissible degrees."""


def permutation_sign(seq: Sequence[int]) -> int:
    """Parity of the permutation sorting ``seq`` (entries must be distinct)."""
    seq = list(seq)
    sign = 1
    seen = [False] * len(seq)
    order = sorted(range(len(seq)), key=seq.__getitem__)
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class Simplex:
    """Canonical (ascending) vertex tuple plus an orientation sign."""

    vertices: Key
    orientation_sign: int = 1

    @classmethod
    def from_vertices(cls, vertices: Sequence[int]) -> "Simplex":
        verts = [int(v) for v in vertices]
        if len(set(verts)) != len(verts):
            raise ComplexError(f"simplex {verts} has repeated vertices")
        return cls(tuple(sorted(verts)), permutation_sign(verts))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def oriented_vertices(self) -> Key:
        """A vertex ordering realizing the stored orientation.

        A vertex has no ordering to permute, so its sign is left to callers.
        """
        v = list(self.vertices)
        if self.orientation_sign < 0 and len(v) >= 2:
            v[-2], v[-1] = v[-1], v[-2]
        return tuple(v)


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Face-closed simplicial complex with exact rational vertex coordinates.

    ``dim`` is the dimension of the top simplices, ``ambient_dim`` the
    dimension of the coordinate space they are embedded in.  ``top`` keeps
    the oriented top simplices in input order.
    """

    dim: int
    ambient_dim: int
    coords: Mapping[int, tuple[Fraction, ...]]
    top: tuple[Simplex, ...]
    simplices: tuple[tuple[Key, ...], ...] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", tuple(frozenset(s) for s in self.simplices))

    def simplices_of_dim(self, k: int) -> tuple[Key, ...]:
        if k < 0 or k > self.dim:
            return ()
        return self.simplices[k]

    def contains(self, key: Key) -> bool:
        k = len(key) - 1
        return 0 <= k <= self.dim and key in self._index[k]

    def points(self, key: Sequence[int]) -> list[tuple[Fraction, ...]]:
        return [self.coords[v] for v in key]

    def embedding(self, key: Sequence[int]) -> AffineMap:
        """Affine parameterization of the simplex with the given vertex order."""
        return AffineMap.from_points(self.points(key))

    def counts(self) -> list[int]:
        return [len(s) for s in self.simplices]


def _close_under_faces(tops: Iterable[Key], dim: int) -> tuple[tuple[Key, ...], ...]:
    levels: list[set[Key]] = [set() for _ in range(dim + 1)]
    for t in tops:
        for k in range(len(t)):
            levels[k].update(combinations(t, k + 1))
    return tuple(tuple(sorted(level)) for level in levels)


def build_complex(
    d: int,
    vertex_coords: Sequence[Sequence] | Mapping[int, Sequence],
    top_simplices: Iterable[Sequence[int]],
) -> SimplicialComplex:
    """Validate a mesh and close it under faces.

    Args:
        d: ambient and top-simplex dimension.
        vertex_coords: list (indexed by position) or mapping of vertex
            index to a point of R^d; entries are coerced to Fraction.
        top_simplices: vertex index lists of length ``d + 1``; the given
            order fixes each simplex's orientation.

    Raises:
        ComplexError: repeated or out-of-range vertices, wrong simplex size,
            or a top simplex with zero affine volume.
    """
    if d < 1:
        raise ComplexError("dimension must be >= 1")
    if isinstance(vertex_coords, Mapping):
        items = vertex_coords.items()
    else:
        items = enumerate(vertex_coords)
    coords = {}
    for i, p in items:
        p = tuple(as_fraction(x) for x in p)
        if len(p) != d:
            raise ComplexError(f"vertex {i} has {len(p)} coordinates, expected {d}")
        coords[int(i)] = p
    tops = []
    seen = set()
    for raw in top_simplices:
        raw = list(raw)
        if len(raw) != d + 1:
            raise ComplexError(f"top simplex {raw} needs {d + 1} vertices")
        for v in raw:
            if v not in coords:
                raise ComplexError(f"vertex index {v} out of range in simplex {raw}")
        s = Simplex.from_vertices(raw)
        if s.vertices in seen:
            raise ComplexError(f"simplex {raw} listed twice")
        seen.add(s.vertices)
        p0 = coords[raw[0]]
        edges = [[a - b for a, b in zip(coords[v], p0)] for v in raw[1:]]
        if det(edges) == 0:
            raise ComplexError(f"top simplex {raw} is degenerate (zero affine volume)")
        tops.append(s)
    return SimplicialComplex(
        dim=d,
        ambient_dim=d,
        coords=coords,
        top=tuple(tops),
        simplices=_close_under_faces((t.vertices for t in tops), d),
    )


class Chain:
    """Sparse formal sum of canonical k-simplices with rational coefficients."""

    __slots__ = ("degree", "coeffs", "complex")

    def __init__(self, degree: int, coeffs: Mapping[Sequence[int], object] | None = None,
                 complex: SimplicialComplex | None = None):
        self.degree = degree
        self.complex = complex
        out: dict[Key, Fraction] = {}
        for verts, c in (coeffs or {}).items():
            c = as_fraction(c)
            if not c:
                continue
            s = Simplex.from_vertices(verts)
            if s.dim != degree:
                raise ComplexError(f"simplex {tuple(verts)} does not have dimension {degree}")
            if complex is not None and not complex.contains(s.vertices):
                raise ComplexError(f"simplex {tuple(verts)} is not in the complex")
            v = out.get(s.vertices, 0) + s.orientation_sign * c
            if v:
                out[s.vertices] = v
            else:
                out.pop(s.vertices, None)
        self.coeffs = out

    @classmethod
    def _raw(cls, degree, coeffs, complex):
        c = cls.__new__(cls)
        c.degree, c.coeffs, c.complex = degree, coeffs, complex
        return c

    @classmethod
    def zero(cls, degree: int, complex: SimplicialComplex | None = None) -> "Chain":
        return cls._raw(degree, {}, complex)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{list(k)}" for k, c in sorted(self.coeffs.items())) or "0"
        return f"Chain[{self.degree}]({body})"

    def _check(self, other: "Chain"):
        if self.degree != other.degree:
            raise DegreeError("chains of different degree")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Chain._raw(self.degree, out, self.complex or other.complex)

    def __neg__(self) -> "Chain":
        return Chain._raw(self.degree, {k: -c for k, c in self.coeffs.items()}, self.complex)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, scalar) -> "Chain":
        s = as_fraction(scalar)
        if not s:
            return Chain.zero(self.degree, self.complex)
        return Chain._raw(self.degree, {k: c * s for k, c in self.coeffs.items()}, self.complex)

    __rmul__ = __mul__


def boundary_chain(c: Chain) -> Chain:
    """Alternating-sum boundary of a chain; degree drops by one."""
    if c.degree < 1:
        raise DegreeError("the boundary of a 0-chain is undefined")
    out: dict[Key, Fraction] = {}
    for key, coef in c.coeffs.items():
        for i in range(len(key)):
            face = key[:i] + key[i + 1:]
            v = out.get(face, 0) + (coef if i % 2 == 0 else -coef)
            if v:
                out[face] = v
            else:
                del out[face]
    return Chain._raw(c.degree - 1, out, c.complex)


def region_chain(K: SimplicialComplex) -> Chain:
    """Sum of the oriented top simplices of ``K``."""
    coeffs = {}
    for s in K.top:
        coeffs[s.vertices] = Fraction(s.orientation_sign)
    return Chain._raw(K.dim, coeffs, K)


def boundary_subcomplex(K: SimplicialComplex) -> tuple[SimplicialComplex, dict[Key, AffineMap]]:
    """The oriented boundary of the region carried by ``K``.

    Returns the (d-1)-dimensional complex made of the faces surviving in
    ``boundary_chain(region_chain(K))`` (orientation taken from the sign of
    the surviving coefficient) together with one affine embedding per face,
    parameterized along the face's oriented vertex order.

    Raises:
        ComplexError: a face survives with multiplicity other than 1, which
            happens when the top simplices are not consistently oriented.
    """
    if K.dim < 1:
        raise DegreeError("a 0-dimensional complex has no boundary")
    bd = boundary_chain(region_chain(K))
    tops = []
    embeds: dict[Key, AffineMap] = {}
    for key in sorted(bd.coeffs):
        coef = bd.coeffs[key]
        if abs(coef) != 1:
            raise ComplexError(
                f"face {key} has boundary multiplicity {coef}; the top simplices are not consistently oriented"
            )
        s = Simplex(key, 1 if coef > 0 else -1)
        tops.append(s)
        emb = K.embedding(s.oriented_vertices())
        if emb.source_dim and rank(emb.directions) != emb.source_dim:
            raise ComplexError(f"boundary face {key} is not embeddable")
        embeds[key] = emb
    used = {v for s in tops for v in s.vertices}
    D = SimplicialComplex(
        dim=K.dim - 1,
        ambient_dim=K.ambient_dim,
        coords={v: K.coords[v] for v in sorted(used)},
        top=tuple(tops),
        simplices=_close_under_faces((s.vertices for s in tops), K.dim - 1),
    )
    return D, embeds


def subcomplex(K: SimplicialComplex, top_keys: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Sub-region of ``K`` spanned by some of its top simplices (orientations kept)."""
    wanted = {tuple(sorted(k)) for k in top_keys}
    tops = tuple(s for s in K.top if s.vertices in wanted)
    if len(tops) != len(wanted):
        raise ComplexError("requested simplices are not top simplices of the complex")
    used = {v for s in tops for v in s.vertices}
    return SimplicialComplex(
        dim=K.dim,
        ambient_dim=K.ambient_dim,
        coords={v: K.coords[v] for v in sorted(used)},
        top=tops,
        simplices=_close_under_faces((s.vertices for s in tops), K.dim),
    )


def transform_complex(K: SimplicialComplex, phi: AffineMap) -> SimplicialComplex:
    """Move every vertex by ``phi``; combinatorics and orientations unchanged."""
    return SimplicialComplex(
        dim=K.dim,
        ambient_dim=phi.target_dim,
        coords={v: phi(p) for v, p in K.coords.items()},
        top=K.top,
        simplices=K.simplices,
    )
