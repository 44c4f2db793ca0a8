"""Simplicial fans given by a complex and a vector configuration.

Covers fan validity, completeness, rationality and regularity.  Also covers
the Delzant test for polytopes, normal fans, and the data of the quotient
construction of a toric variety.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import gcd
from typing import Sequence

from .complexes import SimplicialComplex, _ridge_connected
from .errors import DomainError
from .exact import rank, solve
from .lattice import (
    IntegerLattice,
    extends_to_basis,
    is_lattice_basis,
    lattice_from_generators,
    smith_normal_form,
    standard_lattice,
)
from .lp import nonnegative_solution
from .polytopes import Presentation, analyze_presentation, enumerate_vertices, nerve_complex


@dataclass(frozen=True)
class FanData:
    """A complex ``K`` on ``[m]`` with vectors ``a_1, ..., a_m`` in R^n.

    ``lattice`` selects the lattice for regularity.  ``None`` means the
    standard lattice Z^n when every vector is integral and the lattice
    generated by the vectors otherwise.
    """

    complex: SimplicialComplex
    vectors: tuple[tuple[Fraction, ...], ...]
    n: int
    lattice: IntegerLattice | None = None

    def __init__(
        self,
        complex: SimplicialComplex,
        vectors: Sequence[Sequence],
        n: int | None = None,
        lattice: IntegerLattice | None = None,
    ) -> None:
        vecs = tuple(tuple(Fraction(x) for x in v) for v in vectors)
        dim = n if n is not None else (len(vecs[0]) if vecs else 0)
        if len(vecs) != complex.m:
            raise DomainError(f"expected {complex.m} vectors, got {len(vecs)}")
        if any(len(v) != dim for v in vecs):
            raise DomainError("vectors have inconsistent dimensions")
        object.__setattr__(self, "complex", complex)
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "n", dim)
        object.__setattr__(self, "lattice", lattice)

    @property
    def m(self) -> int:
        return self.complex.m

    @property
    def A(self) -> list[list[Fraction]]:
        """The ``n x m`` matrix with the vectors as columns."""
        return [[v[i] for v in self.vectors] for i in range(self.n)]

    @property
    def zero_vectors(self) -> list[int]:
        return [k for k, v in enumerate(self.vectors) if not any(v)]

    def spans(self) -> bool:
        return rank(self.vectors) == self.n if self.vectors else self.n == 0

    def effective_lattice(self) -> IntegerLattice:
        if self.lattice is not None:
            return self.lattice
        if all(x.denominator == 1 for v in self.vectors for x in v):
            return standard_lattice(self.n)
        return lattice_from_generators(self.vectors, self.n)


@dataclass(frozen=True)
class FanValidation:
    is_fan: bool
    complete: bool
    rational: bool
    regular: bool
    lattice: IntegerLattice
    primitive_factors: tuple[Fraction, ...]
    sample_agrees: bool | None = None
    reason: str = ""


def _independent_faces(fan: FanData) -> bool:
    for face in fan.complex.faces:
        if face and rank([fan.vectors[i] for i in face]) < len(face):
            return False
    return True


def _relative_interiors_meet(fan: FanData, first: frozenset[int], second: frozenset[int]) -> bool:
    """Is there a point in both relative interiors?  Coefficients may be taken >= 1."""
    left = sorted(first)
    right = sorted(second)
    cols = [fan.vectors[i] for i in left] + [tuple(-x for x in fan.vectors[j]) for j in right]
    rows = [[c[i] for c in cols] for i in range(fan.n)]
    rhs = [-sum(row, Fraction(0)) for row in rows]
    return nonnegative_solution(rows, rhs, len(cols)) is not None


def _pairwise_disjoint(fan: FanData) -> tuple[bool, tuple[frozenset[int], frozenset[int]] | None]:
    """Relative interiors of distinct cones are disjoint.

    A common point of two relative interiors can be pushed, by cancelling the
    shared generators, to a common point of two disjoint faces whose union is
    not a face.  Only such pairs are tested.
    """
    faces = sorted((f for f in fan.complex.faces if f), key=lambda f: (len(f), sorted(f)))
    for i, first in enumerate(faces):
        for second in faces[i + 1:]:
            if first & second or (first | second) in fan.complex.faces:
                continue
            if _relative_interiors_meet(fan, first, second):
                return False, (first, second)
    return True, None


def _ridge_complete(fan: FanData) -> bool:
    """Pure of dimension n, every ridge in exactly two facets, facets ridge-connected."""
    k = fan.complex
    facets = k.maximal_faces()
    if any(len(f) != fan.n for f in facets):
        return False
    if fan.n == 0:
        return True
    counts: dict[frozenset[int], int] = {}
    for f in facets:
        for v in f:
            counts[f - {v}] = counts.get(f - {v}, 0) + 1
    if any(c != 2 for c in counts.values()):
        return False
    return _ridge_connected(facets)


def locate_direction(fan: FanData, direction: Sequence[Fraction]) -> frozenset[int] | None:
    """A maximal cone containing ``direction``, or ``None``."""
    for facet in fan.complex.maximal_faces():
        idx = sorted(facet)
        if len(idx) != fan.n:
            continue
        rows = [[fan.vectors[i][r] for i in idx] for r in range(fan.n)]
        coeffs = solve(rows, list(direction), len(idx))
        if coeffs is not None and all(c >= 0 for c in coeffs):
            return facet
    return None


def sample_directions(n: int) -> list[tuple[Fraction, ...]]:
    """All sign vectors in ``{-1, 1}^n`` followed by the coordinate directions."""
    out = [tuple(Fraction(s) for s in signs) for signs in cartesian((-1, 1), repeat=n)]
    for i in range(n):
        for s in (1, -1):
            out.append(tuple(Fraction(s if j == i else 0) for j in range(n)))
    return out


def primitive_factors(fan: FanData, lattice: IntegerLattice) -> tuple[Fraction, ...]:
    """``r_k`` with ``a_k = r_k * (primitive lattice vector)``; zero vectors give 0."""
    out = []
    for v in fan.vectors:
        if not any(v):
            out.append(Fraction(0))
            continue
        coords = lattice.coordinates(v)
        out.append(Fraction(gcd(*coords)))
    return tuple(out)


def validate_fan(fan: FanData) -> FanValidation:
    lattice = fan.effective_lattice()
    try:
        factors = primitive_factors(fan, lattice)
        rational = True
    except DomainError:
        factors = ()
        rational = False
    if not _independent_faces(fan):
        return FanValidation(False, False, rational, False, lattice, factors, reason="dependent generators on a face")
    ok, bad_pair = _pairwise_disjoint(fan)
    if not ok:
        reason = f"relative interiors of cones {sorted(bad_pair[0])} and {sorted(bad_pair[1])} meet"
        return FanValidation(False, False, rational, False, lattice, factors, reason=reason)
    complete = fan.spans() and _ridge_complete(fan)
    # The sample can only confirm completeness, so it is run on complete fans.
    sample_agrees = all(locate_direction(fan, d) is not None for d in sample_directions(fan.n)) if complete else None
    regular = rational and all(
        extends_to_basis([fan.vectors[i] for i in f], lattice) for f in fan.complex.maximal_faces()
    )
    return FanValidation(True, complete, rational, regular, lattice, factors, sample_agrees)


@dataclass(frozen=True)
class DelzantResult:
    delzant: bool
    lattice: IntegerLattice
    failing_vertex: tuple[Fraction, ...] | None = None
    failing_active: frozenset[int] | None = None

    def __bool__(self) -> bool:
        return self.delzant


def is_delzant(p: Presentation) -> DelzantResult:
    """Every vertex's normals form a basis of ``N = Z<a_1, ..., a_m>``."""
    data = enumerate_vertices(p)
    analysis = analyze_presentation(p, data)
    if not analysis.generic:
        raise DomainError("Delzant test needs a generic presentation")
    if not analysis.bounded:
        raise DomainError("Delzant test needs a bounded polyhedron")
    normals = p.normals
    lattice = lattice_from_generators(normals, p.n)
    for v in data.vertices:
        if not is_lattice_basis([normals[i] for i in sorted(v.active)], lattice):
            return DelzantResult(False, lattice, v.point, v.active)
    return DelzantResult(True, lattice)


def normal_fan(p: Presentation) -> FanData:
    """Nerve complex with the normals; the lattice is the one the normals generate."""
    data = enumerate_vertices(p)
    analysis = analyze_presentation(p, data)
    if not analysis.generic:
        raise DomainError("normal fan needs a generic presentation")
    if not analysis.bounded:
        raise DomainError("normal fan needs a bounded polyhedron")
    k = nerve_complex(p, data)
    return FanData(k, p.normals, p.n, lattice_from_generators(p.normals, p.n))


@dataclass(frozen=True)
class CoxData:
    minimal_nonfaces: tuple[frozenset[int], ...]
    G_rank: int
    G_torsion: tuple[int, ...]
    action: str  # "free", "almost_free" or "neither"


def cox_data(fan: FanData) -> CoxData:
    """Coordinate arrangement and the group ``G`` in the quotient construction."""
    if not fan.spans():
        raise DomainError("vectors do not span R^n")
    lattice = fan.effective_lattice()
    coords = [lattice.coordinates(v) for v in fan.vectors]
    diagonal, _, _ = smith_normal_form([[c[i] for c in coords] for i in range(lattice.rank)], fan.m)
    torsion = tuple(d for d in diagonal if d > 1)
    check = validate_fan(fan)
    if check.is_fan and check.regular:
        action = "free"
    elif check.is_fan:
        action = "almost_free"
    else:
        action = "neither"
    return CoxData(tuple(fan.complex.minimal_nonfaces()), fan.m - fan.n, torsion, action)
