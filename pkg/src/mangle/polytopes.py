"""Presentations of polyhedra by inequalities ``<a_i, x> + b_i >= 0``.

Covers vertex enumeration, genericity and redundancy, rescaling to unit
offsets, the polar polytope, Gale duals and Gale diagrams, and the cubical
subdivision of a simple polytope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .complexes import SimplicialComplex
from .errors import DomainError, RankDeficiencyError
from .exact import kernel_basis, rank, solve
from .limits import check_m
from .lp import in_cone, nonnegative_solution


@dataclass(frozen=True)
class Presentation:
    """The polyhedron ``P(A, b)``: ``A`` is ``n x m`` with the normals as columns."""

    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    n: int

    def __init__(self, A: Iterable[Iterable], b: Iterable, n: int | None = None) -> None:
        rows = tuple(tuple(Fraction(x) for x in row) for row in A)
        offsets = tuple(Fraction(x) for x in b)
        dim = len(rows) if n is None else n
        if len(rows) != dim:
            raise DomainError("row count of A does not match n")
        if any(len(row) != len(offsets) for row in rows):
            raise DomainError("A must have one column per entry of b")
        object.__setattr__(self, "A", rows)
        object.__setattr__(self, "b", offsets)
        object.__setattr__(self, "n", dim)

    @classmethod
    def from_normals(cls, normals: Sequence[Sequence], b: Sequence, n: int | None = None) -> "Presentation":
        dim = len(normals[0]) if n is None else n
        rows = [[Fraction(a[i]) for a in normals] for i in range(dim)]
        return cls(rows, b, dim)

    @property
    def m(self) -> int:
        return len(self.b)

    @property
    def normals(self) -> list[tuple[Fraction, ...]]:
        return [tuple(self.A[i][k] for i in range(self.n)) for k in range(self.m)]

    def value(self, k: int, x: Sequence[Fraction]) -> Fraction:
        """``<a_k, x> + b_k``."""
        return sum((self.A[i][k] * x[i] for i in range(self.n)), Fraction(0)) + self.b[k]

    def contains(self, x: Sequence[Fraction]) -> bool:
        return all(self.value(k, x) >= 0 for k in range(self.m))

    def restrict(self, keep: Iterable[int]) -> "Presentation":
        """Presentation using only the inequalities in ``keep`` (order kept)."""
        idx = sorted(keep)
        return Presentation([[row[k] for k in idx] for row in self.A], [self.b[k] for k in idx], self.n)


def standard_simplex(n: int) -> Presentation:
    """``x_i >= 0`` and ``-x_1 - ... - x_n + 1 >= 0``."""
    normals = [[int(i == j) for j in range(n)] for i in range(n)] + [[-1] * n]
    return Presentation.from_normals(normals, [0] * n + [1], n)


def product(p: Presentation, q: Presentation) -> Presentation:
    """The product polyhedron; inequalities of ``p`` come first."""
    normals = [list(a) + [0] * q.n for a in p.normals] + [[0] * p.n + list(a) for a in q.normals]
    return Presentation.from_normals(normals, list(p.b) + list(q.b), p.n + q.n)


def _require_full_rank(p: Presentation) -> None:
    if rank(p.A) != p.n:
        raise RankDeficiencyError(
            f"normal vectors span a space of dimension {rank(p.A)} < n = {p.n}; P has no vertex"
        )


@dataclass(frozen=True)
class Vertex:
    point: tuple[Fraction, ...]
    active: frozenset[int]


@dataclass(frozen=True)
class VertexData:
    vertices: tuple[Vertex, ...]

    @property
    def points(self) -> list[tuple[Fraction, ...]]:
        return [v.point for v in self.vertices]

    @property
    def active_sets(self) -> list[frozenset[int]]:
        return [v.active for v in self.vertices]


def enumerate_vertices(p: Presentation) -> VertexData:
    """All vertices by solving every nonsingular n-subset of the equalities."""
    _require_full_rank(p)
    check_m(p.m, "vertex enumeration")
    found: dict[tuple[Fraction, ...], frozenset[int]] = {}
    for subset in combinations(range(p.m), p.n):
        rows = [[p.A[i][k] for i in range(p.n)] for k in subset]
        if rank(rows) < p.n:
            continue
        x = solve(rows, [-p.b[k] for k in subset], p.n)
        point = tuple(x)
        if point in found or not p.contains(point):
            continue
        found[point] = frozenset(k for k in range(p.m) if p.value(k, point) == 0)
    vertices = tuple(Vertex(pt, act) for pt, act in sorted(found.items()))
    return VertexData(vertices)


def has_positive_relation(vectors: Sequence[Sequence[Fraction]], dim: int) -> bool:
    """Whether ``sum alpha_k a_k = 0`` for some strictly positive ``alpha``.

    Scaling lets us ask for ``alpha >= 1``; substituting ``alpha = 1 + beta``
    leaves a nonnegative feasibility problem.
    """
    if not vectors:
        return True
    rows = [[Fraction(a[i]) for a in vectors] for i in range(dim)]
    rhs = [-sum(row, Fraction(0)) for row in rows]
    return nonnegative_solution(rows, rhs, len(vectors)) is not None


@dataclass(frozen=True)
class PresentationAnalysis:
    status: str  # "nonempty" or "empty"
    generic: bool
    simple: bool
    bounded: bool
    redundant: frozenset[int]


def analyze_presentation(p: Presentation, vertex_data: VertexData | None = None) -> PresentationAnalysis:
    """Genericity, simplicity, boundedness and redundant inequalities.

    ``P`` is pointed because the normals span, so every nonempty face holds a
    vertex.  A dependent set of normals active at some point is therefore
    active at a vertex, and genericity reduces to checking that every vertex
    lies on exactly ``n`` hyperplanes.  Likewise ``F_i`` is empty exactly when
    no vertex lies on hyperplane ``i``.
    """
    _require_full_rank(p)
    data = vertex_data or enumerate_vertices(p)
    bounded = has_positive_relation(p.normals, p.n)
    if not data.vertices:
        return PresentationAnalysis("empty", False, False, bounded, frozenset(range(p.m)))
    touched = frozenset().union(*data.active_sets)
    simple = all(len(act) == p.n for act in data.active_sets)
    redundant = frozenset(range(p.m)) - touched
    return PresentationAnalysis("nonempty", simple, simple, bounded, redundant)


def normalize_to_unit_b(p: Presentation) -> Presentation:
    """Move the vertex barycentre to the origin and rescale so every ``b_i = 1``."""
    data = enumerate_vertices(p)
    if not data.vertices:
        raise DomainError("cannot normalize an empty polyhedron")
    if not has_positive_relation(p.normals, p.n):
        raise DomainError("cannot normalize an unbounded polyhedron")
    count = len(data.vertices)
    center = [sum((v.point[i] for v in data.vertices), Fraction(0)) / count for i in range(p.n)]
    scales = [p.value(k, center) for k in range(p.m)]
    if any(s <= 0 for s in scales):
        raise DomainError("polyhedron has empty interior", witness=[k for k, s in enumerate(scales) if s <= 0])
    normals = [[x / s for x in a] for a, s in zip(p.normals, scales)]
    return Presentation.from_normals(normals, [1] * p.m, p.n)


def _require_unit_b(p: Presentation) -> None:
    if any(x != 1 for x in p.b):
        raise DomainError("presentation must be normalized to b = (1, ..., 1)")


def in_convex_hull(points: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> bool:
    lifted = [list(pt) + [Fraction(1)] for pt in points]
    return in_cone(lifted, list(target) + [Fraction(1)]).member


def polar_vertices(p: Presentation) -> list[int]:
    """Indices ``i`` for which ``a_i`` is a vertex of ``conv(a_1, ..., a_m)``.

    When several normals coincide the first one is kept.
    """
    _require_unit_b(p)
    normals = p.normals
    out = []
    for i, a in enumerate(normals):
        if any(normals[j] == a for j in range(i)):
            continue
        others = [normals[j] for j in range(p.m) if j != i and normals[j] != a]
        if not others or not in_convex_hull(others, a):
            out.append(i)
    return out


def gale_dual(A: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Rows form the canonical basis of linear relations among the columns of A."""
    m = ncols if ncols is not None else len(A[0])
    if rank(A) != len(A):
        raise RankDeficiencyError("A must have full row rank")
    return kernel_basis(A, m)


def gale_dual_of(p: Presentation) -> list[list[Fraction]]:
    _require_full_rank(p)
    return gale_dual(p.A, p.m)


@dataclass(frozen=True)
class GaleDiagram:
    G: tuple[tuple[Fraction, ...], ...]
    m: int

    @property
    def vectors(self) -> list[tuple[Fraction, ...]]:
        return [tuple(row[k] for row in self.G) for k in range(self.m)]


def gale_diagram(p: Presentation) -> GaleDiagram:
    """Basis of the affine dependencies of ``a_1, ..., a_m`` (requires b = 1)."""
    _require_unit_b(p)
    _require_full_rank(p)
    if not has_positive_relation(p.normals, p.n):
        raise DomainError("Gale diagram requested for an unbounded polyhedron")
    rows = [list(r) for r in p.A] + [[Fraction(1)] * p.m]
    g = kernel_basis(rows, p.m)
    return GaleDiagram(tuple(tuple(r) for r in g), p.m)


def face_from_gale(diagram: GaleDiagram, subset: Iterable[int]) -> bool:
    """Whether the facets in ``subset`` meet: ``0`` in ``conv(g_j : j not in I)``."""
    idx = frozenset(subset)
    if any(not 0 <= i < diagram.m for i in idx):
        raise DomainError("index out of range for this Gale diagram")
    vectors = diagram.vectors
    rest = [vectors[j] for j in range(diagram.m) if j not in idx]
    if not rest:
        return False
    return in_convex_hull(rest, [Fraction(0)] * len(diagram.G))


def nerve_complex(p: Presentation, vertex_data: VertexData | None = None) -> SimplicialComplex:
    """Sets of facets with nonempty intersection; redundant ones become ghosts."""
    data = vertex_data or enumerate_vertices(p)
    analysis = analyze_presentation(p, data)
    if not analysis.generic:
        raise DomainError("nerve complex requires a generic presentation")
    return SimplicialComplex.from_faces(p.m, data.active_sets)


@dataclass(frozen=True)
class CubicalFace:
    """The cube ``C_{J subset I}``: zero on ``J``, free on ``I - J``, one elsewhere.

    It is the preimage of a face of ``I^m`` whose vertices are the barycentres
    of the faces of ``P`` between ``G = cap_{j in J} F_j`` and
    ``H = cap_{i in I} F_i``.
    """

    outer: frozenset[int]  # J, indexing the larger face G
    inner: frozenset[int]  # I, indexing the smaller face H
    m: int

    @property
    def dimension(self) -> int:
        return len(self.inner) - len(self.outer)

    def image_vertices(self) -> list[tuple[int, ...]]:
        free = sorted(self.inner - self.outer)
        out = []
        for size in range(len(free) + 1):
            for zeros_ in combinations(free, size):
                zero_set = self.outer | frozenset(zeros_)
                out.append(tuple(0 if k in zero_set else 1 for k in range(self.m)))
        return sorted(out)


def cubical_subdivision(p: Presentation) -> list[CubicalFace]:
    """All faces ``C_{G >= H}`` of the cubical subdivision of a simple polytope."""
    data = enumerate_vertices(p)
    analysis = analyze_presentation(p, data)
    if not analysis.generic or not analysis.bounded:
        raise DomainError("cubical subdivision needs a simple bounded polytope with a generic presentation")
    nerve = SimplicialComplex.from_faces(p.m, data.active_sets)
    faces = []
    for inner in sorted(nerve.faces, key=lambda f: (len(f), sorted(f))):
        items = sorted(inner)
        for size in range(len(items) + 1):
            for outer in combinations(items, size):
                faces.append(CubicalFace(frozenset(outer), inner, p.m))
    return faces


def facets_meet(p: Presentation, subset: Iterable[int], vertex_data: VertexData | None = None) -> bool:
    """Direct test: do the hyperplanes in ``subset`` meet inside ``P``?"""
    idx = frozenset(subset)
    data = vertex_data or enumerate_vertices(p)
    return any(idx <= act for act in data.active_sets)
