"""Simplicial complexes with ghost vertices and the cells of moment-angle complexes.

Vertices are 0-based integers ``0..m-1`` throughout the Python API.  The JSON
layer translates to and from the 1-based labels used in input files.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable

from .errors import DomainError

Face = frozenset


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on the ground set ``{0, ..., m-1}``.

    ``faces`` is closed under taking subsets and always contains the empty
    face.  Ground elements that are not vertices are ghost vertices.
    """

    m: int
    faces: frozenset = field(repr=False)

    @classmethod
    def from_faces(cls, m: int, faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Build the closure of ``faces`` (maximal faces suffice)."""
        closed: set[frozenset[int]] = {frozenset()}
        for face in faces:
            face = frozenset(face)
            if any(not 0 <= v < m for v in face):
                raise DomainError(f"face {sorted(face)} uses a vertex outside the ground set of size {m}")
            if face in closed:
                continue
            items = sorted(face)
            for size in range(len(items) + 1):
                closed.update(frozenset(c) for c in combinations(items, size))
        return cls(m, frozenset(closed))

    @classmethod
    def empty(cls, m: int) -> "SimplicialComplex":
        """The complex with only the empty face; every element is a ghost."""
        return cls(m, frozenset({frozenset()}))

    @classmethod
    def simplex(cls, vertices: Iterable[int], m: int) -> "SimplicialComplex":
        return cls.from_faces(m, [vertices])

    @classmethod
    def simplex_boundary(cls, vertices: Iterable[int], m: int) -> "SimplicialComplex":
        vs = sorted(vertices)
        return cls.from_faces(m, [set(vs) - {v} for v in vs])

    def __contains__(self, face: Iterable[int]) -> bool:
        return frozenset(face) in self.faces

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for f in self.faces if len(f) == 1 for v in f)

    @property
    def ghost_vertices(self) -> frozenset[int]:
        return frozenset(range(self.m)) - self.vertices

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def maximal_faces(self) -> list[frozenset[int]]:
        maximal = [f for f in self.faces if not any(f < g for g in self.faces if len(g) == len(f) + 1)]
        return sorted(maximal, key=lambda f: (len(f), sorted(f)))

    def faces_of_size(self, size: int) -> list[frozenset[int]]:
        return sorted((f for f in self.faces if len(f) == size), key=sorted)

    def is_pure(self) -> bool:
        d = self.dimension
        return all(len(f) == d + 1 for f in self.maximal_faces())

    def minimal_nonfaces(self) -> list[frozenset[int]]:
        """Minimal subsets of the ground set that are not faces (ghosts included)."""
        out = []
        ground = range(self.m)
        for size in range(1, self.m + 1):
            for cand in combinations(ground, size):
                s = frozenset(cand)
                if s in self.faces:
                    continue
                if all(s - {v} in self.faces for v in s):
                    out.append(s)
        return out

    def full_subcomplex(self, subset: Iterable[int]) -> frozenset:
        s = frozenset(subset)
        return frozenset(f for f in self.faces if f <= s)

    def f_vector(self) -> list[int]:
        """``(f_{-1}, f_0, ..., f_{dim})``."""
        counts = [0] * (self.dimension + 2)
        for f in self.faces:
            counts[len(f)] += 1
        return counts

    def euler_characteristic(self) -> int:
        """Unreduced Euler characteristic, ignoring the empty face."""
        return sum((-1) ** (len(f) - 1) for f in self.faces if f)

    def restrict_ground(self, keep: Iterable[int]) -> "SimplicialComplex":
        """Drop ground elements not in ``keep`` and relabel the rest in order."""
        keep = sorted(keep)
        relabel = {v: i for i, v in enumerate(keep)}
        faces = [frozenset(relabel[v] for v in f) for f in self.faces if f <= set(keep)]
        return SimplicialComplex(len(keep), frozenset(faces))

    def is_sphere_candidate(self) -> bool:
        """Pseudomanifold test plus the Euler characteristic of a sphere.

        The complex must be pure, every ridge must lie in exactly two facets,
        the facets must be connected through ridges, and the Euler
        characteristic must be that of a sphere of the same dimension.  The
        complex with only the empty face counts as the (-1)-sphere.
        """
        d = self.dimension
        if d == -1:
            return True
        if not self.is_pure():
            return False
        facets = self.maximal_faces()
        if d == 0:
            return len(facets) == 2
        if not _ridges_paired(facets) or not _ridge_connected(facets):
            return False
        return self.euler_characteristic() == 1 + (-1) ** d


def _ridges_paired(facets: list[frozenset[int]]) -> bool:
    counts: dict[frozenset[int], int] = {}
    for f in facets:
        for v in f:
            ridge = f - {v}
            counts[ridge] = counts.get(ridge, 0) + 1
    return all(c == 2 for c in counts.values())


def _ridge_connected(facets: list[frozenset[int]]) -> bool:
    if not facets:
        return True
    by_ridge: dict[frozenset[int], list[int]] = {}
    for idx, f in enumerate(facets):
        for v in f:
            by_ridge.setdefault(f - {v}, []).append(idx)
    seen = {0}
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        for v in facets[idx]:
            for other in by_ridge[facets[idx] - {v}]:
                if other not in seen:
                    seen.add(other)
                    queue.append(other)
    return len(seen) == len(facets)


def join_complexes(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    """The join; vertices of ``k2`` are shifted by ``k1.m``."""
    shifted = [frozenset(v + k1.m for v in f) for f in k2.faces]
    faces = frozenset(f | g for f in k1.faces for g in shifted)
    return SimplicialComplex(k1.m + k2.m, faces)


def fh_vectors(k: SimplicialComplex) -> tuple[list[int], list[int]]:
    """f-vector ``(f_{-1}, ..., f_{n-1})`` and h-vector ``(h_0, ..., h_n)``.

    Requires a pure complex; ghost vertices do not enter the count.
    """
    if not k.is_pure():
        raise DomainError("h-vector requested for a non-pure complex")
    f = k.f_vector()
    n = k.dimension + 1
    h = [
        sum((-1) ** (j - i) * comb(n - i, j - i) * f[i] for i in range(j + 1))
        for j in range(n + 1)
    ]
    return f, h


@dataclass(frozen=True)
class Cell:
    face: frozenset[int]
    disc_dim: int
    torus_dim: int

    @property
    def dimension(self) -> int:
        return self.disc_dim + self.torus_dim


@dataclass(frozen=True)
class CellStructure:
    """The pieces ``(D^2)^I x (S^1)^([m] - I)``, one per face ``I``."""

    cells: tuple[Cell, ...]
    total_dim: int
    sphere_candidate: bool

    @property
    def manifold_candidate(self) -> bool:
        return self.sphere_candidate

    def euler_characteristic(self) -> int:
        """Euler characteristic from the refined CW structure.

        Splitting each disc into a 0-, 1- and 2-cell and each circle into a
        0- and 1-cell, the piece for face ``I`` contributes ``(1-1)^(m-|I|)``
        once the 2-cells of ``I`` are fixed, so only faces with ``|I| = m``
        survive.  The sum is written out in full to keep it checkable.
        """
        total = 0
        for cell in self.cells:
            free = cell.torus_dim
            total += sum((-1) ** j * comb(free, j) for j in range(free + 1))
        return total


def moment_angle_cells(k: SimplicialComplex) -> CellStructure:
    cells = tuple(
        Cell(face, 2 * len(face), k.m - len(face))
        for face in sorted(k.faces, key=lambda f: (len(f), sorted(f)))
    )
    n = k.dimension + 1
    return CellStructure(cells, k.m + n, k.is_sphere_candidate())
