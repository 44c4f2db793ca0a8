"""H-minimal Lagrangian submanifolds ``N = R x_D T`` built from real quadrics.

``R`` is the real locus of the quadric system, ``T`` the torus of the
lattice ``L`` spanned by the columns of Gamma, and ``D = (1/2) L* / L*`` its
2-torsion acting on ``R`` by coordinate sign changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian

from .errors import DomainError, InternalInvariantError, RankDeficiencyError
from .exact import dot, inverse, rank, transpose
from .fans import is_delzant
from .lattice import IntegerLattice, lattice_from_generators
from .polytopes import analyze_presentation, enumerate_vertices
from .quadrics import (
    QuadricSystem,
    is_nondegenerate,
    link_normal_form,
    polyhedron_from_quadrics,
    positive_row_combination,
    vertex_stabilizers,
)
from .topology import TopologyDescription

Signs = tuple[int, ...]


@dataclass(frozen=True)
class DGammaAction:
    """Generators of ``D`` as ``(phi, signs)`` with ``signs[k] = exp(2 pi i <gamma_k, phi>)``."""

    generators: tuple[tuple[tuple[Fraction, ...], Signs], ...]
    lattice: IntegerLattice

    @property
    def sign_vectors(self) -> list[Signs]:
        return [signs for _, signs in self.generators]

    def elements(self) -> list[Signs]:
        """Sign vectors of all ``2^(m-n)`` group elements, identity first."""
        m = len(self.generators[0][1]) if self.generators else 0
        out = []
        for choice in cartesian((0, 1), repeat=len(self.generators)):
            signs = [1] * m
            for used, (_, gen) in zip(choice, self.generators):
                if used:
                    signs = [a * b for a, b in zip(signs, gen)]
            out.append(tuple(signs))
        return out


def signs_of(q: QuadricSystem, phi: tuple[Fraction, ...]) -> Signs:
    """``exp(2 pi i <gamma_k, phi>)`` for each column, which must be real."""
    out = []
    for col in q.columns:
        twice = 2 * dot(col, phi)
        if twice.denominator != 1:
            raise DomainError(f"phi {list(map(str, phi))} is not in (1/2) L*")
        out.append(-1 if twice.numerator % 2 else 1)
    return tuple(out)


def dual_basis(lattice: IntegerLattice) -> list[tuple[Fraction, ...]]:
    """Rows ``d_j`` with ``<b_i, d_j> = [i = j]`` for the lattice basis ``b_i``."""
    inv = inverse([list(b) for b in lattice.basis])
    return [tuple(row) for row in transpose(inv, lattice.rank)]


def dgamma_action(q: QuadricSystem) -> DGammaAction:
    """Half the dual basis of the Hermite basis of ``L`` generates ``D``."""
    if q.codim == 0:
        return DGammaAction((), IntegerLattice(0, ()))
    if rank(q.Gamma) != q.codim:
        raise RankDeficiencyError("the columns of Gamma do not generate a full-rank lattice")
    lattice = lattice_from_generators(q.columns, q.codim)
    gens = []
    for d in dual_basis(lattice):
        phi = tuple(x / 2 for x in d)
        gens.append((phi, signs_of(q, phi)))
    return DGammaAction(tuple(gens), lattice)


@dataclass(frozen=True)
class EmbeddingCheck:
    """``embedding`` plus either the failing vertex support or the lattice certificate.

    The support of a vertex is the set of coordinates that do not vanish
    there, the complement of its active set.
    """

    embedding: bool
    failing_support: frozenset[int] | None
    lattice_basis: tuple[tuple[Fraction, ...], ...] | None
    route: str

    def __bool__(self) -> bool:
        return self.embedding


def hminimal_embedding_check(q: QuadricSystem) -> EmbeddingCheck:
    """Is ``N -> C^m`` an embedding?  Same as the polyhedron being Delzant.

    Bounded polyhedra go through the Delzant test on the normals.  Unbounded
    ones are tested on the Gale side: ``Z<gamma_j : j in S> = L`` for the
    support ``S`` of every vertex.
    """
    if not is_nondegenerate(q):
        raise DomainError("embedding check needs a nondegenerate system")
    if rank(q.Gamma) != q.codim:
        raise RankDeficiencyError("the columns of Gamma do not generate a full-rank lattice")
    p = polyhedron_from_quadrics(q)
    everything = frozenset(range(q.m))
    if analyze_presentation(p).bounded:
        result = is_delzant(p)
        if result.delzant:
            return EmbeddingCheck(True, None, result.lattice.basis, "delzant")
        return EmbeddingCheck(False, everything - result.failing_active, None, "delzant")
    data = enumerate_vertices(p)
    for stab in vertex_stabilizers(q, data.active_sets):
        if not stab.trivial:
            return EmbeddingCheck(False, everything - stab.active, None, "vertex_lattices")
    return EmbeddingCheck(True, None, lattice_from_generators(q.columns, q.codim).basis, "vertex_lattices")


def _one_quadric(m: int) -> TopologyDescription:
    if m % 2 == 0:
        return TopologyDescription(
            "N_of_m",
            {"m": m, "orientable": True},
            "the antipodal involution preserves the orientation of the sphere",
            f"N({m}) = S^{m - 1} × S^1",
        )
    return TopologyDescription(
        "N_of_m",
        {"m": m, "orientable": False},
        "the antipodal involution reverses the orientation of the sphere",
        f"N({m}) = K^{m} (the {m}-dimensional Klein bottle)",
    )


def two_quadric_parameters(q: QuadricSystem) -> tuple[int, int, int, str]:
    """``(k, p, q, pattern)`` for a compact embedded case with two quadrics.

    The link normal form splits the coordinates into a positive and a
    negative block.  A free action of ``Z2 x Z2`` contains an element flipping
    exactly one block.  Pattern ``"a"`` is an element flipping exactly the
    positive block; ``k`` is then the number of positive coordinates flipped
    by another generator.  Pattern ``"b"`` is the mirror case, and the blocks
    trade names so that the output again reads ``N_k(p, q)``.
    """
    link = link_normal_form(q)
    row = link.g[0]
    positive = frozenset(i for i, x in enumerate(row) if x > 0)
    negative = frozenset(i for i, x in enumerate(row) if x < 0)
    if len(positive) + len(negative) != q.m:
        raise InternalInvariantError("zero entry in the homogeneous quadric of a nondegenerate system")
    action = dgamma_action(q)
    elements = action.elements()[1:]

    def flips(signs: Signs) -> frozenset[int]:
        return frozenset(i for i, s in enumerate(signs) if s < 0)

    for pattern, block in (("a", positive), ("b", negative)):
        exact = [s for s in elements if flips(s) == block]
        if exact:
            first = exact[0]
            second = next(s for s in elements if s != first)
            k = len(flips(second) & block)
            return k, len(block), q.m - len(block), pattern
    raise InternalInvariantError("no element of D flips exactly one block; the action is not free")


def _polygon(q: QuadricSystem) -> TopologyDescription:
    p = polyhedron_from_quadrics(q)
    redundant = sorted(analyze_presentation(p).redundant)
    r = len(redundant)
    sides = q.m - r
    genus = 1 + 2 ** (sides - 3) * (sides - 4) if sides >= 3 else 0
    base = q.m - 2
    params = {
        "genus": genus,
        "base_torus_dim": base,
        "polygon_sides": sides,
        "redundant": [i + 1 for i in redundant],
        "components": 2 ** r,
    }
    fibre = f"S_{genus}" if r == 0 else f"{2 ** r} disjoint copies of S_{genus}"
    return TopologyDescription(
        "surface_bundle",
        params,
        "fibre is orientable",
        f"bundle over T^{base} with fibre {fibre}",
    )


def classify_lagrangian(q: QuadricSystem) -> TopologyDescription:
    """Topology of ``N`` in the cases that are fully understood, structural data otherwise."""
    check = hminimal_embedding_check(q)
    if not check.embedding:
        support = sorted(i + 1 for i in check.failing_support or ())
        return TopologyDescription(
            "immersion_only",
            {"failing_support": support},
            description="N is only immersed: the columns of Gamma on a vertex support span a proper sublattice",
        )
    bounded = positive_row_combination(q) is not None
    if q.codim == 1:
        return _one_quadric(q.m)
    if q.codim == 2 and bounded:
        k, p, qq, pattern = two_quadric_parameters(q)
        return TopologyDescription(
            "N_kpq",
            {"k": k, "p": p, "q": qq, "pattern": pattern, "k_equivalent": p - k},
            "k and p - k describe the same manifold",
            f"N_{k}({p},{qq}) = (S^{p - 1} × S^{qq - 1}) ×_(Z2×Z2) (S^1 × S^1)",
        )
    if q.n == 2 and bounded:
        return _polygon(q)
    base = q.codim
    return TopologyDescription(
        "bundle_generic",
        {"fibre_dim": q.n, "base_torus_dim": base, "bounded": bounded},
        description=f"bundle over T^{base} with fibre R; principal T^{base}-bundle over R/D",
    )


@dataclass(frozen=True)
class ToricTargetCheck:
    valid: bool
    reasons: tuple[str, ...]
    real_points_dim: int
    lagrangian_dim: int


def toric_target_check(first: QuadricSystem, second: QuadricSystem) -> ToricTargetCheck:
    """Bookkeeping for a Lagrangian in the toric manifold cut out by ``first``.

    The real locus of the joint system, modulo ``D`` of the first system, has
    dimension ``n + l - m``; the Lagrangian itself has dimension ``n``.
    """
    if first.m != second.m:
        raise DomainError("both systems must live in the same C^m")
    joint = QuadricSystem(first.Gamma + second.Gamma, first.delta + second.delta, first.m, "real")
    reasons = []
    for name, system in (("first", first), ("second", second), ("joint", joint)):
        if rank(system.Gamma) != system.codim:
            reasons.append(f"{name} system has dependent quadrics")
            continue
        if not is_nondegenerate(system):
            reasons.append(f"{name} system is degenerate")
            continue
        if not hminimal_embedding_check(system).embedding:
            reasons.append(f"{name} system has a non-Delzant polyhedron")
    n = first.n
    ell = second.n
    return ToricTargetCheck(not reasons, tuple(reasons), n + ell - first.m, n)

