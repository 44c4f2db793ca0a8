"""Intersections of quadrics ``sum_k gamma_k |z_k|^2 = delta`` and their polyhedra."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError, RankDeficiencyError
from .exact import kernel_basis, mat_vec, rank, rref, solve
from .lattice import IntegerLattice, lattice_from_generators, sublattice_invariants
from .limits import check_m
from .lp import ConeCertificate, feasible_point, in_cone
from .polytopes import (
    Presentation,
    analyze_presentation,
    enumerate_vertices,
    gale_dual_of,
    has_positive_relation,
)
from .topology import TopologyDescription, sphere_product_torus

REALMS = ("hermitian", "real")


@dataclass(frozen=True)
class QuadricSystem:
    """``Gamma`` is ``(m-n) x m`` with columns ``gamma_k``; ``delta`` has length ``m-n``."""

    Gamma: tuple[tuple[Fraction, ...], ...]
    delta: tuple[Fraction, ...]
    m: int
    realm: str = "hermitian"

    def __init__(self, Gamma: Iterable[Iterable], delta: Iterable, m: int | None = None, realm: str = "hermitian") -> None:
        rows = tuple(tuple(Fraction(x) for x in r) for r in Gamma)
        rhs = tuple(Fraction(x) for x in delta)
        width = m if m is not None else (len(rows[0]) if rows else 0)
        if len(rows) != len(rhs):
            raise DomainError("Gamma must have one row per entry of delta")
        if any(len(r) != width for r in rows):
            raise DomainError("Gamma rows have inconsistent lengths")
        if realm not in REALMS:
            raise DomainError(f"realm must be one of {REALMS}")
        object.__setattr__(self, "Gamma", rows)
        object.__setattr__(self, "delta", rhs)
        object.__setattr__(self, "m", width)
        object.__setattr__(self, "realm", realm)

    @property
    def codim(self) -> int:
        """Number of quadrics, ``m - n``."""
        return len(self.Gamma)

    @property
    def n(self) -> int:
        return self.m - self.codim

    @property
    def columns(self) -> list[tuple[Fraction, ...]]:
        return [tuple(r[k] for r in self.Gamma) for k in range(self.m)]

    def with_realm(self, realm: str) -> "QuadricSystem":
        return QuadricSystem(self.Gamma, self.delta, self.m, realm)


def _require_spanning(q: QuadricSystem) -> None:
    if rank(q.Gamma) != q.codim:
        raise RankDeficiencyError("the columns of Gamma do not span R^(m-n)")


def quadrics_from_presentation(p: Presentation, realm: str = "hermitian") -> QuadricSystem:
    gamma = gale_dual_of(p)
    delta = mat_vec(gamma, p.b)
    return QuadricSystem(gamma, delta, p.m, realm)


def polyhedron_from_quadrics(q: QuadricSystem) -> Presentation:
    """Offsets solve ``Gamma y = delta``; rows of ``A`` span the relations of Gamma."""
    _require_spanning(q)
    b = solve(q.Gamma, q.delta, q.m) if q.Gamma else [Fraction(0)] * q.m
    if b is None:
        raise DomainError("delta is not in the column span of Gamma")
    a = kernel_basis(q.Gamma, q.m) if q.Gamma else [[Fraction(int(i == j)) for j in range(q.m)] for i in range(q.m)]
    return Presentation(a, b, q.m - q.codim)


@dataclass(frozen=True)
class NondegeneracyResult:
    """``failed`` is ``None``, ``"a"`` (delta outside the cone) or ``"b"``.

    For ``"b"`` the witness ``subset`` holds the ``m-n-1`` columns whose cone
    already contains delta.
    """

    nondegenerate: bool
    failed: str | None
    subset: tuple[int, ...] | None
    certificate: ConeCertificate

    def __bool__(self) -> bool:
        return self.nondegenerate


def is_nondegenerate(q: QuadricSystem) -> NondegeneracyResult:
    check_m(q.m, "nondegeneracy scan")
    cols = q.columns
    full = in_cone(cols, q.delta)
    if not full.member:
        return NondegeneracyResult(False, "a", None, full)
    size = q.codim - 1
    if size >= 0:
        for subset in combinations(range(q.m), size):
            cert = in_cone([cols[k] for k in subset], q.delta)
            if cert.member:
                return NondegeneracyResult(False, "b", subset, cert)
    return NondegeneracyResult(True, None, None, full)


def positive_row_combination(q: QuadricSystem) -> list[Fraction] | None:
    """A vector ``y`` with every entry of ``y Gamma`` at least one, if any exists."""
    if q.codim == 0:
        return [] if q.m == 0 else None
    constraints = [([r[k] for r in q.Gamma], Fraction(1)) for k in range(q.m)]
    return feasible_point([], constraints, q.codim)


@dataclass(frozen=True)
class LinkForm:
    """Homogeneous quadrics ``sum_k g_k |w_k|^2 = 0`` on the unit sphere.

    ``scale[k] = alpha_k / c`` records the positive rescaling taking
    ``|z_k|^2`` to ``|w_k|^2``.
    """

    g: tuple[tuple[Fraction, ...], ...]
    m: int
    scale: tuple[Fraction, ...] = field(default=())

    @property
    def vectors(self) -> list[tuple[Fraction, ...]]:
        return [tuple(r[k] for r in self.g) for k in range(self.m)]


def link_normal_form(q: QuadricSystem) -> LinkForm:
    """Bring a bounded nondegenerate system to one sphere plus homogeneous quadrics.

    A strictly positive row ``alpha = y Gamma`` exists exactly when the system
    is bounded; it becomes the first quadric with constant ``c = <y, delta>``.
    The remaining rows span the combinations orthogonal to ``delta``.  After
    rescaling ``w_k = sqrt(alpha_k / c) z_k`` the homogeneous block is put in
    reduced row echelon form.
    """
    if not is_nondegenerate(q):
        raise DomainError("link normal form needs a nondegenerate system")
    y = positive_row_combination(q)
    if y is None:
        raise DomainError("link normal form needs a bounded system (no positive combination of the quadrics)")
    alpha = [sum((yi * r[k] for yi, r in zip(y, q.Gamma)), Fraction(0)) for k in range(q.m)]
    c = sum((yi * d for yi, d in zip(y, q.delta)), Fraction(0))
    if c <= 0:
        raise DomainError("the positive quadric has a nonpositive constant; the system is empty")
    orth = kernel_basis([list(q.delta)], q.codim)
    rows = []
    for w in orth:
        row = [sum((wi * r[k] for wi, r in zip(w, q.Gamma)), Fraction(0)) * c / alpha[k] for k in range(q.m)]
        rows.append(row)
    reduced, _ = rref(rows, q.m) if rows else ([], [])
    return LinkForm(tuple(tuple(r) for r in reduced), q.m, tuple(a / c for a in alpha))


def _strip_redundant(q: QuadricSystem) -> tuple[QuadricSystem, list[int]]:
    """Drop coordinates whose inequality is redundant; they split off circles."""
    p = polyhedron_from_quadrics(q)
    analysis = analyze_presentation(p)
    redundant = sorted(analysis.redundant)
    if not redundant:
        return q, []
    keep = [k for k in range(q.m) if k not in analysis.redundant]
    return quadrics_from_presentation(p.restrict(keep), q.realm), redundant


def classify_intersection_small(q: QuadricSystem) -> TopologyDescription:
    """Topology of a compact nondegenerate Hermitian system with at most two essential quadrics."""
    if q.realm != "hermitian":
        raise DomainError("small-case classification is for Hermitian quadrics")
    if not is_nondegenerate(q):
        raise DomainError("classification needs a nondegenerate system")
    if positive_row_combination(q) is None:
        raise DomainError("classification needs a bounded system")
    core, redundant = _strip_redundant(q)
    r = len(redundant)
    n = core.n
    stripped = [i + 1 for i in redundant]
    if core.codim <= 1:
        desc = sphere_product_torus([2 * n + 1] if core.codim else [], r)
        return TopologyDescription(desc.tag, {**desc.parameters, "redundant": stripped}, description=desc.description)
    if core.codim == 2:
        link = link_normal_form(core)
        row = link.g[0]
        p = sum(1 for x in row if x > 0)
        neg = sum(1 for x in row if x < 0)
        desc = sphere_product_torus([2 * p - 1, 2 * neg - 1], r)
        return TopologyDescription(
            desc.tag,
            {**desc.parameters, "p": p, "q": neg, "redundant": stripped},
            description=desc.description,
        )
    params: dict = {"codim": core.codim, "redundant": stripped}
    note = "m-n >= 3: only Betti numbers are reported"
    try:
        from .cohomology import zk_betti_oracle
        from .polytopes import nerve_complex

        params["betti"] = zk_betti_oracle(nerve_complex(polyhedron_from_quadrics(q)))
    except DomainError:
        pass
    return TopologyDescription("unclassified", params, description=note)


@dataclass(frozen=True)
class Stabilizer:
    """Isotropy ``L / Z<gamma_j : j not in I>`` at the vertex with active set ``I``."""

    active: frozenset[int]
    invariants: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return not self.invariants

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out


@dataclass(frozen=True)
class MomentMapReport:
    proper: bool
    regular_value: bool
    action_free: bool | None
    stabilizers: tuple[Stabilizer, ...]
    lattice: IntegerLattice


def gamma_lattice(q: QuadricSystem) -> IntegerLattice:
    _require_spanning(q)
    return lattice_from_generators(q.columns, q.codim)


def vertex_stabilizers(q: QuadricSystem, active_sets: Sequence[frozenset[int]]) -> list[Stabilizer]:
    lattice = gamma_lattice(q)
    cols = q.columns
    out = []
    for active in active_sets:
        gens = [cols[j] for j in range(q.m) if j not in active]
        diag = sublattice_invariants(gens, lattice)
        out.append(Stabilizer(frozenset(active), tuple(d for d in diag if d != 1)))
    return out


def moment_map_report(q: QuadricSystem) -> MomentMapReport:
    """Properness, regularity of ``delta`` and the isotropy of the torus action.

    Stabilizers are computed at every vertex support from the lattice ``L``
    spanned by the columns of Gamma; freeness means all of them are trivial.
    """
    p = polyhedron_from_quadrics(q)
    proper = has_positive_relation(p.normals, p.n)
    regular = is_nondegenerate(q).nondegenerate
    lattice = gamma_lattice(q)
    if not regular:
        return MomentMapReport(proper, False, None, (), lattice)
    data = enumerate_vertices(p)
    stabilizers = tuple(vertex_stabilizers(q, data.active_sets))
    free = all(s.trivial for s in stabilizers)
    return MomentMapReport(proper, True, free, stabilizers, lattice)
