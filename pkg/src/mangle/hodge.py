"""Complex structures on moment-angle manifolds and their Hodge numbers.

A complex structure is fixed by ``Psi``, an ``m x l`` Gaussian-rational
matrix whose real part maps isomorphically onto ``Ker A``.  The Chern matrix
``M`` turns ``Psi`` into the Dolbeault differential ``d xi_j = sum_k M_jk v_k``.
Hodge numbers then come from the finite bigraded model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .complexes import fh_vectors
from .cohomology import toric_cohomology
from .dga import BigradedDGA
from .errors import DomainError, InternalInvariantError, RankDeficiencyError
from .exact import GaussianRational, conj, format_gaussian, kernel_basis, mat_mul, rank, transpose
from .fans import FanData, validate_fan
from .polytopes import gale_dual


def _g(x) -> GaussianRational:
    return GaussianRational.coerce(x)


@dataclass(frozen=True)
class PsiMap:
    """The ``m x l`` matrix ``Psi``; column ``j`` spans one complex direction."""

    Psi: tuple[tuple[GaussianRational, ...], ...]

    def __init__(self, Psi: Sequence[Sequence]) -> None:
        rows = tuple(tuple(_g(x) for x in r) for r in Psi)
        if len({len(r) for r in rows}) > 1:
            raise DomainError("Psi rows have inconsistent lengths")
        object.__setattr__(self, "Psi", rows)

    @property
    def m(self) -> int:
        return len(self.Psi)

    @property
    def ell(self) -> int:
        return len(self.Psi[0]) if self.Psi else 0

    def columns(self) -> list[list[GaussianRational]]:
        return [[r[j] for r in self.Psi] for j in range(self.ell)]

    def to_json(self) -> list[list[str]]:
        return [[format_gaussian(x) for x in r] for r in self.Psi]


def verify_psi(psi: PsiMap, fan: FanData) -> None:
    """Raise unless ``A Psi = 0`` and ``[Psi | conj Psi]`` has rank ``2l``."""
    if psi.m != fan.m:
        raise DomainError(f"Psi has {psi.m} rows, expected {fan.m}")
    ell = psi.ell
    if 2 * ell != fan.m - fan.n:
        raise DomainError(f"Psi has {ell} columns, expected (m-n)/2 = {(fan.m - fan.n) / 2}")
    product = mat_mul(fan.A, psi.Psi, ell)
    if any(x != 0 for row in product for x in row):
        raise DomainError("A Psi is not zero")
    doubled = [list(r) + [conj(x) for x in r] for r in psi.Psi]
    if rank(doubled) != 2 * ell:
        raise RankDeficiencyError("the real part of Psi is not injective ([Psi | conj Psi] has rank < 2l)")


def build_psi(fan: FanData, custom: Sequence[Sequence] | None = None) -> PsiMap:
    """Canonical ``Psi`` pairing kernel vectors as ``kappa_{2j-1} - i kappa_{2j}``.

    A custom matrix is verified instead of built.
    """
    if (fan.m - fan.n) % 2:
        raise DomainError("m - n is odd; add a ghost vertex with a zero vector first")
    if not fan.spans():
        raise RankDeficiencyError("vectors do not span R^n")
    if custom is not None:
        psi = PsiMap(custom)
    else:
        kernel = kernel_basis(fan.A, fan.m)
        ell = len(kernel) // 2
        cols = [
            [GaussianRational(a, -b) for a, b in zip(kernel[2 * j], kernel[2 * j + 1])]
            for j in range(ell)
        ]
        psi = PsiMap([[cols[j][k] for j in range(ell)] for k in range(fan.m)])
    verify_psi(psi, fan)
    return psi


def chern_matrix(psi: PsiMap, fan: FanData) -> list[list[GaussianRational]]:
    """An ``l x m`` matrix ``M`` with ``M Psi = 0`` and ``Gamma M^T`` injective.

    Rows are taken greedily from the canonical basis of the left kernel of
    ``Psi``, keeping a row only when it is independent of the rows of ``A``
    and the rows already kept.
    """
    verify_psi(psi, fan)
    ell = psi.ell
    left_kernel = kernel_basis(transpose(psi.Psi, ell), fan.m) if ell else []
    span: list[list] = [[_g(x) for x in r] for r in fan.A]
    current = rank(span) if span else 0
    chosen: list[list[GaussianRational]] = []
    for vec in left_kernel:
        if len(chosen) == ell:
            break
        row = [_g(x) for x in vec]
        trial = rank(span + [row])
        if trial > current:
            span.append(row)
            current = trial
            chosen.append(row)
    if len(chosen) != ell:
        raise InternalInvariantError("could not complete the Chern matrix")
    if any(x != 0 for row in mat_mul(chosen, psi.Psi, ell) for x in row):
        raise InternalInvariantError("M Psi is not zero")
    gamma = gale_dual(fan.A, fan.m)
    if ell and rank(mat_mul(gamma, transpose(chosen, fan.m), ell)) != ell:
        raise InternalInvariantError("Gamma M^T is not injective")
    return chosen


@dataclass(frozen=True)
class HodgeTable:
    entries: dict[tuple[int, int], int]
    ghost_count: int
    ell: int
    notes: tuple[str, ...] = field(default=())

    def get(self, p: int, q: int) -> int:
        return self.entries.get((p, q), 0)

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def to_json(self) -> dict[str, int]:
        return {f"({p},{q})": v for (p, q), v in sorted(self.entries.items()) if v}

    def diamond(self) -> str:
        """Rows by total degree ``p + q``; row ``r`` lists ``h^{r,0}, ..., h^{0,r}``."""
        if not self.entries:
            return ""
        top = max(p + q for p, q in self.entries)
        width = max(len(str(v)) for v in self.entries.values())
        lines = []
        for r in range(top + 1):
            cells = [str(self.get(p, r - p)).rjust(width) for p in range(r, -1, -1)]
            lines.append(" " * ((top - r) * (width + 1) // 2) + " ".join(cells))
        return "\n".join(lines)

    def total_betti_upper(self) -> list[int]:
        top = max((p + q for p, q in self.entries), default=0)
        out = [0] * (top + 1)
        for (p, q), v in self.entries.items():
            out[p + q] += v
        return out


def dolbeault_model(fan: FanData, psi: PsiMap | None = None) -> BigradedDGA:
    """``Lambda[xi_1..xi_l, eta_1..eta_l] (x) H*(V)`` with ``d xi_j = c(xi_j)``."""
    check = validate_fan(fan)
    if not (check.is_fan and check.complete):
        raise DomainError("Hodge numbers need a complete fan")
    if not check.regular:
        raise DomainError("Hodge numbers need a regular fan")
    ghosts = fan.complex.ghost_vertices
    if any(any(fan.vectors[g]) for g in ghosts):
        raise DomainError("ghost vertices must carry zero vectors")
    psi = psi if psi is not None else build_psi(fan)
    m_rows = chern_matrix(psi, fan)
    ring = toric_cohomology(fan)
    ell = psi.ell
    gens = tuple((f"xi{j + 1}", (1, 0)) for j in range(ell)) + tuple((f"eta{j + 1}", (0, 1)) for j in range(ell))
    diff = {}
    for j, row in enumerate(m_rows):
        image = ring.linear_form(row)
        if image:
            diff[j] = image
    return BigradedDGA(gens, ring, diff, "gaussian_rational")


def chern_kernel_dimension(model: BigradedDGA, ell: int) -> int:
    """``dim Ker c`` on the span of ``xi_1..xi_l``."""
    keys = sorted({idx for j in range(ell) for idx in model.differential.get(j, {})})
    if not keys:
        return ell
    rows = [[model.differential.get(j, {}).get(k, Fraction(0)) for k in keys] for j in range(ell)]
    return ell - rank(rows)


def _binom(top: int, p: int) -> int:
    return comb(top, p) if top >= 0 else 0


def check_hodge_bounds(table: HodgeTable, h2: int, kernel_dim: int) -> list[str]:
    """Every violated bound, as text; an empty list means all hold."""
    ell, k = table.ell, table.ghost_count
    h = table.get
    failures = []
    if not (max(k - ell, 0) <= kernel_dim <= k // 2):
        failures.append(f"dim Ker c = {kernel_dim} outside [{k - ell}, {k // 2}]")
    if k <= 1 and kernel_dim != 0:
        failures.append("c is not a monomorphism although k <= 1")
    for p in range(ell + 1 + k):
        low, high = _binom(max(k - ell, 0), p), _binom(k // 2, p)
        if not low <= h(p, 0) <= high:
            failures.append(f"h^{p},0 = {h(p, 0)} outside [{low}, {high}]")
    for q in range(ell + 2):
        if h(0, q) != comb(ell, q):
            failures.append(f"h^0,{q} = {h(0, q)} != C({ell},{q})")
    for q in range(1, ell + 3):
        expected = (ell - k) * _binom(ell, q - 1) + h(1, 0) * _binom(ell + 1, q)
        if h(1, q) != expected:
            failures.append(f"h^1,{q} = {h(1, q)} != {expected}")
    base = ell * (3 * ell + 1) // 2 - ell * k + (ell + 1) * h(2, 0)
    if not base - h2 <= h(2, 1) <= base:
        failures.append(f"h^2,1 = {h(2, 1)} outside [{base - h2}, {base}]")
    return failures


def hodge_numbers(fan: FanData, psi: PsiMap | None = None) -> HodgeTable:
    """All ``h^{p,q}`` of ``Z_K`` with the complex structure given by ``Psi``.

    The general bounds on Hodge numbers are checked on every call; a
    violation means a bug and raises ``InternalInvariantError``.
    """
    psi = psi if psi is not None else build_psi(fan)
    model = dolbeault_model(fan, psi)
    model.check_d_squared()
    entries = model.cohomology()
    k = len(fan.complex.ghost_vertices)
    table = HodgeTable(entries, k, psi.ell, model.base.notes)
    _, h = fh_vectors(fan.complex)
    h2 = h[2] if len(h) > 2 else 0
    failures = check_hodge_bounds(table, h2, chern_kernel_dimension(model, psi.ell))
    if failures:
        raise InternalInvariantError("Hodge bounds violated: " + "; ".join(failures))
    return table


def hodge_from_model(model: BigradedDGA, ghost_count: int = 0, ell: int = 0) -> HodgeTable:
    """Hodge table of an arbitrary model, for instance a product of models."""
    model.check_d_squared()
    return HodgeTable(model.cohomology(), ghost_count, ell)
