"""Exact feasibility linear programming and cone membership certificates.

Only phase one of the simplex method is needed here: every question the
package asks is a feasibility question.  Pivoting follows Bland's rule, which
is deterministic and cannot cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InternalInvariantError
from .exact import dot


def nonnegative_solution(rows: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction], ncols: int) -> list[Fraction] | None:
    """Some ``x >= 0`` with ``rows @ x == rhs``, or ``None`` if none exists."""
    m = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    b = [Fraction(x) for x in rhs]
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]
    # Tableau columns: ncols structural variables, then m artificials, then rhs.
    width = ncols + m
    tableau = [a[i] + [Fraction(int(j == i)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [ncols + i for i in range(m)]
    # Reduced costs of the phase-one objective (sum of artificials).
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(ncols):
            cost[j] -= tableau[i][j]
        cost[width] -= tableau[i][width]

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][width] / coef
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # The phase-one objective is bounded below by zero.
            raise InternalInvariantError("unbounded phase-one program")
        row = best[1]
        pivot = tableau[row][entering]
        tableau[row] = [x / pivot for x in tableau[row]]
        for i in range(m):
            if i != row and tableau[i][entering] != 0:
                c = tableau[i][entering]
                tableau[i] = [x - c * y for x, y in zip(tableau[i], tableau[row])]
        c = cost[entering]
        cost = [x - c * y for x, y in zip(cost, tableau[row])]
        basis[row] = entering

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * ncols
    for i, var in enumerate(basis):
        if var < ncols:
            x[var] = tableau[i][width]
    return x


def feasible_point(
    equalities: Sequence[tuple[Sequence[Fraction], Fraction]],
    inequalities: Sequence[tuple[Sequence[Fraction], Fraction]],
    dim: int,
) -> list[Fraction] | None:
    """A point ``x`` in R^dim with ``<c,x> = r`` and ``<c,x> >= r`` as listed.

    Free variables are split into positive and negative parts and every
    inequality gets a slack column.
    """
    nslack = len(inequalities)
    ncols = 2 * dim + nslack
    rows = []
    rhs = []
    for coeffs, r in equalities:
        rows.append([Fraction(c) for c in coeffs] + [-Fraction(c) for c in coeffs] + [Fraction(0)] * nslack)
        rhs.append(Fraction(r))
    for k, (coeffs, r) in enumerate(inequalities):
        slack = [Fraction(0)] * nslack
        slack[k] = Fraction(-1)
        rows.append([Fraction(c) for c in coeffs] + [-Fraction(c) for c in coeffs] + slack)
        rhs.append(Fraction(r))
    sol = nonnegative_solution(rows, rhs, ncols)
    if sol is None:
        return None
    return [sol[i] - sol[dim + i] for i in range(dim)]


@dataclass(frozen=True)
class ConeCertificate:
    """Outcome of a cone-membership test.

    Exactly one of ``coefficients`` (a nonnegative combination reproducing the
    target) and ``functional`` (nonnegative on every generator, negative on
    the target) is set.
    """

    member: bool
    coefficients: tuple[Fraction, ...] | None = None
    functional: tuple[Fraction, ...] | None = None

    def verify(self, generators: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> bool:
        if self.member:
            if self.coefficients is None or any(c < 0 for c in self.coefficients):
                return False
            combo = [sum((c * g[i] for c, g in zip(self.coefficients, generators)), Fraction(0)) for i in range(len(target))]
            return combo == [Fraction(t) for t in target]
        if self.functional is None:
            return False
        return all(dot(self.functional, g) >= 0 for g in generators) and dot(self.functional, target) < 0


def in_cone(generators: Sequence[Sequence[int | Fraction]], target: Sequence[int | Fraction]) -> ConeCertificate:
    """Decide whether ``target`` is a nonnegative combination of ``generators``."""
    dim = len(target)
    if any(len(g) != dim for g in generators):
        raise DomainError("generators and target live in different dimensions")
    gens = [[Fraction(x) for x in g] for g in generators]
    t = [Fraction(x) for x in target]
    k = len(gens)
    rows = [[gens[j][i] for j in range(k)] for i in range(dim)]
    coeffs = nonnegative_solution(rows, t, k)
    if coeffs is not None:
        return ConeCertificate(True, coefficients=tuple(coeffs))
    # Farkas alternative: y with <y, g_j> >= 0 for all j and <y, t> = -1.
    y = feasible_point([(t, Fraction(-1))], [(g, Fraction(0)) for g in gens], dim)
    if y is None:
        raise InternalInvariantError("neither a cone combination nor a separating functional exists")
    return ConeCertificate(False, functional=tuple(y))
