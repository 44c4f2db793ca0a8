"""Hermite and Smith normal forms, and lattices spanned by rational vectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import DomainError
from .exact import determinant, rank, solve, transpose


@dataclass(frozen=True)
class HermiteSmith:
    """Normal forms of an integer matrix ``M`` with their unimodular witnesses.

    ``hnf_transform @ M == hnf`` and ``smith_left @ M @ smith_right`` is the
    diagonal matrix carrying ``snf_diagonal``.
    """

    hnf: list[list[int]]
    hnf_transform: list[list[int]]
    snf_diagonal: list[int]
    smith_left: list[list[int]]
    smith_right: list[list[int]]


def _eye(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _as_int_matrix(rows: Sequence[Sequence[int | Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        new = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError(f"non-integer entry {f} in integer matrix")
            new.append(f.numerator)
        out.append(new)
    return out


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style HNF ``H = U M`` with ``U`` unimodular.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``, and zero
    rows sit at the bottom.
    """
    h = _as_int_matrix(rows)
    nrows = len(h)
    nc = ncols if ncols is not None else (len(h[0]) if h else 0)
    u = _eye(nrows)
    r = 0
    for col in range(nc):
        if r == nrows:
            break
        while True:
            nonzero = [i for i in range(r, nrows) if h[i][col] != 0]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: abs(h[i][col]))
            h[r], h[piv] = h[piv], h[r]
            u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, nrows):
                if h[i][col] != 0:
                    q = h[i][col] // h[r][col]
                    h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
                    if h[i][col] != 0:
                        done = False
            if done:
                break
        if all(h[i][col] == 0 for i in range(r, nrows)):
            continue
        if h[r][col] < 0:
            h[r] = [-a for a in h[r]]
            u[r] = [-a for a in u[r]]
        p = h[r][col]
        for i in range(r):
            q = h[i][col] // p
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        r += 1
    return h, u


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Smith form: returns ``(diagonal, P, Q)`` with ``P M Q`` diagonal.

    The diagonal is nonnegative with each entry dividing the next.
    """
    d = _as_int_matrix(rows)
    nrows = len(d)
    nc = ncols if ncols is not None else (len(d[0]) if d else 0)
    p = _eye(nrows)
    q = _eye(nc)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i: int, j: int) -> None:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, k: int) -> None:
        d[target] = [a + k * b for a, b in zip(d[target], d[source])]
        p[target] = [a + k * b for a, b in zip(p[target], p[source])]

    def add_col(target: int, source: int, k: int) -> None:
        for row in d:
            row[target] += k * row[source]
        for row in q:
            row[target] += k * row[source]

    for t in range(min(nrows, nc)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, nrows) for j in range(t, nc) if d[i][j] != 0]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            clean = True
            for i in range(t + 1, nrows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // d[t][t]))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, nc):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // d[t][t]))
                    clean = clean and d[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, nc) if d[i][j] % d[t][t] != 0),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-a for a in d[t]]
            p[t] = [-a for a in p[t]]
    diagonal = [d[t][t] for t in range(min(nrows, nc))]
    return diagonal, p, q


def hermite_and_smith(rows: Sequence[Sequence[int]], ncols: int | None = None) -> HermiteSmith:
    hnf, u = hermite_normal_form(rows, ncols)
    diagonal, left, right = smith_normal_form(rows, ncols)
    return HermiteSmith(hnf, u, diagonal, left, right)


@dataclass(frozen=True)
class IntegerLattice:
    """A full-rank-in-its-span lattice given by a basis in Hermite normal form.

    Generators may be rational; they are scaled by a common denominator before
    the integer normal form is taken, so ``basis`` rows are rational in general
    and integral whenever the generators are.
    """

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, vector: Sequence[int | Fraction]) -> list[int]:
        """Integer coordinates of ``vector`` in the lattice basis."""
        if len(vector) != self.ambient_dim:
            raise DomainError("vector dimension does not match the lattice")
        if not self.basis:
            if any(Fraction(x) != 0 for x in vector):
                raise DomainError(f"vector {list(vector)} is not in the lattice")
            return []
        coords = solve(transpose(self.basis, self.ambient_dim), [Fraction(x) for x in vector], self.rank)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise DomainError(f"vector {[str(Fraction(x)) for x in vector]} is not in the lattice")
        return [c.numerator for c in coords]

    def contains(self, vector: Sequence[int | Fraction]) -> bool:
        try:
            self.coordinates(vector)
        except DomainError:
            return False
        return True


def lattice_from_generators(vectors: Sequence[Sequence[int | Fraction]], ambient_dim: int) -> IntegerLattice:
    vecs = [[Fraction(x) for x in v] for v in vectors if any(Fraction(x) != 0 for x in v)]
    if any(len(v) != ambient_dim for v in vecs):
        raise DomainError("generator dimension mismatch")
    if not vecs:
        return IntegerLattice(ambient_dim, ())
    den = lcm(*(x.denominator for v in vecs for x in v))
    hnf, _ = hermite_normal_form([[int(x * den) for x in v] for v in vecs], ambient_dim)
    basis = tuple(tuple(Fraction(x, den) for x in row) for row in hnf if any(row))
    return IntegerLattice(ambient_dim, basis)


def standard_lattice(n: int) -> IntegerLattice:
    return IntegerLattice(n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))


def sublattice_invariants(vectors: Sequence[Sequence[int | Fraction]], lattice: IntegerLattice) -> list[int]:
    """Smith invariants of ``Z<vectors>`` inside ``lattice``.

    The quotient ``lattice / Z<vectors>`` is the sum of ``Z/d`` over the
    returned diagonal, with a free summand ``Z`` for every returned 0.
    """
    coords = [lattice.coordinates(v) for v in vectors]
    if lattice.rank == 0:
        return []
    if not coords:
        return [0] * lattice.rank
    diagonal, _, _ = smith_normal_form(transpose(coords, lattice.rank), len(coords))
    diagonal = diagonal + [0] * (lattice.rank - len(diagonal))
    return diagonal


def is_lattice_basis(vectors: Sequence[Sequence[int | Fraction]], lattice: IntegerLattice) -> bool:
    """True iff ``vectors`` form a basis of ``lattice`` (index one)."""
    coords = [lattice.coordinates(v) for v in vectors]
    if len(coords) != lattice.rank:
        return False
    if lattice.rank == 0:
        return True
    return abs(determinant(coords)) == 1


def extends_to_basis(vectors: Sequence[Sequence[int | Fraction]], lattice: IntegerLattice) -> bool:
    """True iff ``vectors`` are part of some basis of ``lattice``."""
    coords = [lattice.coordinates(v) for v in vectors]
    if not coords:
        return True
    if rank(coords) < len(coords):
        return False
    diagonal, _, _ = smith_normal_form(coords, lattice.rank)
    return all(x == 1 for x in diagonal)
