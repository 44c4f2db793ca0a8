"""Cohomology of toric varieties and moment-angle manifolds by exact linear algebra.

``toric_cohomology`` presents ``Q[v_1..v_m] / (I_K + J)`` degree by degree.
The linear ideal ``J`` is eliminated first, which leaves a polynomial ring in
the free variables modulo the images of the Stanley-Reisner monomials.

``zk_betti_model`` runs the small model ``Lambda[u] (x) H*(V)`` through the
DGA engine.  ``zk_betti_oracle`` is an independent route that never touches
the fan: it works through the Koszul complex of the face ring one square-free
multidegree at a time.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from .complexes import SimplicialComplex
from .dga import BigradedDGA, GradedRingData
from .errors import DomainError
from .exact import rank, rref
from .fans import FanData, validate_fan
from .limits import ORACLE_MAX_M, check_m
from .polytopes import gale_dual

Poly = dict  # exponent tuple over the free variables -> coefficient


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the given degree, in lexicographically decreasing order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return sorted(set(out), reverse=True)


def _poly_mul(x: Poly, y: Poly) -> Poly:
    out: Poly = {}
    for ex, a in x.items():
        for ey, b in y.items():
            key = tuple(i + j for i, j in zip(ex, ey))
            out[key] = out.get(key, 0) + a * b
    return {k: v for k, v in out.items() if v != 0}


class _DegreeQuotient:
    """``Q[w]_d`` modulo a subspace, with a monomial basis and a normal form."""

    def __init__(self, monomials: list[tuple[int, ...]], relations: list[Poly]) -> None:
        self.monomials = monomials
        self.position = {mono: i for i, mono in enumerate(monomials)}
        rows = [[r.get(mono, Fraction(0)) for mono in monomials] for r in relations]
        self.reduced, self.pivots = rref(rows, len(monomials)) if rows else ([], [])
        pivot_set = set(self.pivots)
        self.basis = [mono for i, mono in enumerate(monomials) if i not in pivot_set]

    def normal_form(self, poly: Poly) -> dict[tuple[int, ...], Fraction]:
        vec = [poly.get(mono, Fraction(0)) for mono in self.monomials]
        for row, p in zip(self.reduced, self.pivots):
            c = vec[p]
            if c != 0:
                vec = [a - c * b for a, b in zip(vec, row)]
        return {mono: vec[i] for i, mono in enumerate(self.monomials) if vec[i] != 0}


def toric_cohomology(fan: FanData) -> GradedRingData:
    """Cohomology ring of the toric variety of a complete simplicial rational fan.

    Degree ``d`` here means cohomological degree ``2d``.  The basis monomials
    are written in the original generators ``v_k``; only free variables occur.
    """
    check = validate_fan(fan)
    if not check.is_fan:
        raise DomainError(f"not a fan: {check.reason}")
    if not check.complete:
        raise DomainError("toric cohomology needs a complete fan")
    m = fan.m
    k = fan.complex
    ghosts = sorted(k.ghost_vertices)
    linear_rows = [list(r) for r in fan.A] + [[Fraction(int(j == g)) for j in range(m)] for g in ghosts]
    reduced, pivots = rref(linear_rows, m)
    free = [j for j in range(m) if j not in set(pivots)]
    nvars = len(free)

    def unit(i: int) -> tuple[int, ...]:
        return tuple(int(j == i) for j in range(nvars))

    images: list[Poly] = [dict() for _ in range(m)]
    for idx, f in enumerate(free):
        images[f] = {unit(idx): Fraction(1)}
    for row, p in zip(reduced, pivots):
        images[p] = {unit(idx): -row[f] for idx, f in enumerate(free) if row[f] != 0}

    generators = []
    for face in k.minimal_nonfaces():
        if len(face) < 2:
            continue
        poly: Poly = {tuple([0] * nvars): Fraction(1)}
        for v in sorted(face):
            poly = _poly_mul(poly, images[v])
        generators.append((len(face), poly))

    top = fan.n
    quotients: list[_DegreeQuotient] = []
    for d in range(top + 1):
        monos = _monomials(nvars, d)
        relations = []
        for size, poly in generators:
            if size > d:
                continue
            for extra in _monomials(nvars, d - size):
                relations.append(_poly_mul(poly, {extra: Fraction(1)}))
        quotients.append(_DegreeQuotient(monos, relations))

    basis_w: list[tuple[int, ...]] = []
    degrees: list[int] = []
    for d, quotient in enumerate(quotients):
        for mono in quotient.basis:
            basis_w.append(mono)
            degrees.append(d)
    index = {(degrees[i], basis_w[i]): i for i in range(len(basis_w))}

    def to_element(d: int, poly: Poly) -> dict:
        if d > top:
            return {}
        return {index[(d, mono)]: c for mono, c in quotients[d].normal_form(poly).items()}

    products = {}
    for i, (mi, di) in enumerate(zip(basis_w, degrees)):
        for j, (mj, dj) in enumerate(zip(basis_w, degrees)):
            mono = tuple(a + b for a, b in zip(mi, mj))
            elem = to_element(di + dj, {mono: Fraction(1)})
            if elem:
                products[(i, j)] = elem
    linear_images = tuple(to_element(1, images[v]) if top >= 1 else {} for v in range(m))

    def lift(mono: tuple[int, ...]) -> tuple[int, ...]:
        exps = [0] * m
        for idx, f in enumerate(free):
            exps[f] = mono[idx]
        return tuple(exps)

    notes = () if check.regular else ("fan is simplicial but not regular; ring computed over Q",)
    return GradedRingData(tuple(lift(mono) for mono in basis_w), tuple(degrees), products, linear_images, notes)


def de_rham_model(fan: FanData) -> BigradedDGA:
    """``Lambda[u_1..u_{m-n}] (x) H*(V)`` with ``du_j = sum_k gamma_jk v_k``.

    The generators ``u_j`` sit in bidegree ``(1, 0)``, so total degree is
    ``p + q`` and ``v`` lands in total degree 2.
    """
    check = validate_fan(fan)
    if not (check.is_fan and check.complete and check.regular):
        raise DomainError("the de Rham model needs a complete regular fan")
    ring = toric_cohomology(fan)
    gamma = gale_dual(fan.A, fan.m)
    gens = tuple((f"u{j + 1}", (1, 0)) for j in range(len(gamma)))
    diff = {j: ring.linear_form(row) for j, row in enumerate(gamma)}
    return BigradedDGA(gens, ring, {j: img for j, img in diff.items() if img}, "rational")


def zk_betti_model(fan: FanData) -> list[int]:
    """Betti numbers of ``Z_K`` for a complete regular fan, from the small model."""
    model = de_rham_model(fan)
    model.check_d_squared()
    betti = model.total_betti()
    expected = fan.m + fan.n
    return betti + [0] * (expected + 1 - len(betti))


def _koszul_rank(faces: set[frozenset[int]], subset: tuple[int, ...], degree_from: int) -> int:
    """Rank of ``d`` from total degree ``degree_from`` inside one multidegree.

    Chains are ``u_I v_J`` with ``I`` and ``J`` partitioning ``subset`` and
    ``J`` a face; the total degree is ``|I| + 2|J|``.  The differential moves
    one index from ``I`` to ``J`` with the Koszul sign.
    """
    size = len(subset)
    # degree = |I| + 2|J| = size + |J|
    src_j = degree_from - size
    tgt_j = src_j + 1
    if src_j < 0 or tgt_j > size:
        return 0
    sources = [frozenset(j) for j in combinations(subset, src_j) if frozenset(j) in faces]
    targets = [frozenset(j) for j in combinations(subset, tgt_j) if frozenset(j) in faces]
    if not sources or not targets:
        return 0
    position = {t: i for i, t in enumerate(targets)}
    rows = []
    for j_set in sources:
        i_part = [x for x in subset if x not in j_set]
        row = [0] * len(targets)
        for pos, x in enumerate(i_part):
            target = j_set | {x}
            if target in position:
                row[position[target]] += -1 if pos % 2 else 1
        rows.append(row)
    return rank(rows)


def zk_betti_oracle(k: SimplicialComplex) -> list[int]:
    """Betti numbers of ``Z_K`` from the Koszul complex of the face ring.

    Works with any complex, ghost vertices included, up to ``m = 10``.
    """
    check_m(k.m, "Koszul oracle", cap=ORACLE_MAX_M)
    faces = set(k.faces)
    top = 2 * k.m
    betti = [0] * (top + 1)
    for size in range(k.m + 1):
        for subset in combinations(range(k.m), size):
            for j_size in range(size + 1):
                degree = size + j_size
                dim = sum(1 for j in combinations(subset, j_size) if frozenset(j) in faces)
                if not dim:
                    continue
                out_rank = _koszul_rank(faces, subset, degree)
                in_rank = _koszul_rank(faces, subset, degree - 1)
                betti[degree] += dim - out_rank - in_rank
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    return betti


def pad_betti(betti: Sequence[int], length: int) -> list[int]:
    return list(betti) + [0] * max(0, length - len(betti))
