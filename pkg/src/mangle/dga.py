"""Finite bigraded differential algebras ``Lambda[generators] (x) B``.

``B`` is a finite-dimensional graded commutative algebra concentrated in even
total degrees, with its degree-``d`` part in bidegree ``(d, d)``.  Every
exterior generator has total degree one, and the differential sends it to an
element of ``B``.  The differential kills ``B``.  These are exactly the models
used for de Rham and Dolbeault cohomology of moment-angle manifolds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DomainError, InternalInvariantError
from .exact import rank

Monomial = tuple[int, ...]
Element = dict  # basis index -> coefficient


@dataclass(frozen=True)
class GradedRingData:
    """A graded algebra with a monomial basis and structure constants.

    ``basis[i]`` is an exponent vector in the generators ``v_1..v_m``,
    ``degrees[i]`` its degree, and ``products[(i, j)]`` the product of two
    basis elements as a sparse vector.  ``linear_images[k]`` is the class of
    ``v_k`` written in the basis.
    """

    basis: tuple[Monomial, ...]
    degrees: tuple[int, ...]
    products: dict = field(repr=False)
    linear_images: tuple[dict, ...] = field(repr=False)
    notes: tuple[str, ...] = ()

    @property
    def dims(self) -> list[int]:
        top = max(self.degrees) if self.degrees else -1
        out = [0] * (top + 1)
        for d in self.degrees:
            out[d] += 1
        return out

    def indices_of_degree(self, degree: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def multiply(self, i: int, j: int) -> dict:
        return self.products.get((i, j), {})

    def multiply_elements(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.multiply(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v != 0}

    def linear_form(self, coeffs: Sequence) -> dict:
        """The class of ``sum_k coeffs[k] v_k``."""
        out: dict = {}
        for c, image in zip(coeffs, self.linear_images):
            if c == 0:
                continue
            for idx, val in image.items():
                out[idx] = out.get(idx, 0) + c * val
        return {k: v for k, v in out.items() if v != 0}


def point_ring() -> GradedRingData:
    """The ground field in degree zero."""
    return GradedRingData(((),), (0,), {(0, 0): {0: Fraction(1)}}, ())


def tensor_rings(first: GradedRingData, second: GradedRingData) -> GradedRingData:
    """Tensor product; monomials concatenate their exponent vectors."""
    pairs = [(i, j) for i in range(len(first.basis)) for j in range(len(second.basis))]
    index = {pair: k for k, pair in enumerate(pairs)}
    basis = tuple(first.basis[i] + second.basis[j] for i, j in pairs)
    degrees = tuple(first.degrees[i] + second.degrees[j] for i, j in pairs)
    products = {}
    for a, (i1, j1) in enumerate(pairs):
        for b, (i2, j2) in enumerate(pairs):
            left = first.multiply(i1, i2)
            right = second.multiply(j1, j2)
            out = {index[(k1, k2)]: c1 * c2 for k1, c1 in left.items() for k2, c2 in right.items()}
            if out:
                products[(a, b)] = out
    one_second = second.basis.index(tuple(0 for _ in second.basis[0])) if second.basis else 0
    one_first = first.basis.index(tuple(0 for _ in first.basis[0])) if first.basis else 0
    images = tuple({index[(k, one_second)]: c for k, c in img.items()} for img in first.linear_images) + tuple(
        {index[(one_first, k)]: c for k, c in img.items()} for img in second.linear_images
    )
    return GradedRingData(basis, degrees, products, images, first.notes + second.notes)


FIELDS = ("rational", "gaussian_rational")


@dataclass(frozen=True)
class BigradedDGA:
    """``Lambda[generators] (x) base`` with ``d`` of bidegree ``(0, 1)``.

    ``differential[g]`` is the image of generator ``g`` in the base, as a
    sparse vector over the base basis.  Generators missing from the map are
    closed.
    """

    generators: tuple[tuple[str, tuple[int, int]], ...]
    base: GradedRingData
    differential: dict
    coefficient_field: str = "rational"

    def __post_init__(self) -> None:
        if self.coefficient_field not in FIELDS:
            raise DomainError(f"unknown coefficient field {self.coefficient_field!r}")
        for g, image in self.differential.items():
            p, q = self.generators[g][1]
            for idx in image:
                deg = self.base.degrees[idx]
                if (deg, deg) != (p, q + 1):
                    raise DomainError(f"differential of {self.generators[g][0]} does not have bidegree (0, 1)")

    def element_bidegree(self, subset: tuple[int, ...], base_index: int) -> tuple[int, int]:
        d = self.base.degrees[base_index]
        p = d + sum(self.generators[g][1][0] for g in subset)
        q = d + sum(self.generators[g][1][1] for g in subset)
        return p, q

    def basis_by_bidegree(self) -> dict[tuple[int, int], list[tuple[tuple[int, ...], int]]]:
        out: dict[tuple[int, int], list] = {}
        gens = range(len(self.generators))
        for size in range(len(self.generators) + 1):
            for subset in combinations(gens, size):
                for b in range(len(self.base.basis)):
                    out.setdefault(self.element_bidegree(subset, b), []).append((subset, b))
        return out

    def apply_d(self, subset: tuple[int, ...], base_index: int) -> dict:
        """``d(x_S (x) b) = sum_k (-1)^k x_{S - s_k} (x) d(s_k) b``."""
        out: dict = {}
        for pos, g in enumerate(subset):
            image = self.differential.get(g)
            if not image:
                continue
            sign = -1 if pos % 2 else 1
            rest = subset[:pos] + subset[pos + 1:]
            for idx, coeff in self.base.multiply_elements(image, {base_index: Fraction(1)}).items():
                key = (rest, idx)
                out[key] = out.get(key, 0) + sign * coeff
        return {k: v for k, v in out.items() if v != 0}

    def check_d_squared(self) -> None:
        """Apply ``d`` twice to every basis element and demand exact zero."""
        for elements in self.basis_by_bidegree().values():
            for subset, b in elements:
                total: dict = {}
                for (rest, idx), c in self.apply_d(subset, b).items():
                    for key, c2 in self.apply_d(rest, idx).items():
                        total[key] = total.get(key, 0) + c * c2
                if any(v != 0 for v in total.values()):
                    raise InternalInvariantError(f"d^2 != 0 on generator set {subset}")

    def _differential_rank(self, source: list, target: list) -> int:
        if not source or not target:
            return 0
        position = {key: i for i, key in enumerate(target)}
        rows = []
        for subset, b in source:
            row = [Fraction(0)] * len(target)
            for key, c in self.apply_d(subset, b).items():
                row[position[key]] = c
            rows.append(row)
        return rank(rows)

    def cohomology(self) -> dict[tuple[int, int], int]:
        """Dimensions of ``H^{p,q}`` for every bidegree with a nonzero chain group."""
        basis = self.basis_by_bidegree()
        ranks: dict[tuple[int, int], int] = {}
        for (p, q), source in basis.items():
            ranks[(p, q)] = self._differential_rank(source, basis.get((p, q + 1), []))
        out = {}
        for (p, q), source in basis.items():
            dim = len(source) - ranks[(p, q)] - ranks.get((p, q - 1), 0)
            if dim < 0:
                raise InternalInvariantError("negative cohomology dimension")
            out[(p, q)] = dim
        return dict(sorted(out.items()))

    def total_betti(self) -> list[int]:
        """Betti numbers by total degree ``p + q``."""
        table = self.cohomology()
        top = max((p + q for p, q in table), default=0)
        out = [0] * (top + 1)
        for (p, q), dim in table.items():
            out[p + q] += dim
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out


def point_model(coefficient_field: str = "rational") -> BigradedDGA:
    """The model of a point: the ground field in bidegree ``(0, 0)``."""
    return BigradedDGA((), point_ring(), {}, coefficient_field)


def product_model(models: Sequence[BigradedDGA]) -> BigradedDGA:
    """Tensor product of models; cohomology obeys the Kunneth formula."""
    if not models:
        return point_model()
    fields = {m.coefficient_field for m in models}
    if len(fields) > 1:
        raise DomainError("models over different coefficient fields cannot be tensored")
    field_name = fields.pop()
    result = models[0]
    for nxt in models[1:]:
        result = _tensor_pair(result, nxt, field_name)
    return result


def _tensor_pair(first: BigradedDGA, second: BigradedDGA, field_name: str) -> BigradedDGA:
    base = tensor_rings(first.base, second.base)
    n2 = len(second.base.basis)
    unit1 = first.base.basis.index(tuple(0 for _ in first.base.basis[0]))
    unit2 = second.base.basis.index(tuple(0 for _ in second.base.basis[0]))
    gens = tuple((f"{name}'", deg) for name, deg in first.generators) + tuple(
        (f"{name}''", deg) for name, deg in second.generators
    )
    diff = {}
    for g, image in first.differential.items():
        diff[g] = {i * n2 + unit2: c for i, c in image.items()}
    offset = len(first.generators)
    for g, image in second.differential.items():
        diff[offset + g] = {unit1 * n2 + j: c for j, c in image.items()}
    return BigradedDGA(gens, base, diff, field_name)

