from fractions import Fraction

from hypothesis import given, strategies as st

from mangle.exact import determinant, mat_mul, rank
from mangle.lattice import (
    extends_to_basis,
    hermite_and_smith,
    is_lattice_basis,
    lattice_from_generators,
    standard_lattice,
    sublattice_invariants,
)
from mangle.lp import in_cone

small = st.integers(-4, 4)


def int_matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_identity_normal_forms():
    hs = hermite_and_smith([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert hs.snf_diagonal == [1, 1, 1]


def test_single_row_smith_is_gcd():
    assert hermite_and_smith([[2, 4]]).snf_diagonal == [2]


def test_quadratic_cone_lattice_has_index_two():
    # columns 2e1 - e2 and e2
    hs = hermite_and_smith([[2, 0], [-1, 1]])
    assert hs.snf_diagonal == [1, 2]
    assert abs(determinant([[2, 0], [-1, 1]])) == 2
    z2 = standard_lattice(2)
    assert not is_lattice_basis([(2, -1), (0, 1)], z2)
    assert sublattice_invariants([(2, -1), (0, 1)], z2) == [1, 2]


def test_lattice_basis_examples():
    z2 = standard_lattice(2)
    assert is_lattice_basis([(1, 0), (0, 1)], z2)
    assert is_lattice_basis([(-1, 0), (-1, -1)], z2)
    assert extends_to_basis([(1, 1)], z2)
    assert not extends_to_basis([(2, 0)], z2)


@given(int_matrices())
def test_normal_forms_have_unimodular_witnesses(rows):
    cols = len(rows[0])
    hs = hermite_and_smith(rows, cols)
    assert abs(determinant(hs.hnf_transform)) == 1
    assert mat_mul(hs.hnf_transform, rows, cols) == hs.hnf
    assert abs(determinant(hs.smith_left)) == 1
    assert abs(determinant(hs.smith_right)) == 1
    diag = mat_mul(mat_mul(hs.smith_left, rows, cols), hs.smith_right, cols)
    for i, row in enumerate(diag):
        for j, x in enumerate(row):
            expected = hs.snf_diagonal[i] if i == j and i < len(hs.snf_diagonal) else 0
            assert x == expected
    nonzero = [d for d in hs.snf_diagonal if d]
    assert len(nonzero) == rank(rows)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@given(int_matrices(4, 3))
def test_lattice_contains_its_generators(rows):
    lattice = lattice_from_generators(rows, len(rows[0]))
    assert all(lattice.contains(r) for r in rows)
    assert lattice.rank == rank(rows)


def test_rational_generators():
    lattice = lattice_from_generators([(Fraction(1, 2), 0), (0, 1)], 2)
    assert lattice.contains((Fraction(3, 2), 2))
    assert not lattice.contains((Fraction(1, 4), 0))


def test_cone_membership_examples():
    yes = in_cone([(1, 0), (0, 1)], (1, 1))
    assert yes.member and yes.coefficients == (1, 1)
    no = in_cone([(1, 0), (0, 1)], (-1, 0))
    assert not no.member
    assert no.verify([(1, 0), (0, 1)], (-1, 0))
    assert no.functional[0] > 0 and no.functional[1] == 0


def test_pentagon_delta_in_gamma_cone():
    columns = [(1, 0, 1), (0, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    cert = in_cone(columns, (2, 2, 3))
    assert cert.member
    assert cert.verify(columns, (2, 2, 3))


@given(st.integers(1, 3).flatmap(
    lambda d: st.tuples(
        st.lists(st.lists(small, min_size=d, max_size=d), min_size=0, max_size=5),
        st.lists(small, min_size=d, max_size=d),
    )
))
def test_cone_certificates_always_verify(data):
    generators, target = data
    cert = in_cone(generators, target)
    assert cert.verify([[Fraction(x) for x in g] for g in generators], target)
