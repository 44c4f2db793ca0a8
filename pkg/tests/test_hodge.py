from math import comb

import pytest
from hypothesis import given, strategies as st

from mangle.complexes import SimplicialComplex
from mangle.errors import DomainError, RankDeficiencyError
from mangle.exact import GaussianRational, I, kernel_basis, mat_mul, rank, transpose
from mangle.fans import FanData, normal_fan
from mangle.hodge import (
    PsiMap,
    build_psi,
    check_hodge_bounds,
    chern_matrix,
    hodge_numbers,
)
from mangle.io import bundled_path, read_document
from mangle.polytopes import gale_dual, standard_simplex
from mangle.cohomology import toric_cohomology
from mangle.reports import with_ghost


def hopf_fan():
    return with_ghost(normal_fan(standard_simplex(2)))


def torus_fan():
    return FanData(SimplicialComplex.empty(2), [(), ()], 0)


def load(name):
    doc = read_document(bundled_path(name))
    return doc.value, (PsiMap(doc.psi) if doc.psi is not None else None)


def test_hopf_psi():
    psi = build_psi(hopf_fan())
    assert [r[0] for r in psi.Psi] == [1, 1, 1, -I]


def test_torus_psi():
    psi = build_psi(torus_fan())
    assert [r[0] for r in psi.Psi] == [1, -I]


def test_psi_with_degenerate_real_part_is_rejected():
    with pytest.raises(RankDeficiencyError):
        build_psi(hopf_fan(), [[1], [1], [1], [0]])


def test_psi_outside_the_kernel_is_rejected():
    with pytest.raises(DomainError):
        build_psi(hopf_fan(), [[1], [0], [0], [I]])


def test_odd_codimension_needs_a_ghost():
    with pytest.raises(DomainError):
        build_psi(normal_fan(standard_simplex(2)))


def test_hopf_chern_matrix():
    fan = hopf_fan()
    psi = build_psi(fan)
    (row,) = chern_matrix(psi, fan)
    assert sum(a * r[0] for a, r in zip(row, psi.Psi)) == 0
    gamma = gale_dual(fan.A, fan.m)
    assert rank(mat_mul(gamma, transpose([row], fan.m), 1)) == 1
    image = toric_cohomology(fan).linear_form(row)
    assert image


def test_calabi_eckmann_differential_direction():
    fan, psi = load("ce_1_2")
    (row,) = chern_matrix(build_psi(fan, psi.Psi), fan)
    ring = toric_cohomology(fan)
    image = ring.linear_form(row)
    (x_index,) = ring.linear_images[0]
    (y_index,) = ring.linear_images[2]
    assert set(image) == {x_index, y_index}
    assert image[x_index] / image[y_index] == -I


def test_hopf_hodge_numbers():
    table = hodge_numbers(hopf_fan())
    assert table.nonzero() == {(0, 0): 1, (0, 1): 1, (3, 2): 1, (3, 3): 1}


def test_hopf_n1_hodge_numbers():
    fan, _ = load("hopf_n1")
    assert hodge_numbers(fan).nonzero() == {(0, 0): 1, (0, 1): 1, (2, 1): 1, (2, 2): 1}


def test_torus_hodge_numbers():
    table = hodge_numbers(torus_fan())
    for p in range(3):
        for q in range(3):
            assert table.get(p, q) == comb(1, p) * comb(1, q)


def test_calabi_eckmann_table():
    fan, psi = load("ce_1_2")
    table = hodge_numbers(fan, psi)
    expected = [(0, 0), (0, 1), (1, 1), (1, 2), (3, 2), (3, 3), (4, 3), (4, 4)]
    assert table.nonzero() == {k: 1 for k in expected}


def test_irregular_fan_is_refused():
    k = SimplicialComplex.from_faces(4, [(0, 1), (1, 2), (0, 2)])
    fan = FanData(k, [(2, -1), (0, 1), (-1, 0), (0, 0)])
    with pytest.raises(DomainError):
        hodge_numbers(fan)


def test_ghost_with_nonzero_vector_is_refused():
    k = SimplicialComplex.from_faces(4, [(0, 1), (1, 2), (0, 2)])
    fan = FanData(k, [(1, 0), (0, 1), (-1, -1), (1, 1)])
    with pytest.raises(DomainError):
        hodge_numbers(fan)


def test_bounds_checker_reports_violations():
    table = hodge_numbers(hopf_fan())
    broken = type(table)({**table.entries, (0, 1): 2}, table.ghost_count, table.ell)
    assert check_hodge_bounds(broken, 0, 0)


def test_diamond_and_json():
    table = hodge_numbers(hopf_fan())
    assert table.to_json() == {"(0,0)": 1, "(0,1)": 1, "(3,2)": 1, "(3,3)": 1}
    rows = table.diamond().splitlines()
    assert len(rows) == 7
    assert rows[0].strip() == "1"


gaussian_entries = st.builds(GaussianRational, st.integers(-3, 3), st.integers(-3, 3))


@given(st.lists(gaussian_entries, min_size=2, max_size=2))
def test_random_psi_on_hopf(coeffs):
    fan = hopf_fan()
    kernel = kernel_basis(fan.A, fan.m)
    psi = [[sum((c * kernel[j][k] for j, c in enumerate(coeffs)), GaussianRational(0))] for k in range(fan.m)]
    doubled = [r + [x.conjugate() for x in r] for r in psi]
    if rank(doubled) < 2:
        return
    table = hodge_numbers(fan, PsiMap(psi))
    assert table.nonzero() == {(0, 0): 1, (0, 1): 1, (3, 2): 1, (3, 3): 1}
