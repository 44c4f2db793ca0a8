"""One test per acceptance criterion; each prints a PASS or FAIL line."""

import random
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import assume, given, settings, strategies as st

from mangle.cohomology import zk_betti_model, zk_betti_oracle
from mangle.complexes import SimplicialComplex, fh_vectors, moment_angle_cells
from mangle.dga import product_model
from mangle.exact import GaussianRational, conj, kernel_basis, mat_mul, rank, transpose
from mangle.fans import FanData, is_delzant, normal_fan, validate_fan
from mangle.hodge import (
    PsiMap,
    build_psi,
    check_hodge_bounds,
    chern_kernel_dimension,
    dolbeault_model,
    hodge_from_model,
    hodge_numbers,
)
from mangle.io import bundled_examples, bundled_meta, bundled_path, read_document
from mangle.lagrangian import classify_lagrangian
from mangle.polytopes import Presentation, analyze_presentation, enumerate_vertices, gale_dual, nerve_complex
from mangle.quadrics import (
    QuadricSystem,
    classify_intersection_small,
    is_nondegenerate,
    moment_map_report,
    quadrics_from_presentation,
)
from mangle.reports import with_ghost


@contextmanager
def criterion(capsys, number, title):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"\nFAIL criterion {number}: {title}")
        raise
    with capsys.disabled():
        print(f"\nPASS criterion {number}: {title}")


def corpus_documents():
    return {name: read_document(bundled_path(name)) for name in bundled_examples()}


def corpus_presentations():
    return {name: doc.value for name, doc in corpus_documents().items() if isinstance(doc.value, Presentation)}


def hodge_ready_fans():
    """Complete regular fans from the corpus, each with its declared Psi (if any).

    Presentations contribute their normal fans; a ghost vertex is added when
    ``m - n`` is odd.
    """
    out = {}
    for name, doc in corpus_documents().items():
        value, psi = doc.value, doc.psi
        if isinstance(value, Presentation):
            if not is_delzant(value):
                continue
            value = normal_fan(value)
        if not isinstance(value, FanData):
            continue
        check = validate_fan(value)
        if not (check.complete and check.regular):
            continue
        if (value.m - value.n) % 2:
            value = with_ghost(value)
        out[name] = (value, PsiMap(psi) if psi is not None else None)
    return out


def test_criterion_1_sphere_family(capsys):
    with criterion(capsys, 1, "simplices give one quadric and S^(2n+1); boundary of a simplex gives a sphere"):
        for n in range(1, 5):
            p = read_document(bundled_path(f"simplex_{n}")).value
            q = quadrics_from_presentation(p)
            assert q.codim == 1
            desc = classify_intersection_small(q)
            assert desc.parameters == {"sphere_dims": [2 * n + 1], "torus_rank": 0, "redundant": []}
            m = n + 1
            cells = moment_angle_cells(nerve_complex(p))
            assert nerve_complex(p) == SimplicialComplex.simplex_boundary(range(m), m)
            assert cells.total_dim == 2 * m - 1 and cells.sphere_candidate


def test_criterion_2_products_of_spheres(capsys):
    with criterion(capsys, 2, "square gives S^3 x S^3 with Betti (1,0,0,2,0,0,1); product of triangles gives S^5 x S^5"):
        square = read_document(bundled_path("square")).value
        assert classify_intersection_small(quadrics_from_presentation(square)).description == "S^3 × S^3"
        assert zk_betti_model(normal_fan(square)) == [1, 0, 0, 2, 0, 0, 1]
        both = read_document(bundled_path("delta2_x_delta2")).value
        assert classify_intersection_small(quadrics_from_presentation(both)).description == "S^5 × S^5"


def test_criterion_3_pentagon(capsys):
    with criterion(capsys, 3, "pentagon: Delzant, Betti of #5(S^3 x S^4) by two routes, genus-5 surface bundle over T^3"):
        p = read_document(bundled_path("pentagon")).value
        assert is_delzant(p)
        fan = normal_fan(p)
        connected_sum = [0] * 8
        connected_sum[0] = connected_sum[7] = 1
        connected_sum[3] = connected_sum[4] = 5
        assert zk_betti_model(fan) == zk_betti_oracle(fan.complex) == connected_sum
        desc = classify_lagrangian(quadrics_from_presentation(p, "real"))
        assert desc.tag == "surface_bundle"
        assert desc.parameters["genus"] == 5 and desc.parameters["base_torus_dim"] == 3


def test_criterion_4_hopf(capsys):
    with criterion(capsys, 4, "Hopf manifold n=2: h^{p,q} nonzero exactly at (0,0),(0,1),(3,2),(3,3)"):
        fan = read_document(bundled_path("hopf_n2")).value
        assert fan.complex.ghost_vertices == {3}
        assert hodge_numbers(fan).nonzero() == {(0, 0): 1, (0, 1): 1, (3, 2): 1, (3, 3): 1}


def _exterior_expansion():
    """Bidegrees of Lambda[omega, eta] (x) C[x]/(x^2), omega in (3,2), eta in (0,1), x in (1,1)."""
    out = {}
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                key = (3 * a + c, 2 * a + b + c)
                out[key] = out.get(key, 0) + 1
    return dict(sorted(out.items()))


def _model(name):
    doc = read_document(bundled_path(name))
    return dolbeault_model(doc.value, PsiMap(doc.psi))


def test_criterion_5_calabi_eckmann(capsys):
    with criterion(capsys, 5, "CE(1,2) table matches the exterior expansion; product models give h^{2,1} = 1 and 0"):
        doc = read_document(bundled_path("ce_1_2"))
        assert hodge_numbers(doc.value, PsiMap(doc.psi)).nonzero() == _exterior_expansion()
        first = hodge_from_model(product_model([_model("ce_1_1"), _model("ce_2_2")]))
        second = hodge_from_model(product_model([_model("ce_1_2"), _model("ce_1_2")]))
        assert first.get(2, 1) == 1
        assert second.get(2, 1) == 0


def _random_psi(fan, rng):
    """``Psi = K C`` for the kernel basis ``K`` and a random Gaussian-rational ``C``."""
    kernel = kernel_basis(fan.A, fan.m)
    ell = len(kernel) // 2
    k_matrix = transpose(kernel, fan.m)
    while True:
        c = [[GaussianRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
              for _ in range(ell)] for _ in range(len(kernel))]
        psi = mat_mul(k_matrix, c, ell)
        if rank([r + [conj(x) for x in r] for r in psi]) == 2 * ell:
            return PsiMap(psi)


def test_criterion_6_hodge_bounds(capsys):
    fans = hodge_ready_fans()
    with criterion(capsys, 6, f"Hodge bounds on {len(fans)} corpus fans x (declared Psi + 20 random Psi)"):
        rng = random.Random(20)
        for name, (fan, declared) in fans.items():
            _, h = fh_vectors(fan.complex)
            h2 = h[2] if len(h) > 2 else 0
            k = len(fan.complex.ghost_vertices)
            for psi in [declared or build_psi(fan)] + [_random_psi(fan, rng) for _ in range(20)]:
                table = hodge_numbers(fan, psi)
                kernel_dim = chern_kernel_dimension(dolbeault_model(fan, psi), psi.ell)
                assert check_hodge_bounds(table, h2, kernel_dim) == [], name
                assert all(table.get(0, q) == comb(psi.ell, q) for q in range(psi.ell + 2)), name
                if k <= 1:
                    assert kernel_dim == 0, name


def _gale_property(a, n, m):
    gamma = gale_dual(a, m)
    assert all(x == 0 for row in mat_mul(gamma, transpose(a, m), n) for x in row)
    assert len(gamma) == m - n == rank(gamma) if gamma else m == n
    columns_a = transpose(a, m)
    columns_g = transpose(gamma, m) if gamma else [[] for _ in range(m)]
    for size in range(m + 1):
        for subset in combinations(range(m), size):
            independent = rank([columns_a[i] for i in subset]) == size if subset else True
            rest = [columns_g[j] for j in range(m) if j not in subset]
            spans = (rank(rest) == m - n) if rest and m > n else m == n
            assert independent == spans, (a, subset)


def test_criterion_7_gale_duality(capsys):
    seen = []

    @settings(max_examples=200, deadline=None, derandomize=True, database=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.integers(n, 8).flatmap(
        lambda m: st.lists(st.lists(st.integers(-3, 3), min_size=m, max_size=m), min_size=n, max_size=n))))
    def check(a):
        n, m = len(a), len(a[0])
        assume(rank(a) == n)
        _gale_property(a, n, m)
        seen.append(1)

    with criterion(capsys, 7, "Gale duality: subset independence <-> complement spans, Gamma A^T = 0, on 200 random A"):
        check()
        assert len(seen) == 200


def _presentation_equivalences(p):
    analysis = analyze_presentation(p)
    q = quadrics_from_presentation(p)
    assert analysis.generic == bool(is_nondegenerate(q))
    if not (analysis.generic and analysis.bounded):
        return False
    delzant = is_delzant(p).delzant
    report = moment_map_report(q)
    assert validate_fan(normal_fan(p)).regular == delzant
    assert report.action_free == delzant
    assert all(s.trivial for s in report.stabilizers) == delzant
    return True


def test_criterion_8_equivalences(capsys):
    counted = {"random": 0, "checked_delzant": 0}

    @settings(max_examples=50, deadline=None, derandomize=True, database=None)
    @given(st.integers(2, 3).flatmap(lambda n: st.tuples(
        st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n + 2),
        st.lists(st.integers(-1, 3), min_size=n + 3, max_size=n + 3),
    )))
    def check(data):
        normals, b = data
        normals = normals + [[-sum(col) for col in zip(*normals)]]
        if rank(normals) < len(normals[0]):
            normals = normals[:-1] + [[int(i == j) for i in range(len(normals[0]))] for j in range(len(normals[0]))]
            normals.append([-sum(col) for col in zip(*normals)])
        p = Presentation.from_normals(normals, b[:len(normals)] + [1] * (len(normals) - len(b)))
        counted["random"] += 1
        counted["checked_delzant"] += _presentation_equivalences(p)

    with criterion(capsys, 8, "generic <-> nondegenerate; Delzant <-> free <-> trivial stabilizers (corpus + 50 random)"):
        for p in corpus_presentations().values():
            _presentation_equivalences(p)
        check()
        assert counted["random"] == 50
        assert counted["checked_delzant"] >= 10


def test_criterion_9_lagrangian_classification(capsys):
    with criterion(capsys, 9, "N(m) parity for m = 3..8 and every two-quadric triple (k,p,q) with m <= 6"):
        for m in range(3, 9):
            desc = classify_lagrangian(QuadricSystem([[1] * m], [1], realm="real"))
            assert desc.tag == "N_of_m" and desc.parameters["orientable"] == (m % 2 == 0)
        triples = [(k, p, m - p) for m in range(2, 7) for p in range(1, m) for k in range(p + 1)]
        for name in bundled_examples():
            if name.startswith("two_quadrics"):
                meta = bundled_meta(name)
                triples.append((meta["k"], meta["p"], meta["q"]))
                params = classify_lagrangian(read_document(bundled_path(name)).value).parameters
                assert (params["k"], params["p"], params["q"]) == (meta["k"], meta["p"], meta["q"])
        for k, p, q in triples:
            m = p + q
            gamma = [[1] * p + [0] * q, [1] * k + [0] * (p - k) + [1] * q]
            params = classify_lagrangian(QuadricSystem(gamma, [1, 2], m, "real")).parameters
            assert (params["k"], params["p"], params["q"]) == (k, p, q)


def _blow_ups(start, positions):
    """Insert ``v_i + v_(i+1)`` between neighbours; the fan stays complete and regular."""
    vectors = list(start)
    for pos in positions:
        i = pos % len(vectors)
        j = (i + 1) % len(vectors)
        new = tuple(a + b for a, b in zip(vectors[i], vectors[j]))
        vectors.insert(i + 1, new)
    m = len(vectors)
    k = SimplicialComplex.from_faces(m, [(i, (i + 1) % m) for i in range(m)])
    return FanData(k, vectors)


def _global_invariants(fan, psi=None):
    betti = zk_betti_model(fan)
    assert betti == betti[::-1] and betti[0] == 1
    if fan.m > fan.n:
        assert sum((-1) ** i * b for i, b in enumerate(betti)) == 0
    target = fan if (fan.m - fan.n) % 2 == 0 else with_ghost(fan)
    table = hodge_numbers(target, psi)
    target_betti = zk_betti_model(target)
    if table.ell >= 1:
        assert sum((-1) ** (p + q) * v for (p, q), v in table.entries.items()) == 0
    upper = table.total_betti_upper()
    for r, b in enumerate(target_betti):
        assert b <= (upper[r] if r < len(upper) else 0)


def test_criterion_10_global_invariants(capsys):
    count = {"fans": 0}

    @settings(max_examples=25, deadline=None, derandomize=True, database=None)
    @given(st.sampled_from(["cp2", "cp1xcp1"]), st.lists(st.integers(0, 7), max_size=4))
    def check(start, positions):
        base = [(1, 0), (0, 1), (-1, -1)] if start == "cp2" else [(1, 0), (0, 1), (-1, 0), (0, -1)]
        fan = _blow_ups(base, positions)
        assert validate_fan(fan).regular
        _global_invariants(fan)
        count["fans"] += 1

    with criterion(capsys, 10, "Poincare duality, zero Euler characteristics and Frolicher bounds on corpus + random fans"):
        for name, (fan, psi) in hodge_ready_fans().items():
            _global_invariants(fan, psi)
        check()
        assert count["fans"] >= 20
        for first, second in [("ce_1_1", "ce_2_2"), ("ce_1_2", "ce_1_2")]:
            table = hodge_from_model(product_model([_model(first), _model(second)]))
            assert sum((-1) ** (p + q) * v for (p, q), v in table.entries.items()) == 0


@pytest.mark.parametrize("name", sorted(corpus_presentations()))
def test_vertex_data_is_stable(name):
    p = corpus_presentations()[name]
    assert enumerate_vertices(p) == enumerate_vertices(p)
