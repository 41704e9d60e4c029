import numpy as np
import pytest

from modcoh import catalog
from modcoh.cohmaps import context, restriction, trivial_coefficients
from modcoh.errors import DegreeMismatch, NotMaximal
from modcoh.groups import maximal_subgroups, sylow, whole_group
from modcoh.products import (
    CupRing,
    cochain_cohomology_dims,
    cup,
    diagonal_approximation,
    find_sphere_splice,
    product_span_dims,
    splice_complex,
    sphere_cohomology_check,
)
from modcoh.resolutions import cohomology_dims, trivial_resolution

from presentations import PRODUCT_ORACLES


@pytest.fixture(scope="module")
def rings():
    cache = {}

    def get(name, p=2, max_deg=6):
        key = (name, p, max_deg)
        if key not in cache:
            cache[key] = CupRing(catalog.get_group(name), p, max_deg)
        return cache[key]

    return get


class TestDiagonal:
    def test_counit_component(self, Z2):
        res = trivial_resolution(Z2, 2, 3)
        diag = diagonal_approximation(res, 2)
        comp = diag.components[0][(0, 0)]
        # generator goes to generator (x) generator
        assert comp[:, 0].reshape(2, 2).tolist() == [[1, 0], [0, 0]]

    def test_chain_identity_d8_through_8(self, D8):
        # construction verifies the chain-map identity at every degree and
        # raises LiftFailure otherwise
        diagonal_approximation(trivial_resolution(D8, 2, 9), 8)

    def test_chain_identity_s4_through_6(self, S4):
        diagonal_approximation(trivial_resolution(S4, 2, 7), 6)

    def test_chain_identity_odd_p(self, Z3):
        diagonal_approximation(trivial_resolution(Z3, 3, 7), 6)

    def test_degree_guard(self, Z2):
        diag = diagonal_approximation(trivial_resolution(Z2, 2, 3), 2)
        with pytest.raises(DegreeMismatch):
            cup(np.array([1]), 2, np.array([1]), 1, diag)


class TestCup:
    def test_z2_powers_nonzero(self, Z2):
        ring = CupRing(Z2, 2, 8)
        x = ring.basis(1).classes[0]
        rep = x
        for n in range(2, 9):
            rep = cup(rep, n - 1, x, 1, ring.diagonal)
            assert ring.basis(n).class_coordinates(rep).any()

    def test_z3_exterior_square_vanishes(self, Z3):
        ring = CupRing(Z3, 3, 4)
        x = ring.basis(1).classes[0]
        assert not ring.cup_class(x, 1, x, 1).any()
        y = ring.basis(2).classes[0]
        assert ring.cup_class(y, 2, y, 2).any()

    def test_z4_degree_one_square_vanishes(self, Z4):
        # the Bockstein of the Z/4 class dies, so x^2 = 0 at p = 2
        assert product_span_dims(Z4, 2, 1, 1) == 0

    def test_unit_is_identity(self, D8, Q8):
        for G in (D8, Q8):
            ring = CupRing(G, 2, 5)
            one = ring.unit()
            for i in range(5):
                basis = ring.basis(i)
                for a in basis.classes:
                    left = ring.cup_class(one, 0, a, i)
                    right = ring.cup_class(a, i, one, 0)
                    want = basis.class_coordinates(a).reshape(-1)
                    assert np.array_equal(left, want)
                    assert np.array_equal(right, want)

    def test_commutative_at_p2(self, D8):
        ring = CupRing(D8, 2, 6)
        for i, j in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)]:
            for a in ring.basis(i).classes:
                for b in ring.basis(j).classes:
                    ab = ring.cup_class(a, i, b, j)
                    ba = ring.cup_class(b, j, a, i)
                    assert np.array_equal(ab, ba)

    def test_bilinear(self, Q8):
        ring = CupRing(Q8, 2, 4)
        basis1 = ring.basis(1).classes
        a, b = basis1[0], basis1[1]
        c = ring.basis(2).classes[0]
        lhs = ring.cup_class((a + b) % 2, 1, c, 2)
        rhs = (ring.cup_class(a, 1, c, 2) + ring.cup_class(b, 1, c, 2)) % 2
        assert np.array_equal(lhs, rhs)

    def test_associative(self, D8, V4):
        for G in (D8, V4):
            ring = CupRing(G, 2, 6)
            one_forms = ring.basis(1).classes
            for a in one_forms:
                for b in one_forms:
                    for c in one_forms:
                        ab = cup(a, 1, b, 1, ring.diagonal)
                        bc = cup(b, 1, c, 1, ring.diagonal)
                        left = ring.cup_class(ab, 2, c, 1)
                        right = ring.cup_class(a, 1, bc, 2)
                        assert np.array_equal(left, right)

    def test_natural_under_restriction(self, S4):
        # res(a cup b) = res(a) cup res(b) on the shared-resolution contexts
        p = 2
        M = trivial_coefficients(S4, p)
        P = sylow(S4, 2)
        ring = CupRing(S4, p, 4)
        sub_ctx = context(S4, M, P, length=5)
        for i, j in [(1, 1), (1, 2), (2, 2)]:
            res_i = restriction(S4, P, M, i)
            res_j = restriction(S4, P, M, j)
            res_ij = restriction(S4, P, M, i + j)
            for a in ring.basis(i).classes:
                for b in ring.basis(j).classes:
                    top = ring.cup_class(a, i, b, j)
                    lhs = (res_ij.matrix @ top) % p
                    # cup on the restricted context: same diagonal, cochain
                    # coordinates of the restricted cocycles
                    av = _restrict_cochain_vec(S4, P, a, i, ring, sub_ctx)
                    bv = _restrict_cochain_vec(S4, P, b, j, ring, sub_ctx)
                    prod = _sub_cup(sub_ctx, ring.diagonal, av, i, bv, j)
                    rhs = sub_ctx.basis(i + j).class_coordinates(prod).reshape(-1)
                    assert np.array_equal(lhs, rhs)


def _restrict_cochain_vec(G, H, vec, i, ring, sub_ctx):
    from modcoh.cohmaps import _restriction_cochain
    mat = _restriction_cochain(ring.context, sub_ctx, i)
    return (mat @ vec) % ring.p


def _sub_cup(sub_ctx, diag, av, i, bv, j):
    """Cup on the restricted context: evaluate (a (x) b) after the diagonal
    on each subgroup generator e_{k, t}."""
    G = sub_ctx.group
    p = diag.p
    n = G.order
    res = diag.resolution
    nt = len(sub_ctx.transversal)
    r_top = res.ranks[i + j]
    ri, rj = res.ranks[i], res.ranks[j]
    # cochain values on free basis vectors of P_i / P_j, trivial coefficients:
    # f(e_{j', g}) = value at the right-coset of g
    def expand(vec, r):
        out = np.zeros(r * n, dtype=np.int64)
        for jj in range(r):
            for g in range(n):
                ti = int(sub_ctx._rep_of[g])
                out[jj * n + g] = vec[jj * nt + ti]
        return out

    abar, bbar = expand(av, ri), expand(bv, rj)
    weights = np.outer(abar, bbar).reshape(-1)
    comp = diag.components[i + j][(i, j)]
    out = np.zeros(r_top * nt, dtype=np.int64)
    for k in range(r_top):
        for ti, t in enumerate(sub_ctx.transversal):
            col = diag._translate_tensor(comp[:, [k]], i, j, t).reshape(-1)
            out[k * nt + ti] = int(weights @ col % p)
    return out


class TestSpanDims:
    @pytest.mark.parametrize("name", sorted(PRODUCT_ORACLES))
    def test_matches_presentation_oracle(self, name, rings):
        ring = rings(name)
        oracle = PRODUCT_ORACLES[name]()
        # independently: Hilbert series of the presentation matches dims
        assert oracle.hilbert_series(6) == list(
            cohomology_dims(catalog.get_group(name), 2, 6).dims)
        for i in range(1, 6):
            for j in range(i, 7 - i):
                got = product_span_dims(catalog.get_group(name), 2, i, j, ring)
                want = oracle.product_span_dim(i, j)
                assert got == want, (name, i, j)

    def test_a4_degree_six_span(self, rings):
        # four monomials u^3, v^2, w^2, vw modulo one relation: dimension 3
        ring = rings("A4")
        assert product_span_dims(catalog.get_group("A4"), 2, 3, 3, ring) == 3
        assert PRODUCT_ORACLES["A4"]().product_span_dim(3, 3) == 3


class TestSplice:
    def test_z4_single_segment_is_s1(self, Z4):
        C = splice_complex(Z4, maximal_subgroups(Z4))
        assert cochain_cohomology_dims(C.as_cochain, 2) == [1, 1]
        assert sphere_cohomology_check(C)

    def test_d8_segment_exactness(self, D8):
        for H in maximal_subgroups(D8):
            C = splice_complex(D8, [H])
            d = C.as_cochain.differentials[0]
            from modcoh.fplinalg import rref_array
            assert rref_array(d, 2)[1] == (D8.order // H.order) - 1

    def test_q8_pair_found_by_search(self, Q8):
        hit = find_sphere_splice(Q8, max_len=2, min_len=2)
        assert hit is not None
        subs, C = hit
        assert len(subs) == 2
        dims = cochain_cohomology_dims(C.as_cochain, 2)
        assert dims == [1, 0, 0, 1]  # H^*(S^3)

    def test_elementary_abelian_still_runs(self, V4):
        C = splice_complex(V4, maximal_subgroups(V4)[:2])
        # no assertion required by the hypothesis; just report
        assert isinstance(sphere_cohomology_check(C), bool)

    def test_empty_list_rejected(self, Q8):
        with pytest.raises(NotMaximal):
            splice_complex(Q8, [])

    def test_non_maximal_rejected(self, Q8):
        from modcoh.groups import center
        with pytest.raises(NotMaximal):
            splice_complex(Q8, [center(Q8)])


class TestProductTable:
    def test_csv_matches_oracle(self, D8):
        from modcoh.products import product_table_csv
        text = product_table_csv(D8, 2, 4)
        rows = text.strip().splitlines()
        assert rows[0] == "i,j,span_dim,dim_total"
        table = {(int(a), int(b)): (int(c), int(d))
                 for a, b, c, d in (r.split(",") for r in rows[1:])}
        oracle = PRODUCT_ORACLES["D8"]()
        for (i, j), (span, total) in table.items():
            assert span == oracle.product_span_dim(i, j)
            assert total == oracle.component_dim(i + j)
