import itertools
import random

import pytest

from liecoh.chevalley import AlgebraError, build
from liecoh.exactla import (
    G_I,
    G_ONE,
    G_ZERO,
    GaussianRational,
    RAT,
    ScaledScalar,
    as_gauss,
)
from liecoh.rootsystem import build as build_rs


def algebra(spec):
    return build(build_rs(spec))


def jacobi_defect(g, i, j, k):
    x, y, z = g.basis_element(i), g.basis_element(j), g.basis_element(k)
    return (
        g.bracket(x, g.bracket(y, z))
        + g.bracket(y, g.bracket(z, x))
        + g.bracket(z, g.bracket(x, y))
    )


@pytest.mark.parametrize("spec", ["A1", "A1xA1", "A2", "B2", "G2", "A3"])
def test_jacobi_exhaustive(spec):
    g = algebra(spec)
    for i, j, k in itertools.combinations(range(g.dim), 3):
        assert jacobi_defect(g, i, j, k).is_zero(), (spec, i, j, k)


def test_dimensions():
    assert algebra("A1").dim == 3
    assert algebra("A1xA1").dim == 6
    assert algebra("A2").dim == 8
    assert algebra("B2").dim == 10
    assert algebra("G2").dim == 14


def test_sl2_brackets():
    g = algebra("A1")
    e, f, h = g.e_plus(1), g.e_minus(1), g.h(1)
    assert g.bracket(h, e) == e.scale(as_gauss(2))
    assert g.bracket(h, f) == f.scale(as_gauss(-2))
    # [E, F] is the Killing-dual coroot, h/4 for sl2
    assert g.bracket(e, f) == h.scale(as_gauss(RAT(1, 4)))


def test_product_algebra_cross_brackets_vanish():
    g = algebra("A1xA1")
    # positive root order puts (0,1) first, so E+1 pairs with H2
    first = [g.e_plus(2), g.e_minus(2), g.h(1)]
    second = [g.e_plus(1), g.e_minus(1), g.h(2)]
    for x in first:
        for y in second:
            assert g.bracket(x, y).is_zero()


def test_killing_orthonormality():
    for spec in ["A1", "A2", "B2", "G2"]:
        g = algebra(spec)
        for a in range(g.npos):
            for b in range(g.npos):
                expect = G_ONE if a == b else G_ZERO
                assert g.killing(g.basis_element(a), g.basis_element(g.npos + b)) == expect
            for b in range(g.npos):
                assert g.killing(g.basis_element(a), g.basis_element(b)).is_zero()
        for i in range(g.rank):
            for j in range(g.rank):
                assert g.killing(g.h(i + 1), g.h(j + 1)) == g.killing_h(i, j)


def test_killing_ad_invariance():
    g = algebra("B2")
    rng = random.Random(11)

    def rand_elem():
        coords = [
            GaussianRational(RAT(rng.randint(-2, 2)), RAT(rng.randint(-2, 2)))
            for _ in range(g.dim)
        ]
        from liecoh.chevalley import AlgebraElement

        return AlgebraElement(g, coords)

    for _ in range(6):
        x, y, z = rand_elem(), rand_elem(), rand_elem()
        lhs = g.killing(g.bracket(x, y), z)
        rhs = g.killing(y, g.bracket(x, z))
        assert lhs + rhs == G_ZERO


def test_conjugation_involution_and_automorphism():
    for spec in ["A2", "B2"]:
        g = algebra(spec)
        for i in range(g.dim):
            x = g.basis_element(i)
            assert g.conjugate(g.conjugate(x)) == x
        for i in range(g.dim):
            for j in range(g.dim):
                x, y = g.basis_element(i), g.basis_element(j)
                lhs = g.conjugate(g.bracket(x, y))
                rhs = g.bracket(g.conjugate(x), g.conjugate(y))
                assert lhs == rhs


def test_conjugation_is_antilinear_with_compact_fixed_vectors():
    g = algebra("A2")
    ih = g.h(1).scale(G_I)
    assert g.conjugate(ih) == ih
    for k in range(1, g.npos + 1):
        x = g.e_plus(k) + g.conjugate(g.e_plus(k))
        assert g.conjugate(x) == x
        assert not x.is_zero()


def test_centralizer_of_semisimple_element():
    g = algebra("A1xA1")
    x = g.h(1).scale(as_gauss(RAT(1, 3)))
    cz = g.centralizer([x])
    assert len(cz) == 4

    g2 = algebra("A2")
    # H1 is regular in sl3, so its centralizer is the Cartan
    assert len(g2.centralizer([g2.h(1)])) == 2
    # the zero tuple centralizes everything
    assert len(g2.centralizer([g2.zero()])) == g2.dim


def test_generalized_zero_space_examples():
    g = algebra("A1")
    # nilpotent element: the whole algebra is the generalized zero space
    assert len(g.generalized_zero_space([g.e_plus(1)])) == 3
    # semisimple element: only the Cartan
    assert len(g.generalized_zero_space([g.h(1)])) == 1


def test_centralizer_contained_in_generalized_zero_space():
    from liecoh.exactla import in_span

    g = algebra("B2")
    x = g.h(1) + g.e_plus(1).scale(as_gauss(0))
    cz = g.centralizer([x])
    gz = g.generalized_zero_space([x])
    for vec in cz:
        assert in_span(gz, vec)


def test_commuting_check_and_scaled_elements():
    g = algebra("A1xA1")
    s = ScaledScalar(G_ZERO, G_ONE)
    from liecoh.chevalley import AlgebraElement

    coords = [G_ZERO] * g.dim
    coords[2 * g.npos] = s
    xs = AlgebraElement(g, coords)
    assert g.commuting_check([xs, g.h(2)])
    assert len(g.centralizer([xs])) == 4
    assert not g.commuting_check([g.e_plus(1), g.e_minus(1)])
    mixed = [ScaledScalar(G_ONE, G_ONE)] + [G_ZERO] * (g.dim - 1)
    with pytest.raises(AlgebraError):
        g.commuting_check([AlgebraElement(g, mixed)])


def test_noncommuting_tuple_rejected():
    g = algebra("A1")
    with pytest.raises(AlgebraError):
        g.centralizer([g.e_plus(1), g.e_minus(1)])


def test_element_json_round_trip():
    g = algebra("B2")
    data = {"H": {"1": "1/3", "2": "-2*i"}, "E": {"+1": "1-1/2*i", "-3": "5"}}
    x = g.element_from_json(data)
    assert g.element_to_json(x) == {
        "H": {"1": "1/3", "2": "-2*i"},
        "E": {"+1": "1-1/2*i", "-3": "5"},
    }
    scaled = g.element_from_json({"H": {"1": "(1)*s"}})
    assert isinstance(scaled.coords[2 * g.npos], ScaledScalar)
    assert g.element_to_json(scaled) == {"H": {"1": "(1)*s"}}
    with pytest.raises(AlgebraError):
        g.element_from_json({"E": {"0": "1"}})
    with pytest.raises(AlgebraError):
        g.element_from_json({"E": {"+9": "1"}})


def test_structure_constant_magnitudes():
    # |N_{a,b}| = p+1 where p is the length of the alpha-string below beta
    for spec in ["A2", "B2", "G2"]:
        g = algebra(spec)
        for ia, alpha in enumerate(g.pos):
            for ib, beta in enumerate(g.pos):
                if ia == ib:
                    continue
                total = tuple(a + b for a, b in zip(alpha, beta))
                if not g._is_root(total):
                    continue
                n = g._nconst(alpha, beta)
                p = g._p_val(alpha, beta)
                assert n * n == as_gauss((p + 1) * (p + 1))


def test_ad_matrix_matches_bracket():
    g = algebra("A2")
    x = g.e_plus(1) + g.h(2).scale(G_I)
    m = g.ad_matrix(x)
    for j in range(g.dim):
        expect = g.bracket(x, g.basis_element(j))
        col = [m.rows[i][j] for i in range(g.dim)]
        assert col == expect.coords
