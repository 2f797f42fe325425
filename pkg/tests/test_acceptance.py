"""End-to-end acceptance gate, one test per criterion.

Every comparison is exact.  Runtime is dominated by the full G2 Kostant
verification (criterion 1, ceiling 300 admits every module used) and the
B2 leg of the oracle sweep (criterion 3).
"""

import random
from math import comb

import pytest

from liecoh import cli
from liecoh.chevalley import AlgebraElement, build as build_algebra
from liecoh.cohomology import (
    KoszulModule,
    ResonanceRefusal,
    invariance_verdict,
    koszul_cohomology,
    tangent_cohomology,
)
from liecoh.deform import ensure_valid, su2su2_preset
from liecoh.exactla import (
    ExactMatrix,
    G_ONE,
    G_ZERO,
    GaussianRational,
    RAT,
    ScaledScalar,
    as_gauss,
    in_span,
)
from liecoh.oracle import ce_nilradical, euler_consistency, per_lambda_complex
from liecoh.reps import build_module, freudenthal_multiplicities, weyl_dimension
from liecoh.resonance import beta_zero_solutions, certify, integral_regular_test
from liecoh.rootsystem import build as build_rs
from liecoh.weyl import enumerate_group

KOSTANT_SYSTEMS = ["A1", "A1xA1", "A2", "B2", "G2"]
SWEEP_SYSTEMS = ["A1xA1", "A1xA1xA1xA1", "B2"]
KOSTANT_CEILING = 300

_ALGEBRAS = {}


def algebra(spec):
    if spec not in _ALGEBRAS:
        _ALGEBRAS[spec] = build_algebra(build_rs(spec))
    return _ALGEBRAS[spec]


def passed(num, text):
    print("criterion %d PASS: %s" % (num, text))


def rho_list(rs):
    zero = tuple(0 for _ in range(rs.rank))
    return [zero] + [tuple(rs.root_weight_coords(a))
                     for a in rs.positive_roots]


def small_gauss(rng):
    while True:
        g = GaussianRational(RAT(rng.randrange(-2, 3), 2),
                             RAT(rng.randrange(-2, 3), 2))
        if not g.is_zero():
            return g


def sparse_element(alg, rng):
    coords = [G_ZERO] * alg.dim
    for idx in rng.sample(range(alg.dim), 2):
        coords[idx] = small_gauss(rng)
    return AlgebraElement(alg, coords)


def factor_element(alg, rs, comps, rng):
    """Element with one nonzero coordinate inside each listed component."""
    coords = [G_ZERO] * alg.dim
    for comp in comps:
        root = rng.choice(rs.component_positive_roots(comp))
        kind = rng.randrange(3)
        if kind == 0:
            idx = alg.index_of_root(root)
        elif kind == 1:
            idx = alg.npos + alg.index_of_root(root)
        else:
            idx = 2 * alg.npos + rs.component_simples[comp][0]
        coords[idx] = small_gauss(rng)
    return AlgebraElement(alg, coords)


def random_commuting_tuple(alg, rs, rng):
    if rs.rank == 2:
        return [sparse_element(alg, rng)]
    comps = list(range(rs.n_components))
    rng.shuffle(comps)
    half = len(comps) // 2
    return [factor_element(alg, rs, comps[:half], rng),
            factor_element(alg, rs, comps[half:], rng)]


def scaled(element):
    return element.scale(ScaledScalar(G_ZERO, G_ONE))


def generic_data():
    alg = algebra("A1xA1")
    x = scaled(alg.from_h_coords(["1", "1"]))
    data = su2su2_preset(alg, "0", "1", x_elements=[x], mode="scaled")
    ensure_valid(data)
    return data


def resonant_data():
    alg = algebra("A1xA1")
    x = alg.from_h_coords(["1/3", "0"])
    data = su2su2_preset(alg, "0", "1", x_elements=[x])
    ensure_valid(data)
    return data


def test_criterion_1_kostant_oracle():
    checked = 0
    for spec in KOSTANT_SYSTEMS:
        alg = algebra(spec)
        rs = alg.rs
        order = len(enumerate_group(rs))
        for lam in sorted(rs.dominant_weights_up_to(3)):
            assert weyl_dimension(rs, lam) <= KOSTANT_CEILING
            out = ce_nilradical(alg, lam, ceiling=KOSTANT_CEILING)
            assert out["dims"] == out["expected"]
            assert sum(out["dims"]) == order
            assert len(out["cocycles"]) == order
            checked += 1
    assert checked == 44
    passed(1, "nilradical cohomology equals the Weyl length histogram for "
              "all 44 modules, every Kostant cocycle closed and non-exact")


def test_criterion_2_undeformed_tangent_dims():
    for spec, l, dim_g in [("A1xA1", 1, 6), ("A1xA1xA1xA1", 2, 12),
                           ("B2", 1, 10)]:
        alg = algebra(spec)
        assert alg.dim == dim_g
        data = su2su2_preset(alg, "0", "1")
        graded, certs = tangent_cohomology(data)
        assert all(cert.passed() for _, cert in certs)
        assert graded.dims[0] == l + dim_g
        assert graded.dims == [comb(l, q) * (l + dim_g)
                               for q in range(l + 1)]
    passed(2, "X = 0 gives tangent dims C(l,q)(l + dim g); A1xA1 yields "
              "(7, 7) and H^0 = l + dim g on every even-rank system tried")


def test_criterion_3_oracle_sweep():
    rng = random.Random(20250825)
    pairs = 0
    for spec in SWEEP_SYSTEMS:
        alg = algebra(spec)
        rs = alg.rs
        lams = sorted(rs.dominant_weights_up_to(2))
        tuples = [None] + [random_commuting_tuple(alg, rs, rng)
                           for _ in range(5)]
        for xs in tuples:
            if xs is not None:
                assert alg.commuting_check(xs)
            data = su2su2_preset(alg, "0", "1", x_elements=xs)
            ensure_valid(data)
            for rho in rho_list(rs):
                report = euler_consistency(rho, data, lams)
                assert report["all_match"]
                for entry in report["entries"]:
                    assert entry["bwbd"] == entry["oracle"]
                pairs += len(report["entries"])
    assert pairs == 738
    passed(3, "closed-form and brute-force dims agree in every degree over "
              "738 (rho, lambda) pairs, X = 0 plus 5 random tuples per system")


def test_criterion_4_generic_deformation_certified():
    data = generic_data()
    for rho in [(2, 0), (0, 2), (0, 0)]:
        cert = certify(rho, data, strategy="scaled")
        assert cert.verdict == "non_resonant"
    graded, _ = tangent_cohomology(data)
    assert graded.dims[0] == 3
    verdict = invariance_verdict(data)
    assert verdict["verdict"] == "certified_non_invariant"
    assert verdict["d_deformed"] == 3
    assert verdict["d_invariant"] == 7
    passed(4, "scaled s(H1+H2) is certified non-resonant for all rho, "
              "tangent H^0 = 3 < 7, verdict certified_non_invariant")


def test_criterion_5_resonant_deformation_witnessed():
    data = resonant_data()
    cert = certify((2, 0), data, strategy="cutoff", cutoff=4)
    assert cert.verdict == "resonant"
    nonzero = [t for t in cert.resonances if not t.beta_is_zero()]
    assert len(nonzero) == 1
    witness = nonzero[0]
    assert witness.sigma.length == 0
    assert witness.lam == (3, 0)
    assert [as_gauss(b) for b in witness.beta] == [as_gauss(1)]
    dims = per_lambda_complex((2, 0), (3, 0), data)
    assert dims[0] >= 1
    assert dims == [1, 1, 0, 0]
    with pytest.raises(ResonanceRefusal) as exc:
        tangent_cohomology(data)
    refused = exc.value.certificate.witness
    assert refused.lam == (3, 0)
    assert refused.sigma.length == 0
    passed(5, "X = (1/3)H1 yields exactly the (e, 3w1, beta=1) resonance at "
              "rho = alpha1, a nonzero degree-0 oracle class, and a refusal "
              "carrying that witness")


def test_criterion_6_regular_root_chains():
    for spec in ["A1", "A2", "A1xA1"]:
        rs = build_rs(spec)
        for comp in range(rs.n_components):
            chain, _ = rs.regular_root_chain(comp)
            assert len(chain) == 1
    rs = build_rs("B2")
    chain, witness = rs.regular_root_chain(0)
    assert chain == [(1, 0), (1, 1), (1, 2)]
    assert chain[-1] == rs.highest_root(0)
    a_prime, a_dprime, simple = witness
    assert a_prime == tuple(x + y for x, y in zip(a_dprime, simple))
    assert a_prime in chain and a_dprime in chain
    rs = build_rs("G2")
    chain, _ = rs.regular_root_chain(0)
    alpha, beta = (1, 0), (0, 1)
    assert chain == [
        beta,
        tuple(2 * a + b for a, b in zip(alpha, beta)),
        tuple(3 * a + 2 * b for a, b in zip(alpha, beta)),
    ]
    passed(6, "chains have length 1 on A-type components, {a', a'', a_M} "
              "with a' = a'' + simple on B2, {b, 2a+b, 3a+2b} on G2")


def test_criterion_7_beta_zero_classifier():
    cases = 0
    for spec in KOSTANT_SYSTEMS:
        rs = build_rs(spec)
        for rho in rho_list(rs):
            solutions, integral = beta_zero_solutions(rho, rs)
            assert bool(solutions) == integral_regular_test(rho, rs)
            assert integral
            cases += 1
    assert cases == 21
    passed(7, "beta = 0 solutions are nonempty exactly when rho is integral "
              "with rho + rho_W regular, over 21 rho on the rank <= 2 systems")


def test_criterion_8a_jacobi_and_killing():
    for spec in KOSTANT_SYSTEMS:
        alg = algebra(spec)
        n = alg.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for m, cf in alg.bracket_indices(b, c).items():
                            cf = as_gauss(cf)
                            for t, cf2 in alg.bracket_indices(a, m).items():
                                val = acc.get(t, G_ZERO) + cf * as_gauss(cf2)
                                acc[t] = val
                    assert all(v.is_zero() for v in acc.values())
        for k in range(1, alg.npos + 1):
            assert alg.killing(alg.e_plus(k), alg.e_minus(k)) == as_gauss(1)
            for m in range(1, alg.npos + 1):
                assert alg.killing(alg.e_plus(k), alg.e_plus(m)).is_zero()
                if m != k:
                    assert alg.killing(alg.e_plus(k),
                                       alg.e_minus(m)).is_zero()
            for i in range(1, alg.rank + 1):
                assert alg.killing(alg.h(i), alg.e_plus(k)).is_zero()
        for i in range(alg.rank):
            for j in range(alg.rank):
                assert alg.killing(alg.h(i + 1), alg.h(j + 1)) \
                    == as_gauss(alg.killing_h(i, j))
    passed(8, "(a) Jacobi holds on every basis triple and the Killing form "
              "obeys the kappa(e_a, e_-a) = 1 normalization on all algebras")


def test_criterion_8b_dimension_formulas():
    for spec, bound in [(s, 3) for s in KOSTANT_SYSTEMS] + \
                       [(s, 2) for s in SWEEP_SYSTEMS]:
        alg = algebra(spec)
        rs = alg.rs
        for lam in rs.dominant_weights_up_to(bound):
            dim = weyl_dimension(rs, lam)
            if dim > KOSTANT_CEILING:
                continue
            assert dim == sum(freudenthal_multiplicities(rs, lam).values())
            assert dim == build_module(alg, lam).dim
    passed(8, "(b) Weyl dimension = sum of Freudenthal multiplicities = "
              "constructed module dimension for every lambda used")


def mat_mul(a, b):
    out = ExactMatrix.zeros(a.nrows, b.ncols)
    for i in range(a.nrows):
        for j in range(b.ncols):
            acc = G_ZERO
            for k in range(a.ncols):
                acc = acc + a.rows[i][k] * b.rows[k][j]
            out.rows[i][j] = acc
    return out


def test_criterion_8c_koszul_euler_characteristic():
    rng = random.Random(8)
    for trial in range(50):
        d = rng.randrange(2, 6)
        n = ExactMatrix.zeros(d, d)
        for i in range(d):
            for j in range(i + 1, d):
                n.rows[i][j] = GaussianRational(
                    RAT(rng.randrange(-2, 3)), RAT(rng.randrange(-2, 3)))
        n2 = mat_mul(n, n)
        if trial % 2 == 0:
            ops = [n]
        else:
            coeffs = [small_gauss(rng) for _ in range(2)]
            second = mat_mul(n, n2).scale(coeffs[0])
            for i in range(d):
                for j in range(d):
                    second.rows[i][j] = second.rows[i][j] \
                        + coeffs[1] * n2.rows[i][j]
            ops = [n, second]
        assert koszul_cohomology(KoszulModule(d, ops)) \
            .euler_characteristic() == 0
    passed(8, "(c) Koszul Euler characteristic vanishes on 50 random "
              "commuting-nilpotent modules with l in {1, 2}")


def test_criterion_8d_centralizer_in_zero_space():
    rng = random.Random(9)
    for trial in range(50):
        spec = SWEEP_SYSTEMS[trial % len(SWEEP_SYSTEMS)]
        alg = algebra(spec)
        xs = random_commuting_tuple(alg, alg.rs, rng)
        assert alg.commuting_check(xs)
        zero_space = alg.generalized_zero_space(xs)
        for vec in alg.centralizer(xs):
            assert in_span(zero_space, vec)
    passed(8, "(d) centralizer lies inside the generalized zero space on 50 "
              "random commuting tuples")


def test_criterion_8e_cartan_product_structure():
    data = generic_data()
    graded, _ = tangent_cohomology(data)
    assert graded.dims == [comb(1, q) * graded.dims[0] for q in range(2)]

    alg = algebra("A1xA1xA1xA1")
    xs = [scaled(alg.from_h_coords(["1", "1", "0", "0"])),
          scaled(alg.from_h_coords(["0", "0", "1", "1"]))]
    data = su2su2_preset(alg, "0", "1", x_elements=xs, mode="scaled")
    ensure_valid(data)
    graded, certs = tangent_cohomology(data)
    assert all(cert.passed() for _, cert in certs)
    assert graded.dims == [comb(2, q) * graded.dims[0] for q in range(3)]
    assert graded.dims[0] == 6
    passed(8, "(e) Cartan deformations factor as dims[q] = C(l,q) dims[0] "
              "for l = 1 and l = 2")


def test_criterion_9_report_determinism(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    inputs = [
        ("generic", ["report", "--preset", "su2su2", "--scaled",
                     "--x", "s*(H1+H2)"]),
        ("resonant", ["report", "--preset", "su2su2", "--x", "1/3*H1"]),
    ]
    for name, argv in inputs:
        first = tmp_path / (name + "-1.json")
        second = tmp_path / (name + "-2.json")
        assert cli.main(argv + ["--json", str(first)]) == cli.EXIT_OK
        assert cli.main(argv + ["--json", str(second),
                                "--no-cache"]) == cli.EXIT_OK
        assert first.read_bytes() == second.read_bytes()
        assert first.read_bytes()
    passed(9, "report payloads are byte-identical across reruns on both the "
              "generic and the resonant inputs")
