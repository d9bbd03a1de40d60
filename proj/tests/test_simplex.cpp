#include "doctest.h"
#include "testutil.hpp"

#include "cliffsym/simplex.hpp"
#include "cliffsym/symprod.hpp"

#include <cmath>

using namespace cliffsym;

namespace {

MV one(int n) { return MV::scalar(n, 1.0); }
MV e(int n, int i) { return MV::basis(n, i); }

// sym(prod us * v1^{-1} v2^{-1}) by the double geometric series in c_j = 1 - v_j,
// each term a finite symmetrization.
MV series_oracle(const std::vector<MV>& us, const MV& v1, const MV& v2, int K) {
    const int n = v1.dim();
    MV c1 = one(n) - v1, c2 = one(n) - v2;
    MV acc(n);
    for (int tot = 0; tot <= K; ++tot)
        for (int j = 0; j <= tot; ++j) {
            std::vector<MV> fs = us;
            for (int a = 0; a < j; ++a) fs.push_back(c1);
            for (int b = 0; b < tot - j; ++b) fs.push_back(c2);
            if (fs.empty()) {
                acc += one(n);
                continue;
            }
            acc += sym_multiset(group_identical(fs));
        }
    return acc;
}

}  // namespace

TEST_CASE("Gauss-Legendre exactness") {
    for (int m : {1, 2, 5, 16}) {
        GaussRule r = gauss_legendre01(m);
        for (int k = 0; k <= 2 * m - 1; ++k) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += r.w[i] * std::pow(r.x[i], k);
            CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
        }
    }
}

TEST_CASE("Gauss-Jacobi moments") {
    for (auto [p, q] : std::vector<std::pair<double, double>>{{-0.5, 0.0}, {0.0, -0.5}, {1.5, 2.0}, {-0.3, 0.7}}) {
        GaussRule r = gauss_jacobi01(8, p, q);
        for (int k = 0; k <= 15; ++k) {
            double s = 0.0;
            for (int i = 0; i < 8; ++i) s += r.w[i] * std::pow(r.x[i], k);
            double exact = std::exp(std::lgamma(p + k + 1) + std::lgamma(q + 1) - std::lgamma(p + q + k + 2));
            CHECK(s == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("multivariate beta") {
    CHECK(beta_multivariate({1, 1}) == doctest::Approx(1.0));
    CHECK(beta_multivariate({1, 1, 1}) == doctest::Approx(0.5));
    CHECK(beta_multivariate({2, 1}) == doctest::Approx(0.5));
    GaussRule r = gauss_legendre01(4);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += r.w[i] * r.x[i];
    CHECK(beta_multivariate({2, 1}) == doctest::Approx(s));
    CHECK(beta_multivariate({0.5, 0.5}) == doctest::Approx(M_PI));
    CHECK_THROWS_AS(beta_multivariate({1, -1}), Error);
}

TEST_CASE("Dirichlet illustration with two paravectors") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        MV u = tu::random_paravector(rng, 3), v = tu::random_paravector(rng, 3);
        MV expect = (u * u + (u * v + v * u) / 2.0 + v * v) / 3.0;
        auto F = dirichlet_mean([](const MV& x) { return x * x; }, {1, 1}, {u, v});
        CHECK(max_abs_diff(F.value, expect) <= 1e-10);
        CHECK(max_abs_diff(dirichlet_mean_power(2, {1, 1}, {u, v}), expect) <= 1e-14);
    }
}

TEST_CASE("Dirichlet mean basics") {
    std::mt19937_64 rng(32);
    MV u = tu::random_paravector(rng, 3), v = tu::random_paravector(rng, 3);
    auto lin = dirichlet_mean([](const MV& x) { return x; }, {1, 1}, {u, v});
    CHECK(max_abs_diff(lin.value, (u + v) / 2.0) < 1e-14);
    auto same = dirichlet_mean([](const MV& x) { return exp_paravector(x); }, {0.7, 1.3, 2.0}, {u, u, u});
    CHECK(max_abs_diff(same.value, exp_paravector(u)) < 1e-13);
    auto single = dirichlet_mean([](const MV& x) { return x * x * x; }, {2.0}, {u});
    CHECK(max_abs_diff(single.value, u * u * u) < 1e-14);
}

TEST_CASE("Dirichlet quadrature with singular weights matches exact moments") {
    std::mt19937_64 rng(33);
    MV a = tu::random_paravector(rng, 3), b = tu::random_paravector(rng, 3), c = tu::random_paravector(rng, 3);
    std::vector<double> w{0.5, 2.0, 1.5};
    for (int k = 1; k <= 4; ++k) {
        auto F = dirichlet_mean([k](const MV& x) { return power(x, k); }, w, {a, b, c});
        CHECK(max_abs_diff(F.value, dirichlet_mean_power(k, w, {a, b, c})) < 1e-10);
    }
    // Smooth non-polynomial integrand against the adaptive refinement with a
    // singular weight on one edge.
    QuadratureSpec fine{20, 1e-12, 10};
    auto F = dirichlet_mean([](const MV& x) { return exp_paravector(x); }, {0.3, 1.0}, {a, b}, fine);
    auto G = dirichlet_mean([](const MV& x) { return exp_paravector(x); }, {0.3, 1.0}, {a, b});
    CHECK(max_abs_diff(F.value, G.value) < 1e-10);
}

TEST_CASE("Dirichlet mean of t^l over uniform weights recovers the symmetric product") {
    std::mt19937_64 rng(34);
    const int n = 3;
    std::vector<MV> us{tu::random_paravector(rng, n), tu::random_paravector(rng, n), tu::random_paravector(rng, n)};
    // Inclusion-exclusion over subsets picks the multilinear part of the degree-3 form.
    MV multi(n);
    for (unsigned S = 1; S < 8; ++S) {
        std::vector<MV> vs;
        for (int i = 0; i < 3; ++i) vs.push_back((S >> i) & 1 ? us[i] : MV(n));
        auto F = dirichlet_mean([](const MV& x) { return x * x * x; }, {1, 1, 1}, vs);
        multi += F.value * (((3 - std::popcount(S)) & 1) ? -1.0 : 1.0);
    }
    // Multilinear part is 3! E[t1 t2 t3] sym(u1 u2 u3), and E[t1 t2 t3] = 2!/5!.
    MV expect = sym_bruteforce(us) * (6.0 / 60.0);
    CHECK(max_abs_diff(multi, expect) < 1e-12);
}

TEST_CASE("Feynman pair examples") {
    const int n = 3;
    MV u = one(n) + e(n, 1) * 0.3;
    MV u2 = paravector_inverse(u) * paravector_inverse(u);
    CHECK(max_abs_diff(feynman_inverse_pair(u, u).value, u2) < 1e-15);
    CHECK(max_abs_diff(feynman_inverse_pair(u, u * 2.0).value, u2 / 2.0) < 1e-15);
    MV v = one(n) - e(n, 2) * 0.2;
    auto F = feynman_inverse_pair(u, v);
    CHECK(max_abs_diff(F.value, series_oracle({}, u, v, 60)) < 1e-8);
    CHECK(max_abs_diff(F.value, sym_inverse_pair_series(u, v).value) < 1e-12);
    try {
        feynman_inverse_pair(u, u * -1.0);
        FAIL("expected SingularPath");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::SingularPath);
    }
    CHECK_THROWS_AS(feynman_inverse_pair(u, MV(n)), Error);
}

TEST_CASE("Feynman pair against double series, random near-one pairs") {
    std::mt19937_64 rng(35);
    for (int rep = 0; rep < 40; ++rep) {
        MV u = tu::near_one(rng, 3, 0.4), v = tu::near_one(rng, 3, 0.4);
        auto F = feynman_inverse_pair(u, v);
        CHECK(max_abs_diff(F.value, series_oracle({}, u, v, 45)) < 1e-8);
    }
}

TEST_CASE("Feynman pair scaling") {
    std::mt19937_64 rng(36);
    for (int rep = 0; rep < 10; ++rep) {
        MV u = tu::near_one(rng, 3, 0.5), v = tu::near_one(rng, 3, 0.5);
        const double a = 1.7;
        MV base = feynman_inverse_pair(u, v).value;
        MV sc = feynman_inverse_pair(u * a, v * a).value;
        CHECK(max_abs_diff(sc, base / (a * a)) < 1e-14);
    }
}

TEST_CASE("hull distance") {
    const int n = 2;
    auto d1 = hull_distance_to_origin({one(n), one(n) * -1.0});
    CHECK(d1.lower == 0.0);
    auto d2 = hull_distance_to_origin({one(n) + e(n, 1), one(n) - e(n, 1)});
    CHECK(d2.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d2.upper == doctest::Approx(1.0).epsilon(1e-12));
    auto d3 = hull_distance_to_origin({e(n, 1), e(n, 2), one(n)});
    CHECK(d3.lower == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("mixed rational examples") {
    const int n = 3;
    std::mt19937_64 rng(37);
    MV v1 = tu::near_one(rng, n, 0.5), v2 = tu::near_one(rng, n, 0.5);
    auto a = sym_mixed_rational({one(n)}, {v1, v2});
    CHECK(max_abs_diff(a.value, feynman_inverse_pair(v1, v2).value) < 1e-12);
    for (int l = 1; l <= 3; ++l) {
        std::vector<MV> us;
        for (int i = 0; i < l; ++i) us.push_back(tu::random_paravector(rng, n));
        auto r = sym_mixed_rational(us, std::vector<MV>(l + 1, one(n)));
        CHECK(max_abs_diff(r.value, sym_bruteforce(us)) < 1e-12);
    }
    MV w1 = one(n) + e(n, 1) * 0.2, w2 = one(n) - e(n, 2) * 0.1;
    auto b = sym_mixed_rational({e(n, 1)}, {w1, w2});
    CHECK(max_abs_diff(b.value, series_oracle({e(n, 1)}, w1, w2, 30)) < 1e-8);
    auto z = sym_mixed_rational({MV(n), e(n, 1)}, {w1, w2});
    CHECK(z.value.is_zero());
    try {
        sym_mixed_rational({e(n, 1)}, {one(n), one(n) * -1.0});
        FAIL("expected SingularPath");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::SingularPath);
    }
}

TEST_CASE("mixed rational with two numerators against series") {
    const int n = 3;
    std::mt19937_64 rng(38);
    MV u1 = tu::random_paravector(rng, n), u2 = tu::random_paravector(rng, n);
    MV v1 = tu::near_one(rng, n, 0.25), v2 = tu::near_one(rng, n, 0.25);
    // Three inverted factors, the third padded with 1.
    auto r = sym_mixed_rational({u1, u2}, {v1, v2});
    CHECK(max_abs_diff(r.value, series_oracle({u1, u2}, v1, v2, 30)) < 1e-8);
}

TEST_CASE("mixed rational permutation invariance") {
    const int n = 3;
    std::mt19937_64 rng(39);
    MV u1 = tu::random_paravector(rng, n), u2 = tu::random_paravector(rng, n);
    MV v1 = tu::near_one(rng, n, 0.5), v2 = tu::near_one(rng, n, 0.5), v3 = tu::near_one(rng, n, 0.5);
    MV base = sym_mixed_rational({u1, u2}, {v1, v2, v3}).value;
    CHECK(max_abs_diff(sym_mixed_rational({u2, u1}, {v1, v2, v3}).value, base) < 1e-13);
    CHECK(max_abs_diff(sym_mixed_rational({u1, u2}, {v3, v1, v2}).value, base) < 1e-10);
}

TEST_CASE("paravector eigenvalues") {
    auto a = paravector_eigenvalues(MV::scalar(3, 3.0));
    CHECK(a.first == Complex(3, 0));
    CHECK(a.second == Complex(3, 0));
    auto b = paravector_eigenvalues(e(3, 1));
    CHECK(b.first == Complex(0, 1));
    CHECK(b.second == Complex(0, -1));
    auto c = paravector_eigenvalues(one(3) + e(3, 2) * 2.0);
    CHECK(c.first == Complex(1, 2));
    CHECK(c.second == Complex(1, -2));
}

TEST_CASE("contour power") {
    const int n = 3;
    Contour c2{Complex(0, 0), 2.0, 64};
    CHECK(max_abs_diff(contour_power(e(n, 1), 2, c2).value, MV::scalar(n, -1.0)) < 1e-12);
    std::mt19937_64 rng(40);
    for (int rep = 0; rep < 10; ++rep) {
        MV u = tu::random_paravector(rng, n);
        Contour c = Contour::around(u);
        CHECK(max_abs_diff(contour_power(u, 0, c).value, one(n)) < 1e-12);
        for (int p = 1; p <= 4; ++p) CHECK(max_abs_diff(contour_power(u, p, c).value, power(u, p)) < 1e-8);
    }
    CHECK(max_abs_diff(contour_power(MV::scalar(n, 0.7), 3, Contour::around(MV::scalar(n, 0.7))).value,
                       MV::scalar(n, 0.343)) < 1e-13);
    try {
        contour_power(e(n, 1) * 3.0, 1, c2);
        FAIL("expected EigenvalueOutsideContour");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::EigenvalueOutsideContour);
    }
}

TEST_CASE("contour symmetric power") {
    const int n = 3;
    Contour c{Complex(0, 0), 3.0, 64};
    auto r = contour_sym_power(e(n, 1), e(n, 2), 2, 1, c, c);
    CHECK(max_abs_diff(r.value, e(n, 2) * (-1.0 / 3.0)) < 1e-6);
    std::mt19937_64 rng(41);
    MV u1 = tu::random_paravector(rng, n), u2 = tu::random_paravector(rng, n);
    Contour k1 = Contour::around(u1), k2 = Contour::around(u2);
    auto s11 = contour_sym_power(u1, u2, 1, 1, k1, k2);
    CHECK(max_abs_diff(s11.value, (u1 * u2 + u2 * u1) / 2.0) < 1e-6);
    auto s20 = contour_sym_power(u1, u2, 2, 0, k1, k2);
    CHECK(max_abs_diff(s20.value, u1 * u1) < 1e-6);
    Contour d1 = k1, d2 = k2;
    d1.nodes *= 2;
    d2.nodes *= 2;
    auto s11d = contour_sym_power(u1, u2, 1, 1, d1, d2);
    CHECK(max_abs_diff(s11d.value, s11.value) < 1e-9);
}
