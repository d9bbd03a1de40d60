#include "doctest.h"
#include "testutil.hpp"

#include "cliffsym/cliffun.hpp"
#include "cliffsym/core.hpp"

#include <algorithm>
#include <numeric>

using namespace cliffsym;

namespace {

MV e(int n, int i) { return MV::basis(n, i); }
MV one(int n) { return MV::scalar(n, 1.0); }

MV sample_point(std::mt19937_64& rng, int n) {
    MV x = tu::random_paravector(rng, n);
    x.vec(0) += 0.3;
    return x;
}

// Ordered sum over all |alpha|! orderings of the letter positions.
MV brute_P(const MultiIndex& a, const MV& x) {
    const int n = a.dim();
    std::vector<int> L = a.letters();
    std::vector<int> perm(L.size());
    std::iota(perm.begin(), perm.end(), 0);
    MV acc(n);
    do {
        MV t = one(n);
        for (std::size_t k = 0; k + 1 < perm.size(); ++k) t = t * e(n, L[perm[k]]) * x;
        acc += t * e(n, L[perm.back()]);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

MV brute_S(const MultiIndex& b, const MV& x) {
    const int n = b.dim();
    MV y = paravector_inverse(x);
    std::vector<int> L = b.letters();
    std::vector<int> perm(L.size());
    std::iota(perm.begin(), perm.end(), 0);
    MV acc(n);
    do {
        MV t = one(n);
        for (int k : perm) t = t * y * e(n, L[k]);
        acc += t * y;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

MultiIndex random_index(std::mt19937_64& rng, int n, int order) {
    std::uniform_int_distribution<int> pick(0, n);
    MultiIndex a = MultiIndex::zero(n);
    for (int k = 0; k < order; ++k) a.idx[pick(rng)] += 1;
    return a;
}

double sampled_diff(const RationalFun& f, const std::function<MV(const MV&)>& g, int n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < count; ++s) {
        MV x = sample_point(rng, n);
        worst = std::max(worst, max_abs_diff(f.eval(x), g(x)));
    }
    return worst;
}

}  // namespace

TEST_CASE("powers of x") {
    const int n = 3;
    CHECK(power_x(n, 1).num() == PolyFun::identity(n));
    RationalFun id = (power_x(n, -1) * power_x(n, 1)).normalized();
    CHECK(id.q_power() == 0);
    CHECK(id.num() == PolyFun::constant(n, 1));
    // n = 1 behaves like the complex square.
    RationalFun sq = power_x(1, 2);
    PolyFun expect = PolyFun::coordinate(1, 0) * PolyFun::coordinate(1, 0) -
                     PolyFun::coordinate(1, 1) * PolyFun::coordinate(1, 1) +
                     PolyFun::constant(QMV::basis(1, 1)) * PolyFun::coordinate(1, 0) * PolyFun::coordinate(1, 1) *
                         Rational(2);
    CHECK(sq.num() == expect);
    std::mt19937_64 rng(50);
    for (int k = -3; k <= 4; ++k) {
        MV x = sample_point(rng, n);
        MV direct = k >= 0 ? power(x, k) : power(paravector_inverse(x), -k);
        CHECK(max_abs_diff(power_x(n, k).eval(x), direct) < 1e-11);
    }
}

TEST_CASE("Dirac operator and Laplacian") {
    for (int n : {1, 2, 3, 5}) {
        RationalFun x = power_x(n, 1);
        CHECK(dirac_D(x).num() == PolyFun::constant(n, 1 - n));
        CHECK(laplacian(x).is_zero());
        CHECK(laplacian(power_x(n, 2)).num() == PolyFun::constant(n, 2 - 2 * n));
    }
}

TEST_CASE("rational derivatives match finite differences") {
    const int n = 3;
    std::mt19937_64 rng(51);
    RationalFun f = power_x(n, -2) * power_x(n, 1) + power_x(n, 3);
    for (int i = 0; i <= n; ++i) {
        MV x = sample_point(rng, n);
        const double h = 1e-5;
        MV xp = x, xm = x;
        xp.vec(i) += h;
        xm.vec(i) -= h;
        MV fd = (f.eval(xp) - f.eval(xm)) / (2 * h);
        CHECK(max_abs_diff(f.derivative(i).eval(x), fd) < 1e-6);
    }
}

TEST_CASE("holomorphy of powers in R_{0,3}") {
    const int n = 3;
    for (int k = 0; k <= 6; ++k) CHECK(holo_check(power_x(n, k)).is_zero());
    CHECK(holo_check(power_x(n, -1)).is_zero());
    RationalFun x0sq(PolyFun::coordinate(n, 0) * PolyFun::coordinate(n, 0), 0);
    CHECK(!laplacian(x0sq).is_zero());
    CHECK(holo_check(x0sq).is_zero());
    RationalFun quartic(norm_squared(n) * norm_squared(n), 0);
    CHECK(!holo_check(quartic).is_zero());
    CHECK(sampled_max(holo_check(quartic), 10, 1) > 1e-3);
    CHECK_THROWS_AS(holo_check(power_x(2, 2)), Error);
}

TEST_CASE("P_alpha construction") {
    const int n = 3;
    CHECK(P_alpha(MultiIndex::unit(n, 1)) == PolyFun::constant(QMV::basis(n, 1)));
    MultiIndex a20 = MultiIndex::zero(n);
    a20.idx[0] = 2;
    CHECK(P_alpha(a20) == PolyFun::identity(n) * Rational(2));
    std::mt19937_64 rng(52);
    for (int order = 1; order <= 5; ++order)
        for (int rep = 0; rep < 4; ++rep) {
            MultiIndex a = random_index(rng, n, order);
            MV x = sample_point(rng, n);
            CHECK(max_abs_diff(P_alpha(a).eval(x), brute_P(a, x)) < 1e-11);
        }
    CHECK_THROWS_AS(P_alpha(MultiIndex::zero(n)), Error);
    MultiIndex big = MultiIndex::zero(n);
    big.idx[1] = 9;
    CHECK_THROWS_AS(P_alpha(big), Error);
}

TEST_CASE("S_beta construction and normalization") {
    const int n = 3;
    CHECK(S_beta(MultiIndex::zero(n)).num() == power_x(n, -1).num());
    std::mt19937_64 rng(53);
    for (int order = 0; order <= 3; ++order)
        for (int rep = 0; rep < 4; ++rep) {
            MultiIndex b = random_index(rng, n, order);
            MV x = sample_point(rng, n);
            CHECK(max_abs_diff(S_beta(b).eval(x), brute_S(b, x)) < 1e-10);
            // The permutation sum is exactly (-1)^|b| d^b x^-1; no |b|! factor.
            CHECK((S_beta(b) - sym_S_beta(b)).is_zero());
        }
    // The resolving comparison at x = 1 + e1 for b = e_1 and b = 2 e_1.
    MV x = one(n) + e(n, 1);
    MultiIndex b1 = MultiIndex::unit(n, 1), b2 = b1 + b1;
    CHECK(max_abs_diff(brute_S(b1, x), sym_S_beta(b1).eval(x)) < 1e-15);
    CHECK(max_abs_diff(brute_S(b2, x), sym_S_beta(b2).eval(x)) < 1e-15);
}

TEST_CASE("sym_S_beta is paravector valued") {
    const int n = 3;
    std::mt19937_64 rng(54);
    for (int order = 0; order <= 3; ++order) {
        MultiIndex b = random_index(rng, n, order);
        for (int s = 0; s < 20; ++s) {
            MV v = sym_S_beta(b).eval(sample_point(rng, n));
            CHECK(nonparavector_max(v) < 1e-12);
            CHECK(max_abs_diff(grade01(v), v) < 1e-12);
        }
    }
}

TEST_CASE("symmetrized P_alpha") {
    const int n = 3;
    // sym(e1^2 x) = e1 x e1 / 3 - 2x / 3.
    std::mt19937_64 rng(55);
    for (int s = 0; s < 10; ++s) {
        MV x = sample_point(rng, n);
        MV expect = e(n, 1) * x * e(n, 1) / 3.0 - x * (2.0 / 3.0);
        CHECK(max_abs_diff(sym({e(n, 1), e(n, 1), x}), expect) < 1e-14);
    }
    MultiIndex a0 = MultiIndex::unit(n, 0);
    CHECK(sym_P_alpha(a0).num() == PolyFun::constant(n, 1));
    for (int order = 1; order <= 4; ++order)
        for (int rep = 0; rep < 3; ++rep) {
            MultiIndex a = random_index(rng, n, order);
            for (int s = 0; s < 50; ++s) {
                MV x = sample_point(rng, n);
                SymMonomial m{a, order - 1};
                MV viaSym = eval_sym_monomial(m, x) * factorial(order);
                CHECK(max_abs_diff(sym_P_alpha(a).eval(x), viaSym) < 1e-11 * std::max(1.0, max_abs(viaSym)));
            }
        }
    CHECK(sym_P_alpha_constant(1) == 1);
    CHECK(sym_P_alpha_constant(2) == Rational(1, 3));
    CHECK(sym_P_alpha_constant(3) == Rational(1, 10));
}

TEST_CASE("weight k_alpha differs from the symmetrization constant beyond order one") {
    const int n = 3;
    MultiIndex a = MultiIndex::zero(n);
    a.idx[0] = 2;
    CHECK(a.weight() == 1);
    MV x = one(n) + e(n, 2) * 0.5;
    MV literal = partial(power_x(n, 3), a).eval(x) * to_double(Rational(a.weight()));
    MV symmetrized = P_alpha(a).eval(x);  // already symmetric here: 2x
    CHECK(max_abs_diff(symmetrized, x * 2.0) < 1e-15);
    CHECK(max_abs_diff(literal, x * 6.0) < 1e-14);
}

TEST_CASE("multi-index weight") {
    CHECK(MultiIndex({1, 1, 0, 0}).weight() == 2);
    CHECK(MultiIndex({2, 1, 0, 1}).weight() == 12);
    CHECK(MultiIndex({0, 0, 0, 0}).weight() == 1);
    CHECK_THROWS_AS(MultiIndex({1, -1}), Error);
}

TEST_CASE("symmetric monomial products") {
    const int n = 3;
    SymMonomial a{MultiIndex::zero(n), 2}, b{MultiIndex::zero(n), 3};
    CHECK((a * b).h == 5);
    SymMonomial c{MultiIndex::unit(n, 1), 1}, d{MultiIndex::unit(n, 1), 0};
    SymMonomial cd = c * d;
    CHECK(cd.h == 1);
    CHECK(cd.alpha == MultiIndex::unit(n, 1) + MultiIndex::unit(n, 1));
    MV x = one(n) + e(n, 2);
    MV expect = e(n, 1) * x * e(n, 1) / 3.0 - x * (2.0 / 3.0);
    for (Engine eng : {Engine::BruteForce, Engine::Multiset, Engine::Polarization, Engine::Auto})
        CHECK(max_abs_diff(eval_sym_monomial(cd, x, eng), expect) < 1e-14);
    CHECK(max_abs_diff(convert<double>(sym_monomial_poly(cd).eval_exact(convert<Rational>(x))), expect) < 1e-15);
    CHECK(max_abs_diff(eval_sym_monomial(a * b, x), power(x, 5)) < 1e-12);
}

TEST_CASE("exponential products") {
    const int n = 3;
    std::mt19937_64 rng(56);
    for (int rep = 0; rep < 10; ++rep) {
        MV x = tu::random_paravector(rng, n), a = tu::random_paravector(rng, n);
        CHECK(max_abs_diff(sym_const_exp(one(n), x), exp_paravector(x)) < 1e-13);
        const double s = 1e-4;
        MV fd = (exp_paravector(x + a * s) - exp_paravector(x - a * s)) / (2 * s);
        CHECK(max_abs_diff(sym_const_exp(a, x), fd) < 1e-7);
        CHECK(max_abs_diff(sym_exp_exp(x, x * -1.0), one(n)) < 1e-15);
        CHECK(nonparavector_max(sym_const_exp(a, x)) < 1e-12);
    }
}

TEST_CASE("directional derivative of symmetric monomials") {
    const int n = 3;
    auto z = directional_sym_derivative(e(n, 1), one(n), 0);
    CHECK(z.lhs.is_zero());
    CHECK(z.rhs.is_zero());
    auto lin = directional_sym_derivative(e(n, 2) + e(n, 3) * 0.5, one(n), 1);
    CHECK(lin.exact_zero());
    CHECK(max_abs_diff(lin.lhs.eval(one(n)), e(n, 2) + e(n, 3) * 0.5) < 1e-15);
    auto sq = directional_sym_derivative(e(n, 2), e(n, 1), 2);
    CHECK(sq.exact_zero());
    CHECK(sampled_max(sq.residual(), 20, 3) <= 1e-12);
    std::mt19937_64 rng(57);
    for (int p : {1, 2, 3, 4}) {
        MV u = tu::random_paravector(rng, n), a = tu::random_paravector(rng, n);
        u.vec(0) = 0.0;
        CHECK(directional_sym_derivative(u, a, p).exact_zero());
    }
    MV u = e(n, 2) - e(n, 1) * 0.25;
    CHECK(directional_sym_derivative(u, one(n), -1).exact_zero());
    CHECK(directional_sym_derivative(u, e(n, 3), -2).exact_zero());
    CHECK_THROWS_AS(directional_sym_derivative(u, one(n), -3), Error);
    // Left side against finite differences of the plain function.
    MV x = sample_point(rng, n);
    const double h = 1e-5;
    MV fd = (paravector_inverse(MV(x + u * h)) - paravector_inverse(MV(x - u * h))) / (2 * h);
    CHECK(max_abs_diff(directional_sym_derivative(u, one(n), -1).lhs.eval(x), fd) < 1e-6);
}

TEST_CASE("interleaved inverse forms match the Feynman integral") {
    const int n = 3;
    std::mt19937_64 rng(58);
    MV u = tu::random_paravector(rng, n);
    u.vec(0) = 0.0;
    MV x = tu::near_one(rng, n, 0.5);
    ScalarCoeffSeries inv = ScalarCoeffSeries::power(n, -1);
    for (int q = 1; q <= 3; ++q) {
        auto id = iterated_scalar_derivative(u, inv, q);
        std::vector<MV> us(q, u), vs(q + 1, x);
        MV viaIntegral = sym_mixed_rational(us, vs).value * (factorial(q) * (q % 2 ? -1.0 : 1.0));
        CHECK(max_abs_diff(id.lhs.eval(x), viaIntegral) < 1e-10);
    }
}

TEST_CASE("iterated scalar derivative") {
    const int n = 3;
    auto cube = ScalarCoeffSeries::power(n, 3);
    auto id0 = iterated_scalar_derivative(e(n, 1), cube, 0);
    CHECK(id0.exact_zero());
    CHECK((id0.lhs - power_x(n, 3)).is_zero());
    CHECK(iterated_scalar_derivative(e(n, 1), cube, 2).exact_zero());
    auto inv = ScalarCoeffSeries::power(n, -1);
    auto id = iterated_scalar_derivative(e(n, 2), inv, 1);
    MV x = one(n) + e(n, 3);
    CHECK(max_abs_diff(id.lhs.eval(x), id.rhs.eval(x)) <= 1e-10);
    CHECK(id.exact_zero());
    std::mt19937_64 rng(59);
    for (int q = 0; q <= 3; ++q) {
        ScalarCoeffSeries f;
        f.n = n;
        f.poly.emplace_back(random_index(rng, n, 2), QMV::scalar(n, Rational(3, 7)));
        f.poly.emplace_back(random_index(rng, n, 3), QMV::scalar(n, Rational(-2)));
        f.singular.emplace_back(random_index(rng, n, 1), Rational(5, 2));
        MV u = tu::random_paravector(rng, n);
        u.vec(0) = 0.0;
        auto r = iterated_scalar_derivative(u, f, q);
        CHECK(r.exact_zero());
        CHECK(sampled_max(r.residual(), 10, q) <= 1e-10);
    }
}

TEST_CASE("Cauchy-Riemann residual") {
    const int n = 3;
    CHECK(cr_residual(ScalarCoeffSeries::power(n, 1), e(n, 1)).is_zero());
    CHECK(cr_residual(ScalarCoeffSeries::power(n, 2), e(n, 2)).is_zero());
    std::mt19937_64 rng(60);
    std::uniform_int_distribution<int> small(-5, 5), ord(0, 3);
    for (int rep = 0; rep < 20; ++rep) {
        ScalarCoeffSeries f;
        f.n = n;
        for (int t = 0; t < 3; ++t)
            f.poly.emplace_back(random_index(rng, n, ord(rng)), QMV::scalar(n, Rational(small(rng), 1 + rep)));
        f.singular.emplace_back(random_index(rng, n, ord(rng) % 3), Rational(small(rng)));
        MV u = tu::random_paravector(rng, n);
        u.vec(0) = 0.0;
        RationalFun res = cr_residual(f, u);
        CHECK(res.is_zero());
    }
    // x e12 with u = e1: sym(e1 e1 e2) = -e2/3 on the left, -e2 on the right.
    ScalarCoeffSeries g = ScalarCoeffSeries::power(n, 1);
    g.poly[0].second = QMV::blade(n, 0b011, g.poly[0].second[0]);
    CHECK(!g.scalar_coefficients());
    RationalFun res = cr_residual(g, e(n, 1));
    CHECK(!res.is_zero());
    MV val = res.eval(one(n) + e(n, 3));
    CHECK(max_abs_diff(val, e(n, 2) * (2.0 / 3.0)) < 1e-14);
    // A constant bivector term alone is annihilated by both sides.
    ScalarCoeffSeries c;
    c.n = n;
    c.poly.emplace_back(MultiIndex::zero(n), QMV::blade(n, 0b011, Rational(1)));
    CHECK(cr_residual(c, e(n, 1)).is_zero());
}

TEST_CASE("Taylor expansion") {
    const int n = 3;
    std::mt19937_64 rng(61);
    MV a = sample_point(rng, n), x = tu::random_paravector(rng, n);
    auto sq = ScalarCoeffSeries::power(n, 2);
    auto sums = taylor_partial_sums(sq, a, x, 2);
    CHECK(max_abs_diff(sums[0], a * a) < 1e-13);
    CHECK(max_abs_diff(sums[1], a * a + a * x + x * a) < 1e-13);
    CHECK(max_abs_diff(sums[2], (a + x) * (a + x)) < 1e-13);
    CHECK(max_abs_diff(taylor_sym(sq, a, MV(n), 5), a * a) < 1e-13);
    // Terms of x^3 are C(3,k) sym(x^k a^(3-k)).
    auto cube = ScalarCoeffSeries::power(n, 3);
    auto cs = taylor_partial_sums(cube, a, x, 3);
    MV t1 = cs[1] - cs[0], t2 = cs[2] - cs[1];
    CHECK(max_abs_diff(t1, sym_multiset<MV>({{x, 1}, {a, 2}}) * 3.0) < 1e-12);
    CHECK(max_abs_diff(t2, sym_multiset<MV>({{x, 2}, {a, 1}}) * 3.0) < 1e-12);
    CHECK(max_abs_diff(cs[3], power(MV(a + x), 3)) < 1e-12);
    // x^-1 about a with |x| well inside the radius.
    MV b = MV::scalar(n, 2.0) + e(n, 1) * 0.5;
    MV h = e(n, 2) * 0.6 + e(n, 3) * 0.3 + one(n) * 0.2;
    auto inv = ScalarCoeffSeries::power(n, -1);
    auto is = taylor_partial_sums(inv, b, h, 12);
    MV target = paravector_inverse(MV(b + h));
    const double ratio = operator_norm(h) / operator_norm(b);
    double prev = 1e300;
    for (int K = 2; K <= 12; ++K) {
        double err = operator_norm(MV(is[K] - target));
        CHECK(err < prev);
        CHECK(err <= std::pow(ratio, K + 1) / (1 - ratio) * operator_norm(paravector_inverse(b)));
        prev = err;
    }
}

TEST_CASE("Lagrange interpolation") {
    const int n = 3;
    auto c = lagrange_interpolate({e(n, 1)}, {one(n) * 2.5 + e(n, 2)});
    CHECK(max_abs_diff(c(e(n, 3)), one(n) * 2.5 + e(n, 2)) < 1e-15);
    auto lin = lagrange_interpolate({MV(n), one(n)}, {MV(n), one(n)});
    std::mt19937_64 rng(62);
    for (int s = 0; s < 5; ++s) {
        MV x = tu::random_paravector(rng, n);
        CHECK(max_abs_diff(lin(x), x) < 1e-14);
    }
    // Scalar nodes, scalar argument: classical formula.
    std::vector<double> xs{-1.0, 0.5, 2.0};
    std::vector<MV> nodes, vals;
    for (double t : xs) {
        nodes.push_back(one(n) * t);
        vals.push_back(tu::random_paravector(rng, n));
    }
    auto quad = lagrange_interpolate(nodes, vals);
    for (double t : {0.0, 0.3, 1.7}) {
        MV classical(n);
        for (int i = 0; i < 3; ++i) {
            double w = 1.0;
            for (int k = 0; k < 3; ++k)
                if (k != i) w *= (t - xs[k]) / (xs[i] - xs[k]);
            classical += vals[i] * w;
        }
        CHECK(max_abs_diff(quad(one(n) * t), classical) < 1e-14);
    }
    CHECK_THROWS_AS(lagrange_interpolate({e(n, 1), e(n, 1)}, {one(n), one(n)}), Error);
}

TEST_CASE("Lagrange interpolation hits paravector nodes") {
    const int n = 3;
    MV a0 = one(n) * 0.5 + e(n, 3), a1 = e(n, 1) - e(n, 2) * 2.0;
    auto P = lagrange_interpolate({e(n, 1), one(n) + e(n, 2)}, {a0, a1});
    CHECK(max_abs_diff(P(e(n, 1)), a0) < 1e-8);
    CHECK(max_abs_diff(P(one(n) + e(n, 2)), a1) < 1e-8);
    std::mt19937_64 rng(63);
    std::vector<MV> nodes{one(n) * 0.2 + e(n, 1), one(n) * 1.5 - e(n, 2) * 0.5, one(n) * 0.9 + e(n, 3) * 0.7};
    std::vector<MV> vals;
    for (int i = 0; i < 3; ++i) vals.push_back(tu::random_paravector(rng, n));
    auto Q = lagrange_interpolate(nodes, vals);
    for (int i = 0; i < 3; ++i) CHECK(max_abs_diff(Q(nodes[i]), vals[i]) < 1e-8);
    MV mid = Q((nodes[0] + nodes[1]) * 0.5);
    CHECK(nonparavector_max(mid) < 1e-10);
    nodes.push_back(one(n) * 0.4 - e(n, 1) * 0.3);
    vals.push_back(tu::random_paravector(rng, n));
    auto R = lagrange_interpolate(nodes, vals);
    for (int i = 0; i < 4; ++i) CHECK(max_abs_diff(R(nodes[i]), vals[i]) < 1e-8);
}

TEST_CASE("partial fractions") {
    const int n = 3;
    MV two = one(n) * 2.0;
    CHECK(partial_fraction_check(e(n, 1), e(n, 1), two) == 0.0);
    CHECK(partial_fraction_check(one(n) * 0.5, one(n) * -0.7, two) < 1e-14);
    CHECK(partial_fraction_check(e(n, 1), e(n, 2), two) < 1e-8);
    CHECK_THROWS_AS(partial_fraction_check(one(n), one(n) * 3.0, two), Error);
}

TEST_CASE("Morera loop integral") {
    const int n = 3;
    Rect sq{1.0, 2.0, 1.0, 2.0};
    CHECK(max_abs(morera_integral([&](const MV&) { return one(n) * 3.0 + e(n, 2); }, e(n, 1), sq)) < 1e-15);
    CHECK(max_abs(morera_integral(ScalarCoeffSeries::power(n, 2), e(n, 1), sq)) < 1e-9);
    MV anti = morera_integral([](const MV& x) { return paravector_conj(x); }, e(n, 1), sq);
    CHECK(max_abs(anti) > 0.1);
    CHECK(max_abs(morera_integral(ScalarCoeffSeries::power(n, -1), e(n, 2), Rect{0.5, 1.5, -0.5, 0.5})) < 1e-9);
    CHECK_THROWS_AS(morera_integral(ScalarCoeffSeries::power(n, -1), e(n, 1), Rect{0.0, 1.0, -1.0, 1.0}), Error);
    CHECK_THROWS_AS(morera_integral(ScalarCoeffSeries::power(n, 2), e(n, 1) * 2.0, sq), Error);
}

TEST_CASE("difference quotient is direction independent") {
    const int n = 3;
    std::mt19937_64 rng(64);
    for (int p : {1, 2, 3, 4}) {
        MV x = sample_point(rng, n);
        MV limit = sym_multiset<MV>({{x, std::max(p - 1, 1)}}) * double(p);
        if (p == 1) limit = one(n);
        MV first = sym_central_quotient(p, x, e(n, 1) * 1e-4);
        for (int d = 0; d < 5; ++d) {
            MV u = tu::random_paravector(rng, n);
            u = u / operator_norm(u);
            MV q = sym_central_quotient(p, x, u * 1e-4);
            CHECK(max_abs_diff(q, first) < 1e-6);
            // Forward quotient: first-order error C(p,2) |x|^(p-2) eps.
            const double bound = 2e-4 * binomial(p, 2) * std::pow(std::max(1.0, operator_norm(x)), p) + 1e-12;
            CHECK(max_abs_diff(sym_difference_quotient(p, x, u * 1e-4), limit) < bound);
        }
    }
}

TEST_CASE("series text format") {
    const int n = 3;
    auto s = ScalarCoeffSeries::parse("c 2 0 0 0 0.5\n# comment\nd 0 1 0 0 -2; c 0 0 0 0 1 e12", n);
    REQUIRE(s.poly.size() == 2);
    REQUIRE(s.singular.size() == 1);
    CHECK(s.poly[0].first == MultiIndex({2, 0, 0, 0}));
    CHECK(s.singular[0].second == -2);
    CHECK(!s.scalar_coefficients());
    CHECK_THROWS_AS(ScalarCoeffSeries::parse("c 1 0 0.5", n), Error);
    CHECK_THROWS_AS(ScalarCoeffSeries::parse("d 0 0 0 0 e1", n), Error);
    CHECK_THROWS_AS(ScalarCoeffSeries::parse("q 0 0 0 0 1", n), Error);
}
