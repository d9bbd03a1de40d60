#include "cliffsym/checks.hpp"

#include "cliffsym/cliffun.hpp"
#include "cliffsym/core.hpp"
#include "cliffsym/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

namespace cliffsym {

namespace {

struct Tally {
    SuiteReport r;
    Tally(std::string name, double tol) {
        r.name = std::move(name);
        r.tolerance = tol;
    }
    // A case passes when residual <= tolerance.
    void add(double residual) { add(residual, residual <= r.tolerance); }
    void add(double residual, bool ok) {
        ++r.cases;
        if (!ok || !std::isfinite(residual)) ++r.failures;
        if (std::isfinite(residual)) r.max_residual = std::max(r.max_residual, residual);
        else r.max_residual = INFINITY;
    }
};

MV random_paravector(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    MV u(n);
    for (int i = 0; i <= n; ++i) u.vec(i) = d(rng);
    return u;
}

MV near_one(std::mt19937_64& rng, int n, double r) {
    MV c = random_paravector(rng, n);
    double norm = Paravector::from(c).norm();
    std::uniform_real_distribution<double> rad(0.0, r);
    if (norm > 0) c = c * (rad(rng) / norm);
    return MV::scalar(n, 1.0) - c;
}

void for_each_multiset(int m, int H, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(H, 1);
    while (true) {
        fn(idx);
        int k = H - 1;
        while (k >= 0 && idx[k] == m) --k;
        if (k < 0) return;
        ++idx[k];
        for (int j = k + 1; j < H; ++j) idx[j] = idx[k];
    }
}

// Exact sum over distinct arrangements of a word of generators.
QMV enumerate_basis_word(int n, std::vector<int> idx) {
    std::map<unsigned, BigInt> counts;
    BigInt arrangements = 0;
    std::sort(idx.begin(), idx.end());
    do {
        unsigned mask = 0;
        int sign = 1;
        for (int i : idx) {
            unsigned g = 1u << (i - 1);
            sign *= blade_sign(mask, g);
            mask ^= g;
        }
        counts[mask] += sign;
        ++arrangements;
    } while (std::next_permutation(idx.begin(), idx.end()));
    QMV r(n);
    for (const auto& [mask, c] : counts) r[mask] = Rational(c, arrangements);
    return r;
}

MV pair_series(const MV& u, const MV& v) {
    const int n = u.dim();
    MV c1 = MV::scalar(n, 1.0) - u, c2 = MV::scalar(n, 1.0) - v;
    const double r = std::max(Paravector::from(c1).norm(), Paravector::from(c2).norm());
    MV acc = MV::scalar(n, 1.0);
    for (int K = 1; K < 400; ++K) {
        for (int j = 0; j <= K; ++j) {
            std::vector<std::pair<MV, int>> ms;
            if (j > 0) ms.emplace_back(c1, j);
            if (K - j > 0) ms.emplace_back(c2, K - j);
            acc += sym_multiset(ms);
        }
        if ((K + 2) * std::pow(r, K + 1) / ((1 - r) * (1 - r)) < 1e-15) break;
    }
    return acc;
}

QuadratureSpec quad(const RunConfig& cfg) { return {cfg.quad_order, cfg.quad_tol, 8}; }

SuiteReport closure(const RunConfig& cfg) {
    Tally t("closure", 1e-12);
    std::mt19937_64 rng(cfg.seed);
    for (int l = 2; l <= 7; ++l)
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<MV> fs;
            for (int i = 0; i < l; ++i) fs.push_back(random_paravector(rng, cfg.dim));
            t.add(nonparavector_max(sym_bruteforce(fs)));
        }
    return t.r;
}

SuiteReport mod4(const RunConfig& cfg) {
    Tally t("mod4", 0.0);
    const int m = std::min(cfg.dim, 4);
    for (int H = 1; H <= 9; ++H)
        for_each_multiset(m, H, [&](const std::vector<int>& idx) {
            QMV closed = basis_sym_power(m, idx);
            QMV brute = enumerate_basis_word(m, idx);
            t.add(closed == brute ? 0.0 : max_abs(convert<double>(closed - brute)), closed == brute);
        });
    return t.r;
}

SuiteReport engines(const RunConfig& cfg) {
    Tally t("engines", 1e-12);
    const int m = std::min(cfg.dim, 4);
    for (int H = 1; H <= 8; ++H)
        for_each_multiset(m, H, [&](const std::vector<int>& idx) {
            std::vector<MV> fs;
            for (int i : idx) fs.push_back(MV::basis(m, i));
            MV a = sym_bruteforce(fs);
            MV b = sym_multiset(group_identical(fs));
            MV c = sym_polarization(fs);
            t.add(std::max(max_abs_diff(a, b), max_abs_diff(a, c)));
        });
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> len(1, 7);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<MV> fs;
        const int l = len(rng);
        for (int i = 0; i < l; ++i) fs.push_back(random_paravector(rng, cfg.dim));
        MV a = sym_bruteforce(fs);
        MV b = sym_multiset(group_identical(fs));
        MV c = sym_polarization(fs);
        t.add(std::max(max_abs_diff(a, b), max_abs_diff(a, c)));
    }
    return t.r;
}

SuiteReport dirichlet(const RunConfig& cfg) {
    Tally t("dirichlet", 1e-10);
    std::mt19937_64 rng(cfg.seed);
    for (int rep = 0; rep < 100; ++rep) {
        MV u = random_paravector(rng, cfg.dim), v = random_paravector(rng, cfg.dim);
        MV expect = (u * u + (u * v + v * u) * 0.5 + v * v) / 3.0;
        Integral F = dirichlet_mean([](const MV& x) { return x * x; }, {1.0, 1.0}, {u, v}, quad(cfg));
        t.add(max_abs_diff(F.value, expect));
    }
    return t.r;
}

SuiteReport feynman(const RunConfig& cfg) {
    Tally t("feynman", 1e-8);
    std::mt19937_64 rng(cfg.seed);
    for (int rep = 0; rep < 100; ++rep) {
        MV u = near_one(rng, cfg.dim, 0.4), v = near_one(rng, cfg.dim, 0.4);
        t.add(max_abs_diff(feynman_inverse_pair(u, v, quad(cfg)).value, pair_series(u, v)));
    }
    for (double lam : {0.5, 2.0, 3.0}) {
        MV u = near_one(rng, cfg.dim, 0.9);
        MV ui = paravector_inverse(u);
        t.add(max_abs_diff(feynman_inverse_pair(u, u * lam, quad(cfg)).value, ui * ui / lam));
    }
    return t.r;
}

SuiteReport contour(const RunConfig& cfg) {
    Tally t("contour", 1e-6);
    std::mt19937_64 rng(cfg.seed);
    double worst_pow = 0.0, worst_double = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        MV u1 = random_paravector(rng, cfg.dim), u2 = random_paravector(rng, cfg.dim);
        Contour c1 = Contour::around(u1, cfg.contour_nodes), c2 = Contour::around(u2, cfg.contour_nodes);
        for (int p = 0; p <= 4; ++p) worst_pow = std::max(worst_pow, max_abs_diff(contour_power(u1, p, c1).value, power(u1, p)));
        for (int p = 0; p <= 4; ++p)
            for (int q = 0; p + q <= 4; ++q) {
                if (p + q == 0) continue;
                std::vector<std::pair<MV, int>> ms;
                if (p) ms.emplace_back(u1, p);
                if (q) ms.emplace_back(u2, q);
                ContourResult r = contour_sym_power(u1, u2, p, q, c1, c2);
                t.add(max_abs_diff(r.value, sym_multiset(ms)));
                if (p + q == 2) {
                    Contour d1 = c1, d2 = c2;
                    d1.nodes *= 2;
                    d2.nodes *= 2;
                    worst_double = std::max(worst_double, max_abs_diff(contour_sym_power(u1, u2, p, q, d1, d2).value, r.value));
                }
            }
    }
    t.add(worst_pow, worst_pow <= 1e-8);
    t.add(worst_double, worst_double <= 1e-9);
    return t.r;
}

SuiteReport palpha(const RunConfig& cfg) {
    Tally t("palpha", 1e-11);
    const int n = cfg.dim;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(0, n);
    for (int order = 1; order <= 4; ++order) {
        MultiIndex a = MultiIndex::zero(n);
        for (int k = 0; k < order; ++k) a.idx[pick(rng)] += 1;
        RationalFun f = sym_P_alpha(a);
        for (int s = 0; s < 50; ++s) {
            MV x = random_paravector(rng, n);
            MV expect = eval_sym_monomial({a, order - 1}, x) * factorial(order);
            t.add(max_abs_diff(f.eval(x), expect) / std::max(1.0, max_abs(expect)));
        }
    }
    if (n % 2 == 1) {
        for (int k = 0; k <= 6; ++k) t.add(holo_check(power_x(n, k)).is_zero() ? 0.0 : 1.0);
        for (int order = 1; order <= 3; ++order) {
            MultiIndex a = MultiIndex::zero(n);
            for (int k = 0; k < order; ++k) a.idx[pick(rng)] += 1;
            double v = sampled_max(holo_check(RationalFun(P_alpha(a), 0)), 20, cfg.seed + order);
            t.add(v, v <= 1e-10);
        }
        t.r.notes.push_back("holomorphy of x^k and P_alpha included");
    }
    return t.r;
}

SuiteReport cr(const RunConfig& cfg) {
    Tally t("cr", 0.0);
    const int n = cfg.dim;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(0, n), ord(0, 3), coef(-5, 5);
    auto rand_index = [&](int order) {
        MultiIndex a = MultiIndex::zero(n);
        for (int k = 0; k < order; ++k) a.idx[pick(rng)] += 1;
        return a;
    };
    for (int rep = 0; rep < 20; ++rep) {
        ScalarCoeffSeries f;
        f.n = n;
        for (int k = 0; k < 3; ++k) f.poly.emplace_back(rand_index(ord(rng)), QMV::scalar(n, Rational(coef(rng), 1 + rep)));
        f.singular.emplace_back(rand_index(ord(rng) % 3), Rational(coef(rng)));
        MV u = random_paravector(rng, n);
        u.vec(0) = 0.0;
        t.add(cr_residual(f, u).is_zero() ? 0.0 : 1.0);
    }
    if (n >= 2) {
        ScalarCoeffSeries g = ScalarCoeffSeries::power(n, 1);
        g.poly[0].second = QMV::blade(n, 0b11, g.poly[0].second[0]);
        double val = max_abs(cr_residual(g, MV::basis(n, 1)).eval(MV::scalar(n, 1.0)));
        t.add(0.0, val > 1e-3);
        t.r.notes.push_back("grade-2 control residual " + std::to_string(val));
    }
    return t.r;
}

SuiteReport taylor(const RunConfig& cfg) {
    Tally t("taylor", 1e-12);
    const int n = cfg.dim;
    std::mt19937_64 rng(cfg.seed);
    for (int rep = 0; rep < 10; ++rep) {
        MV a = random_paravector(rng, n), x = random_paravector(rng, n);
        MV s = taylor_sym(ScalarCoeffSeries::power(n, 2), a, x, 2);
        t.add(max_abs_diff(s, (a + x) * (a + x)));
    }
    for (int rep = 0; rep < 5; ++rep) {
        MV a = MV::scalar(n, 2.0) + random_paravector(rng, n, 0.5);
        MV x = random_paravector(rng, n, 0.6);
        auto sums = taylor_partial_sums(ScalarCoeffSeries::power(n, -1), a, x, 12);
        MV target = paravector_inverse(MV(a + x));
        double prev = INFINITY;
        bool mono = true;
        for (int K = 2; K <= 12; ++K) {
            double err = Paravector::from(MV(sums[K] - target)).norm();
            if (!(err < prev) && err > 1e-15) mono = false;
            prev = err;
        }
        t.add(prev, mono);
    }
    return t.r;
}

SuiteReport lagrange(const RunConfig& cfg) {
    Tally t("lagrange", 1e-8);
    const int n = cfg.dim;
    std::mt19937_64 rng(cfg.seed);
    auto e = [&](int i) { return MV::basis(n, std::min(i, n)); };
    const MV one = MV::scalar(n, 1.0);
    std::vector<MV> pool{one * 0.2 + e(1), one * 1.5 - e(2) * 0.5, one * 0.9 + e(3) * 0.7, one * 0.4 - e(1) * 0.3};
    for (int l = 0; l <= 3; ++l) {
        std::vector<MV> nodes(pool.begin(), pool.begin() + l + 1), vals;
        for (int i = 0; i <= l; ++i) vals.push_back(random_paravector(rng, n));
        auto P = lagrange_interpolate(nodes, vals, quad(cfg));
        for (int i = 0; i <= l; ++i) t.add(max_abs_diff(P(nodes[i]), vals[i]));
    }
    std::vector<double> xs{-1.0, 0.5, 2.0, 3.0};
    std::vector<MV> nodes, vals;
    for (double s : xs) {
        nodes.push_back(one * s);
        vals.push_back(random_paravector(rng, n));
    }
    auto Q = lagrange_interpolate(nodes, vals, quad(cfg));
    for (double s : {0.0, 0.3, 1.7}) {
        MV classical(n);
        for (int i = 0; i < 4; ++i) {
            double w = 1.0;
            for (int k = 0; k < 4; ++k)
                if (k != i) w *= (s - xs[k]) / (xs[i] - xs[k]);
            classical += vals[i] * w;
        }
        t.add(max_abs_diff(Q(one * s), classical), max_abs_diff(Q(one * s), classical) <= 1e-12);
    }
    return t.r;
}

SuiteReport morera(const RunConfig& cfg) {
    Tally t("morera", 1e-9);
    const int n = cfg.dim;
    std::vector<Rect> rects{{1.0, 2.0, 1.0, 2.0}, {-1.0, 0.5, 0.2, 1.1}, {0.3, 0.8, -2.0, -1.0}};
    std::vector<int> dirs{1};
    if (n >= 2) dirs.push_back(2);
    for (int k = 1; k <= 3; ++k) {
        ScalarCoeffSeries f = ScalarCoeffSeries::power(n, k);
        for (int d : dirs)
            for (const Rect& r : rects) t.add(max_abs(morera_integral(f, MV::basis(n, d), r)));
    }
    double anti = max_abs(morera_integral([](const MV& x) { return paravector_conj(x); }, MV::basis(n, 1), rects[0]));
    t.add(0.0, anti > 1e-3);
    return t.r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"closure", "mod4",   "engines", "dirichlet", "feynman", "contour",
                                                "palpha",  "cr",     "taylor",  "lagrange",  "morera"};
    return names;
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
    static const std::map<std::string, SuiteReport (*)(const RunConfig&)> table{
        {"closure", closure}, {"mod4", mod4},     {"engines", engines}, {"dirichlet", dirichlet},
        {"feynman", feynman}, {"contour", contour}, {"palpha", palpha},   {"cr", cr},
        {"taylor", taylor},   {"lagrange", lagrange}, {"morera", morera}};
    auto it = table.find(name);
    if (it == table.end()) throw Error(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");
    return it->second(cfg);
}

}  // namespace cliffsym
