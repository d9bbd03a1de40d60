#include "cliffsym/symprod.hpp"

#include <cmath>
#include <limits>

namespace cliffsym {

const char* engine_name(Engine e) {
    switch (e) {
        case Engine::Auto: return "auto";
        case Engine::BruteForce: return "bruteforce";
        case Engine::Multiset: return "multiset";
        case Engine::Polarization: return "polarization";
    }
    return "auto";
}

Engine parse_engine(const std::string& s) {
    if (s == "auto") return Engine::Auto;
    if (s == "bruteforce") return Engine::BruteForce;
    if (s == "multiset") return Engine::Multiset;
    if (s == "polarization") return Engine::Polarization;
    throw Error(ErrorKind::InvalidArgument, "unknown engine '" + s + "'");
}

QMV basis_sym_power(int n, const std::vector<int>& indices) {
    std::vector<int> m(n + 1, 0);
    for (int i : indices) {
        if (i < 0 || i > n) throw Error(ErrorKind::IndexOutOfRange, "basis index " + std::to_string(i));
        ++m[i];
    }
    m[0] = 0;  // unit factors drop out
    int H = 0, odd = 0, odd_idx = 0;
    for (int i = 1; i <= n; ++i) {
        H += m[i];
        if (m[i] & 1) {
            ++odd;
            odd_idx = i;
        }
    }
    if (H == 0) return QMV::scalar(n, Rational(1));
    const int r = H / 2;
    if ((H % 2 == 0 && odd != 0) || (H % 2 == 1 && odd != 1)) return QMV(n);
    // (sum t_i e_i)^H = (-1)^r |t|^{2r} (times the vector for odd H); the coefficient of
    // prod t_i^{m_i} counted against its H!/prod m_i! orderings gives the value.
    Rational c = factorial_q(r);
    for (int i = 1; i <= n; ++i) c /= factorial_q(m[i] / 2);
    for (int i = 1; i <= n; ++i) c *= factorial_q(m[i]);
    c /= factorial_q(H);
    if (r & 1) c = -c;
    if (H % 2 == 0) return QMV::scalar(n, c);
    return QMV::basis(n, odd_idx) * c;
}

RecursionForms sym_recursion_forms(const std::vector<MV>& fs) {
    const int l = static_cast<int>(fs.size());
    if (l < 2) throw Error(ErrorKind::InvalidArgument, "recursion forms need at least two factors");
    MV left(fs[0].dim()), right(fs[0].dim());
    for (int i = 0; i < l; ++i) {
        std::vector<MV> rest;
        for (int j = 0; j < l; ++j)
            if (j != i) rest.push_back(fs[j]);
        MV s = sym_bruteforce(rest);
        left += fs[i] * s;
        right += s * fs[i];
    }
    left /= static_cast<double>(l);
    right /= static_cast<double>(l);
    MV mean = (left + right) / 2.0;
    return {left, right, mean};
}

namespace {

// Single-blade grade <= 1 element: returns index (0 = unit) and coefficient.
bool as_basis(const MV& f, int& idx, double& coef) {
    int found = -1;
    for (unsigned m = 0; m < f.size(); ++m) {
        if (f[m] == 0.0) continue;
        if (found >= 0 || blade_grade(m) > 1) return false;
        found = static_cast<int>(m);
    }
    if (found < 0) {
        idx = 0;
        coef = 0.0;
        return true;
    }
    idx = found == 0 ? 0 : std::countr_zero(static_cast<unsigned>(found)) + 1;
    coef = f[found];
    return true;
}

MV sym_flat(const std::vector<MV>& fs, Engine engine) {
    switch (engine) {
        case Engine::BruteForce: return sym_bruteforce(fs);
        case Engine::Multiset: return sym_multiset(group_identical(fs));
        case Engine::Polarization: return sym_polarization(fs);
        case Engine::Auto: break;
    }
    const int n = fs[0].dim();
    std::vector<int> idx;
    double coef = 1.0;
    bool basis = true;
    for (const auto& f : fs) {
        int i;
        double c;
        if (!as_basis(f, i, c)) {
            basis = false;
            break;
        }
        idx.push_back(i);
        coef *= c;
    }
    if (basis) return convert<double>(basis_sym_power(n, idx)) * coef;
    auto ms = group_identical(fs);
    if (ms.size() <= 3) return sym_multiset(ms);
    return sym_polarization(fs);
}

}  // namespace

std::string chosen_engine(const std::vector<MV>& fs, Engine engine) {
    if (engine != Engine::Auto) return engine_name(engine);
    for (const auto& f : fs) {
        int i;
        double c;
        if (!as_basis(f, i, c)) return group_identical(fs).size() <= 3 ? "multiset" : "polarization";
    }
    return "closed-form";
}

MV sym(const std::vector<MV>& fs, Engine engine) {
    if (fs.empty()) throw Error(ErrorKind::InvalidArgument, "empty factor list");
    const int n = fs[0].dim();
    for (const auto& f : fs) fs[0].same(f);
    // Each factor expands into options: its paravector part, or one blade of grade >= 2
    // written as its ascending generators.
    struct Option {
        double coef;
        std::vector<MV> factors;
    };
    std::vector<std::vector<Option>> options;
    std::size_t combos = 1;
    for (const auto& f : fs) {
        std::vector<Option> opts;
        MV p = grade01(f);
        if (!p.is_zero() || is_paravector(f)) opts.push_back({1.0, {p}});
        for (unsigned m = 0; m < f.size(); ++m) {
            if (blade_grade(m) < 2 || f[m] == 0.0) continue;
            Option o{f[m], {}};
            for (int i = 0; i < n; ++i)
                if (m & (1u << i)) o.factors.push_back(MV::basis(n, i + 1));
            opts.push_back(std::move(o));
        }
        combos *= opts.size();
        if (combos > 65536) throw Error(ErrorKind::LimitExceeded, "too many blade expansions");
        options.push_back(std::move(opts));
    }
    MV acc(n);
    std::vector<std::size_t> pick(options.size(), 0);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rem = c;
        double coef = 1.0;
        std::vector<MV> flat;
        for (std::size_t k = 0; k < options.size(); ++k) {
            const auto& o = options[k][rem % options[k].size()];
            rem /= options[k].size();
            coef *= o.coef;
            flat.insert(flat.end(), o.factors.begin(), o.factors.end());
        }
        acc += sym_flat(flat, engine) * coef;
    }
    return acc;
}

SeriesResult sym_series(const std::function<SeriesTerm(int)>& gen, double tol, int max_terms) {
    double prev = std::numeric_limits<double>::infinity();
    MV acc;
    for (int k = 0; k < max_terms; ++k) {
        SeriesTerm t = gen(k);
        if (k == 0)
            acc = t.value;
        else
            acc += t.value;
        if (!std::isfinite(t.tail_bound)) throw Error(ErrorKind::Divergent, "tail bound is not finite");
        if (t.tail_bound <= tol) return {acc, k + 1, t.tail_bound};
        if (k > 0 && t.tail_bound > prev) throw Error(ErrorKind::Divergent, "tail bound is not decreasing");
        prev = t.tail_bound;
    }
    throw Error(ErrorKind::Divergent, "series did not reach tolerance");
}

SeriesResult sym_geometric_inverse(const MV& a, const MV& b, double tol) {
    a.same(b);
    if (!is_paravector(a) || !is_paravector(b))
        throw Error(ErrorKind::NotParavector, "geometric inverse expects paravectors");
    const int n = a.dim();
    const MV c = MV::scalar(n, 1.0) - a;
    const double r = operator_norm(c);
    if (!(r < 1.0)) throw Error(ErrorKind::Divergent, "||1-a|| >= 1");
    const double nb = operator_norm(b);
    MV S = b;                    // sum_j c^j b c^{k-j}
    MV ck = MV::scalar(n, 1.0);  // c^k
    double rk = 1.0;
    auto gen = [&](int k) {
        if (k > 0) {
            ck = ck * c;
            S = S * c + ck * b;
            rk *= r;
        }
        return SeriesTerm{S / static_cast<double>(k + 1), rk * r / (1.0 - r) * nb};
    };
    return sym_series(gen, tol);
}

SeriesResult sym_inverse_pair_series(const MV& u, const MV& v, double tol) {
    u.same(v);
    if (!is_paravector(u) || !is_paravector(v))
        throw Error(ErrorKind::NotParavector, "inverse pair expects paravectors");
    const int n = u.dim();
    const MV c1 = MV::scalar(n, 1.0) - u;
    const MV c2 = MV::scalar(n, 1.0) - v;
    const double r = std::max(operator_norm(c1), operator_norm(c2));
    if (!(r < 1.0)) throw Error(ErrorKind::Divergent, "||1-u|| or ||1-v|| >= 1");
    // poly[k] = coefficient of t^k in (c1 + t c2)^K
    std::vector<MV> poly{MV::scalar(n, 1.0)};
    double rK = 1.0;
    auto gen = [&](int K) {
        if (K > 0) {
            std::vector<MV> next(K + 1, MV(n));
            for (int k = 0; k < K; ++k) {
                next[k] += poly[k] * c1;
                next[k + 1] += poly[k] * c2;
            }
            poly = std::move(next);
            rK *= r;
        }
        MV term(n);
        for (int k = 0; k <= K; ++k) term += poly[k] / binomial(K, k);
        // sum_{j>K} (j+1) r^j
        const double tail = rK * r * ((K + 2) - (K + 1) * r) / ((1.0 - r) * (1.0 - r));
        return SeriesTerm{term, tail};
    };
    return sym_series(gen, tol);
}

}  // namespace cliffsym
