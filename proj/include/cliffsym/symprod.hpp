#pragma once

#include "cliffsym/core.hpp"
#include "cliffsym/multivector.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace cliffsym {

constexpr int kBruteForceLimit = 9;

enum class Engine { Auto, BruteForce, Multiset, Polarization };

const char* engine_name(Engine e);
Engine parse_engine(const std::string& s);

template <class T>
Multivector<T> scaled(const Multivector<T>& a, const Rational& r) {
    return a * from_rational<T>(r);
}

template <class T>
Multivector<T> unit_like(const Multivector<T>& a) {
    return Multivector<T>::scalar(a.dim(), T(1));
}

// (1/l!) * sum over all l! orderings. Generic over the element type E.
template <class E>
E sym_bruteforce(const std::vector<E>& fs, int limit = kBruteForceLimit) {
    const int l = static_cast<int>(fs.size());
    if (l == 0) throw Error(ErrorKind::InvalidArgument, "empty factor list");
    if (l > limit)
        throw Error(ErrorKind::LimitExceeded, "bruteforce limited to " + std::to_string(limit) + " factors");
    std::vector<E> prefix(l + 1, unit_like(fs[0]));
    std::vector<int> used(l, 0);
    E acc = fs[0] - fs[0];
    auto rec = [&](auto&& self, int d) -> void {
        if (d == l) {
            acc += prefix[l];
            return;
        }
        for (int i = 0; i < l; ++i) {
            if (used[i]) continue;
            used[i] = 1;
            prefix[d + 1] = prefix[d] * fs[i];
            self(self, d + 1);
            used[i] = 0;
        }
    };
    rec(rec, 0);
    return scaled(acc, Rational(1) / factorial_q(l));
}

// Distinct-arrangement dynamic program: P[c + e_i] += P[c] * a_i over count vectors c.
template <class E>
E sym_multiset_dp(const std::vector<std::pair<E, int>>& ms) {
    if (ms.empty()) throw Error(ErrorKind::InvalidArgument, "empty multiset");
    const int r = static_cast<int>(ms.size());
    std::vector<int> stride(r + 1, 1);
    int total = 0;
    Rational mult = 1;
    for (int i = 0; i < r; ++i) {
        if (ms[i].second < 1) throw Error(ErrorKind::InvalidArgument, "multiplicity must be positive");
        stride[i + 1] = stride[i] * (ms[i].second + 1);
        total += ms[i].second;
        mult *= factorial_q(ms[i].second);
    }
    const E zero = ms[0].first - ms[0].first;
    std::vector<E> P(stride[r], zero);
    P[0] = unit_like(ms[0].first);
    // Process states in order of increasing total count; within a level any order works.
    std::vector<std::vector<int>> by_level(total + 1);
    for (int s = 0; s < stride[r]; ++s) {
        int lvl = 0;
        for (int i = 0; i < r; ++i) lvl += (s / stride[i]) % (ms[i].second + 1);
        by_level[lvl].push_back(s);
    }
    for (int lvl = 0; lvl < total; ++lvl) {
        for (int s : by_level[lvl]) {
            for (int i = 0; i < r; ++i) {
                if ((s / stride[i]) % (ms[i].second + 1) == ms[i].second) continue;
                P[s + stride[i]] += P[s] * ms[i].first;
            }
        }
    }
    return scaled(P[stride[r] - 1], mult / factorial_q(total));
}

// sym(a^p b^q) from the t^q coefficient of (a + t b)^{p+q}.
template <class E>
E sym_two_distinct(const E& a, int p, const E& b, int q) {
    if (p < 0 || q < 0 || p + q == 0) throw Error(ErrorKind::InvalidArgument, "bad multiplicities");
    std::vector<E> c(q + 1, a - a);
    c[0] = unit_like(a);
    for (int step = 0; step < p + q; ++step) {
        for (int k = std::min(q, step + 1); k >= 0; --k) {
            E nk = c[k] * a;
            if (k > 0) nk += c[k - 1] * b;
            c[k] = nk;
        }
    }
    BigInt num = 1, den = 1;
    for (int i = 1; i <= q; ++i) {
        num *= (p + i);
        den *= i;
    }
    return scaled(c[q], Rational(den, num));
}

template <class E>
E sym_multiset(const std::vector<std::pair<E, int>>& ms) {
    if (ms.size() == 1) {
        if (ms[0].second < 1) throw Error(ErrorKind::InvalidArgument, "multiplicity must be positive");
        E r = unit_like(ms[0].first);
        for (int i = 0; i < ms[0].second; ++i) r = r * ms[0].first;
        return r;
    }
    if (ms.size() == 2) return sym_two_distinct(ms[0].first, ms[0].second, ms[1].first, ms[1].second);
    return sym_multiset_dp(ms);
}

// Polarization over sign vectors with the first sign fixed:
// sym = 1/(2^{l-1} l!) * sum_eps (prod eps) (sum eps_i u_i)^l.
template <class E>
E sym_polarization(const std::vector<E>& fs) {
    const int l = static_cast<int>(fs.size());
    if (l == 0) throw Error(ErrorKind::InvalidArgument, "empty factor list");
    if (l > 24) throw Error(ErrorKind::LimitExceeded, "polarization limited to 24 factors");
    const E zero = fs[0] - fs[0];
    E pos = zero, neg = zero;
    for (unsigned long mask = 0; mask < (1ul << (l - 1)); ++mask) {
        E s = fs[0];
        int minus = 0;
        for (int i = 1; i < l; ++i) {
            if (mask & (1ul << (i - 1))) {
                s -= fs[i];
                ++minus;
            } else {
                s += fs[i];
            }
        }
        E pw = s;
        for (int k = 1; k < l; ++k) pw = pw * s;
        if (minus & 1)
            neg += pw;
        else
            pos += pw;
    }
    Rational norm = factorial_q(l) * Rational(BigInt(1) << (l - 1));
    return scaled(pos - neg, Rational(1) / norm);
}

template <class E>
std::vector<std::pair<E, int>> group_identical(const std::vector<E>& fs) {
    std::vector<std::pair<E, int>> ms;
    for (const auto& f : fs) {
        bool found = false;
        for (auto& [g, m] : ms)
            if (g == f) {
                ++m;
                found = true;
                break;
            }
        if (!found) ms.emplace_back(f, 1);
    }
    return ms;
}

template <class E>
std::vector<E> expand_multiset(const std::vector<std::pair<E, int>>& ms) {
    std::vector<E> fs;
    for (const auto& [e, m] : ms)
        for (int i = 0; i < m; ++i) fs.push_back(e);
    return fs;
}

// Closed form for sym of basis generators with multiplicities: index 0 is the unit.
// Exact; valid for every multiset.
QMV basis_sym_power(int n, const std::vector<int>& indices);

struct RecursionForms {
    MV left, right, mean;
};
RecursionForms sym_recursion_forms(const std::vector<MV>& fs);

// High level symmetrization with blade flattening for non-paravector factors.
MV sym(const std::vector<MV>& fs, Engine engine = Engine::Auto);
// Name of the evaluator that sym() uses for this flattened list: "closed-form",
// "multiset", "polarization" or "bruteforce".
std::string chosen_engine(const std::vector<MV>& fs, Engine engine);

struct SeriesTerm {
    MV value;          // symmetrized k-th term
    double tail_bound; // bound on the norm of the sum of all later terms
};

struct SeriesResult {
    MV value;
    int terms;
    double tail_bound;
};

SeriesResult sym_series(const std::function<SeriesTerm(int)>& gen, double tol, int max_terms = 100000);

// sym(a^{-1} b) for ||1-a|| < 1 via sum_k sym((1-a)^k b).
SeriesResult sym_geometric_inverse(const MV& a, const MV& b, double tol = 1e-14);
// sym(u^{-1} v^{-1}) by the double geometric series, grouped by total degree.
SeriesResult sym_inverse_pair_series(const MV& u, const MV& v, double tol = 1e-14);

}  // namespace cliffsym
