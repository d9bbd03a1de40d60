#include "cliffsym/cliffun.hpp"

#include "cliffsym/core.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace cliffsym {

MultiIndex::MultiIndex(std::vector<int> v) : idx(std::move(v)) {
    if (idx.empty() || static_cast<int>(idx.size()) > kMaxDim + 1)
        throw Error(ErrorKind::InvalidArgument, "multi-index length must be n+1");
    for (int a : idx)
        if (a < 0) throw Error(ErrorKind::InvalidArgument, "negative multi-index entry");
}

MultiIndex MultiIndex::unit(int n, int i) {
    if (i < 0 || i > n) throw Error(ErrorKind::IndexOutOfRange, "multi-index position " + std::to_string(i));
    MultiIndex m = zero(n);
    m.idx[i] = 1;
    return m;
}

int MultiIndex::order() const {
    int s = 0;
    for (int a : idx) s += a;
    return s;
}

BigInt MultiIndex::weight() const {
    Rational w = factorial_q(order());
    for (int a : idx) w /= factorial_q(a);
    return numerator(w);
}

std::vector<int> MultiIndex::letters() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(idx.size()); ++i)
        for (int k = 0; k < idx[i]; ++k) out.push_back(i);
    return out;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.idx.size() != b.idx.size()) throw Error(ErrorKind::AlgebraMismatch, "multi-index lengths differ");
    MultiIndex r = a;
    for (std::size_t i = 0; i < r.idx.size(); ++i) r.idx[i] += b.idx[i];
    return r;
}

RationalFun operator*(const QMV& c, const RationalFun& f) {
    return RationalFun(PolyFun::constant(c), 0) * f;
}

namespace {

RationalFun constant_fn(const QMV& c) { return RationalFun(PolyFun::constant(c), 0); }
RationalFun constant_fn(int n, const Rational& c) { return constant_fn(QMV::scalar(n, c)); }

RationalFun inverse_x(int n) {
    PolyFun conj(n);
    for (int i = 0; i <= n; ++i) {
        Monomial m{};
        m[i] = 1;
        conj.add_term(m, i == 0 ? QMV::scalar(n, 1) : QMV::blade(n, 1u << (i - 1), Rational(-1)));
    }
    return RationalFun(conj, 1);
}

QMV exact(const MV& a) { return convert<Rational>(a); }

// Everything but the scalar part.
QMV vector_part(const QMV& a) {
    QMV r = a;
    r[0] = 0;
    return r;
}

// Grade 0 and 1 projection of every coefficient.
RationalFun grade01_fn(const RationalFun& f) {
    auto keep = [](const QMV& c) {
        QMV r(c.dim());
        for (unsigned m = 0; m < c.size(); ++m)
            if (std::popcount(m) <= 1) r[m] = c[m];
        return r;
    };
    return RationalFun(f.num().map_coeffs(keep), f.q_power());
}

RationalFun directional(const RationalFun& f, const QMV& u) {
    RationalFun r = constant_fn(f.dim(), 0);
    for (int i = 1; i <= f.dim(); ++i)
        if (!is_zero(u.vec(i))) r += f.derivative(i) * u.vec(i);
    return r;
}

// Blades of a multivector, each as (coefficient, ascending generator indices).
std::vector<std::pair<Rational, std::vector<int>>> blade_terms(const QMV& a) {
    std::vector<std::pair<Rational, std::vector<int>>> out;
    for (unsigned m = 0; m < a.size(); ++m) {
        if (is_zero(a[m])) continue;
        std::vector<int> g;
        for (int i = 0; i < a.dim(); ++i)
            if (m & (1u << i)) g.push_back(i + 1);
        out.emplace_back(a[m], g);
    }
    return out;
}

template <class E>
E sym_groups(std::vector<std::pair<E, int>> ms, const E& unit) {
    std::erase_if(ms, [](const auto& p) { return p.second == 0; });
    if (ms.empty()) return unit;
    return sym_multiset(ms);
}

// sym of constant letters together with h copies of x, as a polynomial.
PolyFun sym_poly_with_x(int n, const std::vector<QMV>& consts, int h) {
    std::vector<std::pair<PolyFun, int>> ms;
    if (h > 0) ms.emplace_back(PolyFun::identity(n), h);
    std::vector<std::pair<QMV, int>> grouped = group_identical(consts);
    for (auto& [c, k] : grouped) ms.emplace_back(PolyFun::constant(c), k);
    return sym_groups(ms, PolyFun::constant(n, 1));
}

// sym(w_1 .. w_k x^-(k+1)): the average over orderings of x^-1 w x^-1 ... w x^-1.
RationalFun sym_interleaved_inverse(int n, const std::vector<QMV>& ws) {
    const RationalFun y = inverse_x(n);
    if (ws.empty()) return y;
    std::vector<std::pair<RationalFun, int>> ms;
    for (auto& [w, k] : group_identical(ws)) ms.emplace_back(y * constant_fn(w), k);
    return sym_multiset(ms) * y;
}

std::vector<QMV> generators(int n, const std::vector<int>& g) {
    std::vector<QMV> out;
    for (int i : g) out.push_back(QMV::basis(n, i));
    return out;
}

// Sum over arrangements of the letters of factor(i_1) ... factor(i_{L-1}) last(i_L),
// each arrangement counted with multiplicity prod alpha_i!.
template <class E>
E arrangement_sum(const MultiIndex& a, const std::function<E(int)>& factor, const std::function<E(int)>& last,
                  const E& zero, const E& one) {
    const int r = static_cast<int>(a.idx.size());
    const int L = a.order();
    std::vector<int> stride(r + 1, 1);
    for (int i = 0; i < r; ++i) stride[i + 1] = stride[i] * (a.idx[i] + 1);
    std::vector<E> V(stride[r], zero);
    V[0] = one;
    std::vector<std::vector<int>> by_level(L + 1);
    for (int s = 0; s < stride[r]; ++s) {
        int lvl = 0;
        for (int i = 0; i < r; ++i) lvl += (s / stride[i]) % (a.idx[i] + 1);
        by_level[lvl].push_back(s);
    }
    for (int lvl = 0; lvl + 1 < L; ++lvl)
        for (int s : by_level[lvl])
            for (int i = 0; i < r; ++i) {
                if ((s / stride[i]) % (a.idx[i] + 1) == a.idx[i]) continue;
                V[s + stride[i]] += V[s] * factor(i);
            }
    E acc = zero;
    const int full = stride[r] - 1;
    for (int i = 0; i < r; ++i)
        if (a.idx[i] > 0) acc += V[full - stride[i]] * last(i);
    Rational mult = 1;
    for (int x : a.idx) mult *= factorial_q(x);
    return scaled(acc, mult);
}

}  // namespace

RationalFun power_x(int n, int k) {
    if (k >= 0) {
        PolyFun r = PolyFun::constant(n, 1);
        const PolyFun x = PolyFun::identity(n);
        for (int i = 0; i < k; ++i) r = r * x;
        return RationalFun(r, 0);
    }
    const RationalFun y = inverse_x(n);
    RationalFun r = y;
    for (int i = 1; i < -k; ++i) r = r * y;
    return r;
}

RationalFun partial(const RationalFun& f, const MultiIndex& alpha) {
    if (alpha.dim() != f.dim()) throw Error(ErrorKind::AlgebraMismatch, "multi-index length");
    RationalFun r = f;
    for (int i = 0; i <= f.dim(); ++i)
        for (int k = 0; k < alpha.idx[i]; ++k) r = r.derivative(i);
    return r;
}

RationalFun dirac_D(const RationalFun& f) {
    const int n = f.dim();
    RationalFun r = f.derivative(0);
    for (int i = 1; i <= n; ++i) r += QMV::basis(n, i) * f.derivative(i);
    return r;
}

RationalFun laplacian(const RationalFun& f) {
    RationalFun r = f.derivative(0).derivative(0);
    for (int i = 1; i <= f.dim(); ++i) r += f.derivative(i).derivative(i);
    return r;
}

RationalFun holo_check(const RationalFun& f) {
    const int n = f.dim();
    if (n % 2 == 0) throw Error(ErrorKind::InvalidArgument, "holomorphy check needs odd n");
    RationalFun r = f;
    for (int k = 0; k < (n - 1) / 2; ++k) r = laplacian(r);
    return dirac_D(r);
}

double sampled_max(const RationalFun& f, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        MV x(f.dim());
        double q = 0.0;
        do {
            q = 0.0;
            for (int i = 0; i <= f.dim(); ++i) {
                x.vec(i) = d(rng);
                q += x.vec(i) * x.vec(i);
            }
        } while (q < 0.01);
        worst = std::max(worst, max_abs(f.eval(x)));
    }
    return worst;
}

PolyFun P_alpha(const MultiIndex& alpha) {
    const int n = alpha.dim();
    if (alpha.order() < 1) throw Error(ErrorKind::InvalidArgument, "P_alpha needs |alpha| >= 1");
    if (alpha.order() > kPermutationLimit) throw Error(ErrorKind::LimitExceeded, "|alpha| above permutation limit");
    const PolyFun x = PolyFun::identity(n);
    return arrangement_sum<PolyFun>(
        alpha, [&](int i) { return PolyFun::constant(QMV::basis(n, i)) * x; },
        [&](int i) { return PolyFun::constant(QMV::basis(n, i)); }, PolyFun(n), PolyFun::constant(n, 1));
}

RationalFun S_beta(const MultiIndex& beta) {
    const int n = beta.dim();
    if (beta.order() > kPermutationLimit) throw Error(ErrorKind::LimitExceeded, "|beta| above permutation limit");
    const RationalFun y = inverse_x(n);
    if (beta.order() == 0) return y;
    return arrangement_sum<RationalFun>(
        beta, [&](int i) { return y * constant_fn(QMV::basis(n, i)); },
        [&](int i) { return y * constant_fn(QMV::basis(n, i)) * y; }, constant_fn(n, 0), constant_fn(n, 1));
}

Rational sym_P_alpha_constant(int order) {
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "order must be positive");
    return factorial_q(order) * factorial_q(order - 1) / factorial_q(2 * order - 1);
}

RationalFun sym_P_alpha(const MultiIndex& alpha) {
    const int L = alpha.order();
    return partial(power_x(alpha.dim(), 2 * L - 1), alpha) * sym_P_alpha_constant(L);
}

RationalFun sym_S_beta(const MultiIndex& beta) {
    RationalFun r = partial(power_x(beta.dim(), -1), beta);
    return beta.order() % 2 ? -r : r;
}

SymMonomial operator*(const SymMonomial& a, const SymMonomial& b) { return {a.alpha + b.alpha, a.h + b.h}; }

MV eval_sym_monomial(const SymMonomial& m, const MV& x, Engine engine) {
    const int n = m.alpha.dim();
    std::vector<MV> fs;
    for (int i = 1; i <= n; ++i)
        for (int k = 0; k < m.alpha.idx[i]; ++k) fs.push_back(MV::basis(n, i));
    for (int k = 0; k < m.h; ++k) fs.push_back(x);
    if (fs.empty()) return MV::scalar(n, 1.0);
    return sym(fs, engine);
}

PolyFun sym_monomial_poly(const SymMonomial& m) {
    const int n = m.alpha.dim();
    std::vector<QMV> consts;
    for (int i = 1; i <= n; ++i)
        for (int k = 0; k < m.alpha.idx[i]; ++k) consts.push_back(QMV::basis(n, i));
    return sym_poly_with_x(n, consts, m.h);
}

MV sym_const_exp(const MV& a, const MV& x, int order) {
    const int panels = std::max(1, static_cast<int>(std::ceil(operator_norm(x))));
    GaussRule g = gauss_legendre01(order);
    MV acc(a.dim());
    for (int p = 0; p < panels; ++p)
        for (int i = 0; i < order; ++i) {
            double t = (p + g.x[i]) / panels;
            acc += exp_paravector(x * t) * a * exp_paravector(x * (1.0 - t)) * (g.w[i] / panels);
        }
    return acc;
}

MV sym_exp_exp(const MV& x, const MV& y) { return exp_paravector(x + y); }

SymIdentity directional_sym_derivative(const MV& u, const MV& a, int p) {
    const int n = u.dim();
    const QMV uv = vector_part(exact(u));
    if (p == 0) return {constant_fn(n, 0), constant_fn(n, 0)};
    RationalFun lhs = constant_fn(n, 0), rhs = constant_fn(n, 0);
    for (const auto& [coef, g] : blade_terms(exact(a))) {
        std::vector<QMV> letters = generators(n, g);
        std::vector<QMV> with_u = letters;
        with_u.push_back(uv);
        if (p > 0) {
            lhs += directional(RationalFun(sym_poly_with_x(n, letters, p), 0), uv) * coef;
            rhs += RationalFun(sym_poly_with_x(n, with_u, p - 1), 0) * (coef * p);
        } else {
            if (-p != static_cast<int>(g.size()) + 1)
                throw Error(ErrorKind::InvalidArgument, "negative power must be one more than the number of letters");
            lhs += directional(sym_interleaved_inverse(n, letters), uv) * coef;
            rhs += sym_interleaved_inverse(n, with_u) * (coef * p);
        }
    }
    return {lhs, rhs};
}

bool ScalarCoeffSeries::scalar_coefficients() const {
    for (const auto& [a, c] : poly)
        for (unsigned m = 1; m < c.size(); ++m)
            if (!is_zero(c[m])) return false;
    return true;
}

RationalFun ScalarCoeffSeries::function() const {
    RationalFun f = constant_fn(n, 0);
    for (const auto& [a, c] : poly) {
        if (a.dim() != n) throw Error(ErrorKind::AlgebraMismatch, "multi-index length");
        if (a.order() == 0)
            f += constant_fn(c);
        else
            f += sym_P_alpha(a) * constant_fn(c);
    }
    for (const auto& [b, d] : singular) {
        if (b.dim() != n) throw Error(ErrorKind::AlgebraMismatch, "multi-index length");
        f += sym_S_beta(b) * d;
    }
    return f;
}

ScalarCoeffSeries ScalarCoeffSeries::parse(const std::string& text, int n) {
    ScalarCoeffSeries s;
    s.n = n;
    std::string all = text;
    for (char& ch : all)
        if (ch == ';') ch = '\n';
    std::istringstream lines(all);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        auto fail = [&](const std::string& why) {
            throw Error(ErrorKind::SyntaxError, "series line " + std::to_string(lineno) + ": " + why);
        };
        if (kind != "c" && kind != "d") fail("expected 'c' or 'd'");
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i)
            if (!(ls >> idx[i]) || idx[i] < 0) fail("expected " + std::to_string(n + 1) + " non-negative indices");
        std::string rest;
        std::getline(ls, rest);
        if (rest.find_first_not_of(" \t") == std::string::npos) fail("missing value");
        QMV value = exact(parse_mv(rest, n));
        if (kind == "c") {
            s.poly.emplace_back(MultiIndex(idx), value);
        } else {
            if (!vector_part(value).is_zero())
                fail("singular coefficients must be real");
            s.singular.emplace_back(MultiIndex(idx), value[0]);
        }
    }
    return s;
}

ScalarCoeffSeries ScalarCoeffSeries::power(int n, int k) {
    ScalarCoeffSeries s;
    s.n = n;
    if (k == -1) {
        s.singular.emplace_back(MultiIndex::zero(n), Rational(1));
    } else if (k == 0) {
        s.poly.emplace_back(MultiIndex::zero(n), QMV::scalar(n, 1));
    } else if (k > 0) {
        // d0^(k+1) x^(2k+1) = (2k+1)!/k! x^k.
        MultiIndex a = MultiIndex::zero(n);
        a.idx[0] = k + 1;
        Rational r = Rational(1) / (sym_P_alpha_constant(k + 1) * factorial_q(2 * k + 1) / factorial_q(k));
        s.poly.emplace_back(a, QMV::scalar(n, r));
    } else {
        throw Error(ErrorKind::InvalidArgument, "x^k with k < -1 is not in the series class");
    }
    return s;
}

SymIdentity iterated_scalar_derivative(const MV& u, const ScalarCoeffSeries& f, int q) {
    const int n = f.n;
    if (q < 0) throw Error(ErrorKind::InvalidArgument, "negative derivative order");
    const QMV uv = vector_part(exact(u));
    if (uv.dim() != n) throw Error(ErrorKind::AlgebraMismatch, "direction dimension");
    RationalFun lhs = constant_fn(n, 0);
    for (const auto& [a, c] : f.poly) {
        const int L = a.order();
        const int h = L == 0 ? 0 : 2 * L - 1;
        const Rational k = L == 0 ? Rational(1) : sym_P_alpha_constant(L);
        for (const auto& [coef, g] : blade_terms(c)) {
            std::vector<QMV> letters = generators(n, g);
            for (int j = 0; j < q; ++j) letters.push_back(uv);
            RationalFun t(sym_poly_with_x(n, letters, h), 0);
            t = partial(t, a);
            for (int j = 0; j < q; ++j) t = t.derivative(0);
            lhs += t * (coef * k);
        }
    }
    for (const auto& [b, d] : f.singular) {
        RationalFun t = partial(sym_interleaved_inverse(n, std::vector<QMV>(q, uv)), b);
        Rational s = d * factorial_q(q);
        if ((b.order() + q) % 2) s = -s;
        lhs += t * s;
    }
    RationalFun rhs = grade01_fn(f.function());
    for (int j = 0; j < q; ++j) rhs = directional(rhs, uv);
    return {lhs, rhs};
}

RationalFun cr_residual(const ScalarCoeffSeries& f, const MV& u) { return iterated_scalar_derivative(u, f, 1).residual(); }

std::vector<MV> taylor_partial_sums(const ScalarCoeffSeries& f, const MV& a, const MV& x, int K) {
    std::vector<MV> terms = line_taylor(f.function(), a, x, K);
    for (int k = 1; k <= K; ++k) terms[k] += terms[k - 1];
    return terms;
}

MV taylor_sym(const ScalarCoeffSeries& f, const MV& a, const MV& x, int K) {
    return taylor_partial_sums(f, a, x, K).back();
}

LagrangeInterpolant::LagrangeInterpolant(std::vector<MV> nodes, std::vector<MV> values, QuadratureSpec q)
    : nodes_(std::move(nodes)), values_(std::move(values)), q_(q) {
    if (nodes_.empty() || nodes_.size() != values_.size())
        throw Error(ErrorKind::InvalidArgument, "need matching non-empty node and value lists");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!is_paravector(nodes_[i]) || !is_paravector(values_[i]))
            throw Error(ErrorKind::NotParavector, "nodes and values must be paravectors");
        for (std::size_t k = 0; k < i; ++k)
            if (paravector_quadratic(nodes_[i] - nodes_[k]) == 0.0)
                throw Error(ErrorKind::DuplicateNodes, "nodes " + std::to_string(k) + " and " + std::to_string(i));
    }
}

MV LagrangeInterpolant::operator()(const MV& x) const {
    const int n = x.dim();
    const std::size_t L = nodes_.size();
    MV acc(n);
    last_error_ = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
        std::vector<MV> us{values_[i]};
        std::vector<MV> vs;
        double scale = 1.0;
        bool vanishes = values_[i].is_zero();
        for (std::size_t k = 0; k < L; ++k) {
            if (k == i) continue;
            MV d = x - nodes_[k];
            if (d.is_zero()) vanishes = true;
            us.push_back(d);
            MV v = nodes_[i] - nodes_[k];
            // Scalar denominators commute with everything and come out exactly.
            if (MV(v - MV::scalar(n, v.scalar_part())).is_zero())
                scale /= v.scalar_part();
            else
                vs.push_back(v);
        }
        if (vanishes) continue;
        if (vs.empty()) {
            acc += sym(us) * scale;
            continue;
        }
        try {
            Integral r = sym_mixed_rational(us, vs, q_);
            acc += r.value * scale;
            last_error_ += r.error * std::abs(scale);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SingularPath || e.kind() == ErrorKind::ZeroParavector)
                throw Error(ErrorKind::SingularOnSimplex, e.what());
            throw;
        }
    }
    return acc;
}

LagrangeInterpolant lagrange_interpolate(std::vector<MV> nodes, std::vector<MV> values, QuadratureSpec q) {
    return LagrangeInterpolant(std::move(nodes), std::move(values), q);
}

double partial_fraction_check(const MV& a, const MV& b, const MV& x, double tol) {
    const int n = x.dim();
    MV xa = x - a, xb = x - b;
    if (hull_distance_to_origin({xa, xb}).lower <= 1e-12 * std::max(operator_norm(xa), operator_norm(xb)))
        throw Error(ErrorKind::SingularPath, "segment passes through a non-invertible point");
    const MV ab = a - b;
    const MV direct = paravector_inverse(xa) - paravector_inverse(xb);
    if (ab.is_zero()) return operator_norm(direct);
    GaussRule g = gauss_legendre01(16);
    auto integrate = [&](int panels) {
        MV s(n);
        for (int p = 0; p < panels; ++p)
            for (int i = 0; i < 16; ++i) {
                double t = (p + g.x[i]) / panels;
                MV w = paravector_inverse(MV(x - a * t - b * (1.0 - t)));
                s += w * ab * w * (g.w[i] / panels);
            }
        return s;
    };
    MV prev = integrate(1);
    for (int panels = 2; panels <= 1 << 12; panels *= 2) {
        MV cur = integrate(panels);
        bool done = max_abs_diff(cur, prev) <= tol * std::max(1.0, max_abs(cur));
        prev = cur;
        if (done) break;
    }
    return operator_norm(MV(direct - prev));
}

MV morera_integral(const std::function<MV(const MV&)>& f, const MV& v, const Rect& r, int panels) {
    const int n = v.dim();
    if (std::abs(v.scalar_part()) > 1e-12 || nonparavector_max(v) > 0.0 ||
        std::abs(paravector_quadratic(v) - 1.0) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "v must be a unit vector");
    GaussRule g = gauss_legendre01(32);
    // Counter-clockwise corners in (x0, y) coordinates.
    const double cx[5] = {r.x0_lo, r.x0_hi, r.x0_hi, r.x0_lo, r.x0_lo};
    const double cy[5] = {r.y_lo, r.y_lo, r.y_hi, r.y_hi, r.y_lo};
    MV acc(n);
    for (int e = 0; e < 4; ++e) {
        const double dx = cx[e + 1] - cx[e], dy = cy[e + 1] - cy[e];
        for (int p = 0; p < panels; ++p)
            for (int i = 0; i < 32; ++i) {
                double t = (p + g.x[i]) / panels;
                MV x = MV::scalar(n, cx[e] + t * dx) + v * (cy[e] + t * dy);
                MV fx = grade01(f(x));
                MV fv = (fx * v + v * fx) * 0.5;
                acc += (fx * dx + fv * dy) * (g.w[i] / panels);
            }
    }
    return acc;
}

MV morera_integral(const ScalarCoeffSeries& f, const MV& v, const Rect& r, int panels) {
    if (!f.singular.empty()) {
        // The singular parts blow up at the origin of the plane.
        const double cx[5] = {r.x0_lo, r.x0_hi, r.x0_hi, r.x0_lo, r.x0_lo};
        const double cy[5] = {r.y_lo, r.y_lo, r.y_hi, r.y_hi, r.y_lo};
        for (int e = 0; e < 4; ++e) {
            double ax = cx[e], ay = cy[e], bx = cx[e + 1], by = cy[e + 1];
            double cross = ax * by - ay * bx;
            double dot = -ax * (bx - ax) - ay * (by - ay);
            double len2 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
            if (std::abs(cross) <= 1e-14 && dot >= 0.0 && dot <= len2)
                throw Error(ErrorKind::SingularOnPath, "rectangle boundary passes through the origin");
        }
    }
    RationalFun F = f.function();
    return morera_integral([&](const MV& x) { return F.eval(x); }, v, r, panels);
}

namespace {

MV binomial_quotient(int p, const MV& x, const MV& h, bool odd_only) {
    if (p < 1) throw Error(ErrorKind::InvalidArgument, "difference quotient needs p >= 1");
    MV acc(x.dim());
    for (int k = 1; k <= p; ++k) {
        if (odd_only && k % 2 == 0) continue;
        std::vector<std::pair<MV, int>> ms;
        if (p - k > 0) ms.emplace_back(x, p - k);
        if (k - 1 > 0) ms.emplace_back(h, k - 1);
        MV term = ms.empty() ? MV::scalar(x.dim(), 1.0) : sym_multiset(ms);
        acc += term * binomial(p, k);
    }
    return acc;
}

}  // namespace

MV sym_difference_quotient(int p, const MV& x, const MV& h) { return binomial_quotient(p, x, h, false); }
MV sym_central_quotient(int p, const MV& x, const MV& h) { return binomial_quotient(p, x, h, true); }

}  // namespace cliffsym
