#include "cliffsym/poly.hpp"

#include <algorithm>
#include <cmath>

namespace cliffsym {

namespace {

Monomial zero_mono() {
    Monomial m{};
    return m;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r{};
    for (std::size_t i = 0; i < r.size(); ++i) {
        int e = a[i] + b[i];
        if (e > 255) throw Error(ErrorKind::LimitExceeded, "monomial exponent overflow");
        r[i] = static_cast<std::uint8_t>(e);
    }
    return r;
}

void check_same(int a, int b) {
    if (a != b)
        throw Error(ErrorKind::AlgebraMismatch, "R_{0," + std::to_string(a) + "} vs R_{0," + std::to_string(b) + "}");
}

}  // namespace

PolyFun PolyFun::constant(const QMV& c) {
    PolyFun p(c.dim());
    p.add_term(zero_mono(), c);
    return p;
}

PolyFun PolyFun::coordinate(int n, int i) {
    if (i < 0 || i > n) throw Error(ErrorKind::IndexOutOfRange, "coordinate " + std::to_string(i));
    PolyFun p(n);
    Monomial m = zero_mono();
    m[i] = 1;
    p.add_term(m, QMV::scalar(n, 1));
    return p;
}

PolyFun PolyFun::identity(int n) {
    PolyFun p(n);
    for (int i = 0; i <= n; ++i) {
        Monomial m = zero_mono();
        m[i] = 1;
        p.add_term(m, QMV::basis(n, i));
    }
    return p;
}

int PolyFun::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (auto e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

int PolyFun::degree_in(int i) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, int(m[i]));
    return d;
}

void PolyFun::add_term(const Monomial& m, const QMV& c) {
    check_same(n_, c.dim());
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

PolyFun& PolyFun::operator+=(const PolyFun& o) {
    check_same(n_, o.n_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

PolyFun& PolyFun::operator-=(const PolyFun& o) {
    check_same(n_, o.n_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

PolyFun PolyFun::operator-() const {
    PolyFun r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

PolyFun operator*(const PolyFun& a, const PolyFun& b) {
    check_same(a.n_, b.n_);
    PolyFun r(a.n_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

PolyFun operator*(PolyFun a, const Rational& s) {
    if (s == 0) return PolyFun(a.n_);
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
}

PolyFun PolyFun::derivative(int i) const {
    if (i < 0 || i > n_) throw Error(ErrorKind::IndexOutOfRange, "coordinate " + std::to_string(i));
    PolyFun r(n_);
    for (const auto& [m, c] : terms_) {
        if (m[i] == 0) continue;
        Monomial d = m;
        d[i] -= 1;
        r.add_term(d, c * Rational(m[i]));
    }
    return r;
}

MV PolyFun::eval(const MV& x) const {
    check_same(n_, x.dim());
    MV r(n_);
    for (const auto& [m, c] : terms_) {
        double w = 1.0;
        for (int i = 0; i <= n_; ++i)
            for (int e = 0; e < m[i]; ++e) w *= x.vec(i);
        for (std::size_t k = 0; k < c.size(); ++k)
            if (!cliffsym::is_zero(c[k])) r[k] += w * to_double(c[k]);
    }
    return r;
}

QMV PolyFun::eval_exact(const QMV& x) const {
    check_same(n_, x.dim());
    QMV r(n_);
    for (const auto& [m, c] : terms_) {
        Rational w = 1;
        for (int i = 0; i <= n_; ++i)
            for (int e = 0; e < m[i]; ++e) w *= x.vec(i);
        r += c * w;
    }
    return r;
}

PolyFun scaled(const PolyFun& a, const Rational& r) { return a * r; }
PolyFun unit_like(const PolyFun& a) { return PolyFun::constant(a.dim(), 1); }

PolyFun norm_squared(int n) {
    PolyFun q(n);
    for (int i = 0; i <= n; ++i) {
        Monomial m{};
        m[i] = 2;
        q.add_term(m, QMV::scalar(n, 1));
    }
    return q;
}

namespace {

PolyFun q_power_poly(int n, int k) {
    PolyFun r = PolyFun::constant(n, 1);
    const PolyFun q = norm_squared(n);
    for (int i = 0; i < k; ++i) r = r * q;
    return r;
}

}  // namespace

RationalFun::RationalFun(PolyFun num, int q_power) : num_(std::move(num)), k_(q_power) {
    if (k_ < 0) throw Error(ErrorKind::InvalidArgument, "negative denominator power");
}

PolyFun RationalFun::den() const { return q_power_poly(dim(), k_); }

RationalFun& RationalFun::operator+=(const RationalFun& o) {
    check_same(dim(), o.dim());
    if (k_ == o.k_) {
        num_ += o.num_;
    } else if (k_ > o.k_) {
        num_ += o.num_ * q_power_poly(dim(), k_ - o.k_);
    } else {
        num_ = num_ * q_power_poly(dim(), o.k_ - k_) + o.num_;
        k_ = o.k_;
    }
    return *this;
}

RationalFun& RationalFun::operator-=(const RationalFun& o) { return *this += -o; }

RationalFun operator*(const RationalFun& a, const RationalFun& b) {
    return RationalFun(a.num_ * b.num_, a.k_ + b.k_);
}

RationalFun operator*(RationalFun a, const Rational& s) {
    a.num_ = a.num_ * s;
    return a;
}

RationalFun RationalFun::derivative(int i) const {
    if (k_ == 0) return RationalFun(num_.derivative(i), 0);
    // d(N q^-k) = (N' q - 2k x_i N) q^-(k+1)
    PolyFun xi = PolyFun::coordinate(dim(), i) * Rational(2 * k_);
    return RationalFun(num_.derivative(i) * norm_squared(dim()) - xi * num_, k_ + 1);
}

bool divide_by_q(const PolyFun& p, PolyFun& quotient) {
    const int n = p.dim();
    PolyFun rem = p;
    PolyFun quo(n);
    // Divide with respect to x0: q = x0^2 + s, leading term x0^2.
    while (true) {
        const Monomial* lead = nullptr;
        for (const auto& [m, c] : rem.terms())
            if (m[0] >= 2 && (!lead || m[0] > (*lead)[0])) lead = &m;
        if (!lead) break;
        Monomial qm = *lead;
        qm[0] -= 2;
        PolyFun t(n);
        t.add_term(qm, rem.terms().at(*lead));
        quo += t;
        rem -= t * norm_squared(n);
    }
    if (!rem.is_zero()) return false;
    quotient = quo;
    return true;
}

RationalFun RationalFun::normalized() const {
    PolyFun num = num_;
    int k = k_;
    if (num.is_zero()) return RationalFun(PolyFun(dim()), 0);
    PolyFun q;
    while (k > 0 && divide_by_q(num, q)) {
        num = q;
        --k;
    }
    return RationalFun(num, k);
}

MV RationalFun::eval(const MV& x) const {
    MV r = num_.eval(x);
    if (k_ == 0) return r;
    double q = 0.0;
    for (int i = 0; i <= dim(); ++i) q += x.vec(i) * x.vec(i);
    if (q == 0.0) throw Error(ErrorKind::ZeroParavector, "evaluation at the origin");
    return r / std::pow(q, k_);
}

RationalFun scaled(const RationalFun& a, const Rational& r) { return a * r; }
RationalFun unit_like(const RationalFun& a) { return RationalFun(PolyFun::constant(a.dim(), 1), 0); }

std::vector<MV> line_taylor(const RationalFun& f, const MV& a, const MV& h, int K) {
    const int n = f.dim();
    if (K < 0) throw Error(ErrorKind::InvalidArgument, "negative order");
    // Restrict numerator and q to the line as polynomials in s, truncated at K.
    auto restrict_poly = [&](const PolyFun& p) {
        std::vector<MV> out(K + 1, MV(n));
        for (const auto& [m, c] : p.terms()) {
            std::vector<double> w(K + 1, 0.0);
            w[0] = 1.0;
            for (int i = 0; i <= n; ++i)
                for (int e = 0; e < m[i]; ++e)
                    for (int d = K; d >= 0; --d) w[d] = w[d] * a.vec(i) + (d > 0 ? w[d - 1] * h.vec(i) : 0.0);
            MV cd = convert<double>(c);
            for (int d = 0; d <= K; ++d)
                if (w[d] != 0.0) out[d] += cd * w[d];
        }
        return out;
    };
    std::vector<MV> num = restrict_poly(f.num());
    if (f.q_power() == 0) return num;
    std::vector<MV> den = restrict_poly(f.den());
    const double d0 = den[0].scalar_part();
    if (d0 == 0.0) throw Error(ErrorKind::ZeroParavector, "expansion at the origin");
    // Series division num / den with scalar den.
    std::vector<MV> out(K + 1, MV(n));
    for (int k = 0; k <= K; ++k) {
        MV r = num[k];
        for (int j = 1; j <= k; ++j) r -= out[k - j] * den[j].scalar_part();
        out[k] = r / d0;
    }
    return out;
}

}  // namespace cliffsym
