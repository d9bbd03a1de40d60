#include "cliffsym/core.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace cliffsym {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
        case ErrorKind::ZeroParavector: return "ZeroParavector";
        case ErrorKind::NotParavector: return "NotParavector";
        case ErrorKind::LimitExceeded: return "LimitExceeded";
        case ErrorKind::Divergent: return "Divergent";
        case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrorKind::SingularPath: return "SingularPath";
        case ErrorKind::SingularOnSimplex: return "SingularOnSimplex";
        case ErrorKind::SingularOnPath: return "SingularOnPath";
        case ErrorKind::EigenvalueOutsideContour: return "EigenvalueOutsideContour";
        case ErrorKind::DuplicateNodes: return "DuplicateNodes";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::NestedSym: return "NestedSym";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::UnknownSuite: return "UnknownSuite";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

Rational factorial_q(int k) {
    Rational r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

MV Paravector::mv() const {
    MV r(dim());
    r[0] = u0;
    for (int i = 1; i <= dim(); ++i) r.vec(i) = v[i - 1];
    return r;
}

double Paravector::vec_norm() const {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double Paravector::norm() const { return std::sqrt(u0 * u0 + vec_norm() * vec_norm()); }

Paravector Paravector::conj() const {
    Paravector r(u0, v);
    for (auto& x : r.v) x = -x;
    return r;
}

Paravector Paravector::from(const MV& a) {
    if (!is_paravector(a)) throw Error(ErrorKind::NotParavector, "multivector has grade >= 2 part");
    Paravector p;
    p.u0 = a[0];
    p.v.resize(a.dim());
    for (int i = 1; i <= a.dim(); ++i) p.v[i - 1] = a.vec(i);
    return p;
}

MV geometric_product(const MV& a, const MV& b) { return a * b; }

Paravector paravector_inverse(const Paravector& u) { return Paravector::from(paravector_inverse(u.mv())); }

MV adjoint(const MV& a) {
    MV r(a.dim());
    for (unsigned i = 0; i < a.size(); ++i) r[i] = blade_sign(i, i) * a[i];
    return r;
}

double operator_norm_power(const MV& a, int max_iter, double tol) {
    const int n = a.dim();
    if (a.is_zero()) return 0.0;
    const std::size_t N = a.size();
    // M = L_a^T L_a, column k of L_a is a * e_k.
    std::vector<double> L(N * N), M(N * N, 0.0);
    for (std::size_t k = 0; k < N; ++k) {
        MV col = a * MV::blade(n, static_cast<unsigned>(k), 1.0);
        for (std::size_t j = 0; j < N; ++j) L[j * N + k] = col[j];
    }
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < N; ++r) s += L[r * N + i] * L[r * N + j];
            M[i * N + j] = s;
        }
    auto matvec = [N](const std::vector<double>& A, const std::vector<double>& x) {
        std::vector<double> y(N, 0.0);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) y[i] += A[i * N + j] * x[j];
        return y;
    };
    // Deterministic start with all components nonzero.
    std::vector<double> v(N);
    for (std::size_t i = 0; i < N; ++i) v[i] = 1.0 + 0.37 * std::sin(1.0 + 2.1 * static_cast<double>(i));
    // Power iteration on P = M^(2^k): P is squared after every step, so the
    // contraction rate (s2/s1)^(2^k) does not stall on close singular values.
    std::vector<double> P = M, Q(N * N);
    double prev = 0.0, rq = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> w = matvec(P, v);
        double nw = 0.0;
        for (double x : w) nw += x * x;
        nw = std::sqrt(nw);
        if (nw == 0.0 || !std::isfinite(nw)) break;
        for (std::size_t i = 0; i < N; ++i) v[i] = w[i] / nw;
        std::vector<double> Mv = matvec(M, v);
        rq = 0.0;
        for (std::size_t i = 0; i < N; ++i) rq += v[i] * Mv[i];
        if (it > 0 && std::abs(rq - prev) <= tol * rq) break;
        prev = rq;
        double mx = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                double s = 0.0;
                for (std::size_t r = 0; r < N; ++r) s += P[i * N + r] * P[r * N + j];
                Q[i * N + j] = s;
                mx = std::max(mx, std::abs(s));
            }
        if (mx == 0.0) break;
        for (std::size_t i = 0; i < N * N; ++i) P[i] = Q[i] / mx;
    }
    return std::sqrt(std::max(rq, 0.0));
}

double operator_norm(const MV& a) {
    if (is_paravector(a)) {
        double s = 0.0;
        for (int i = 0; i <= a.dim(); ++i) s += a.vec(i) * a.vec(i);
        return std::sqrt(s);
    }
    return operator_norm_power(a);
}

MV grade01(const MV& a) {
    MV r(a.dim());
    for (int i = 0; i <= a.dim(); ++i) r.vec(i) = a.vec(i);
    return r;
}

ParavectorSplit paravector_part(const MV& a) {
    MV p = grade01(a);
    return {Paravector::from(p), operator_norm(a - p)};
}

Paravector exp_paravector(const Paravector& u) {
    const double r = u.vec_norm();
    const double e = std::exp(u.u0);
    Paravector out(e * std::cos(r), std::vector<double>(u.v.size(), 0.0));
    if (r > 0.0) {
        const double f = e * std::sin(r) / r;
        for (std::size_t i = 0; i < u.v.size(); ++i) out.v[i] = f * u.v[i];
    }
    return out;
}

MV exp_paravector(const MV& u) { return exp_paravector(Paravector::from(u)).mv(); }

std::string blade_name(unsigned mask) {
    if (mask == 0) return "";
    std::string s = "e";
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) s += std::to_string(i + 1);
    return s;
}

std::string format_mv(const MV& a, int precision) {
    std::string out;
    char buf[64];
    // Canonical order: by grade, then by mask.
    std::vector<unsigned> order;
    for (int g = 0; g <= a.dim(); ++g)
        for (unsigned m = 0; m < a.size(); ++m)
            if (blade_grade(m) == g) order.push_back(m);
    for (unsigned m : order) {
        double c = a[m];
        if (c == 0.0) continue;
        const bool neg = std::signbit(c);
        std::snprintf(buf, sizeof buf, "%.*g", precision, neg ? -c : c);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += buf;
        if (m) out += " " + blade_name(m);
    }
    return out.empty() ? "0" : out;
}

namespace {

struct MvLexer {
    const std::string& s;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(i));
    }
    bool digit(std::size_t k) const { return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])); }

    // Number without a lowercase 'e' exponent unless the exponent carries an explicit sign,
    // so that "2e1" reads as 2 times e1.
    bool number(double& out) {
        std::size_t j = i;
        while (digit(j)) ++j;
        if (j < s.size() && s[j] == '.') {
            ++j;
            while (digit(j)) ++j;
        }
        if (j == i || (j == i + 1 && s[i] == '.')) return false;
        if (j < s.size() && (s[j] == 'E' || (s[j] == 'e' && j + 1 < s.size() && (s[j + 1] == '+' || s[j + 1] == '-')))) {
            std::size_t k = j + 1;
            if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
            if (digit(k)) {
                while (digit(k)) ++k;
                j = k;
            }
        }
        out = std::strtod(s.substr(i, j - i).c_str(), nullptr);
        i = j;
        return true;
    }
};

}  // namespace

MV parse_mv(const std::string& s, int n) {
    MV r(n);
    MvLexer lx{s};
    lx.ws();
    if (lx.i >= s.size()) lx.fail("empty multivector");
    bool first = true;
    while (true) {
        lx.ws();
        if (lx.i >= s.size()) break;
        double sign = 1.0;
        if (s[lx.i] == '+' || s[lx.i] == '-') {
            sign = s[lx.i] == '-' ? -1.0 : 1.0;
            ++lx.i;
            lx.ws();
        } else if (!first) {
            lx.fail("expected '+' or '-'");
        }
        first = false;
        double c = 1.0;
        bool have_c = lx.number(c);
        lx.ws();
        unsigned mask = 0;
        if (lx.i < s.size() && s[lx.i] == 'e') {
            ++lx.i;
            if (!lx.digit(lx.i)) lx.fail("expected blade digits");
            int last = 0;
            while (lx.digit(lx.i)) {
                int d = s[lx.i] - '0';
                if (d == 0) {
                    if (last != 0) lx.fail("e0 inside a blade");
                } else {
                    if (d <= last) lx.fail("blade indices must be ascending");
                    if (d > n) throw Error(ErrorKind::IndexOutOfRange, "e" + std::to_string(d) + " in R_{0," + std::to_string(n) + "}");
                    mask |= 1u << (d - 1);
                    last = d;
                }
                ++lx.i;
            }
        } else if (!have_c) {
            lx.fail("expected coefficient or blade");
        }
        r[mask] += sign * c;
    }
    return r;
}

}  // namespace cliffsym
