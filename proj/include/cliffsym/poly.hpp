#pragma once

#include "cliffsym/multivector.hpp"

#include <array>
#include <cstdint>
#include <map>

namespace cliffsym {

// Exponents of x0..xn.
using Monomial = std::array<std::uint8_t, kMaxDim + 1>;

// Polynomial in the real coordinates x0..xn with exact multivector coefficients.
class PolyFun {
public:
    PolyFun() : n_(0) {}
    explicit PolyFun(int n) : n_(n) {}

    static PolyFun constant(const QMV& c);
    static PolyFun constant(int n, const Rational& c) { return constant(QMV::scalar(n, c)); }
    // The coordinate x_i as a scalar-valued polynomial.
    static PolyFun coordinate(int n, int i);
    // x = x0 + sum e_i x_i.
    static PolyFun identity(int n);

    int dim() const { return n_; }
    const std::map<Monomial, QMV>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    // Largest exponent of x_i over all terms.
    int degree_in(int i) const;
    void add_term(const Monomial& m, const QMV& c);

    PolyFun& operator+=(const PolyFun& o);
    PolyFun& operator-=(const PolyFun& o);
    PolyFun operator-() const;
    friend PolyFun operator+(PolyFun a, const PolyFun& b) { return a += b; }
    friend PolyFun operator-(PolyFun a, const PolyFun& b) { return a -= b; }
    friend PolyFun operator*(const PolyFun& a, const PolyFun& b);
    friend PolyFun operator*(PolyFun a, const Rational& s);
    friend bool operator==(const PolyFun& a, const PolyFun& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    PolyFun derivative(int i) const;
    // Applies a linear map to every coefficient.
    template <class F>
    PolyFun map_coeffs(F f) const {
        PolyFun r(n_);
        for (const auto& [m, c] : terms_) r.add_term(m, f(c));
        return r;
    }

    // Evaluation at the paravector point x (coordinates x.vec(i)).
    MV eval(const MV& x) const;
    QMV eval_exact(const QMV& x) const;

private:
    int n_;
    std::map<Monomial, QMV> terms_;
};

PolyFun scaled(const PolyFun& a, const Rational& r);
PolyFun unit_like(const PolyFun& a);

// x0^2 + ... + xn^2.
PolyFun norm_squared(int n);

// num / q^k with q = x0^2 + ... + xn^2. Every function handled here has a
// denominator of this form.
class RationalFun {
public:
    RationalFun() = default;
    RationalFun(PolyFun num, int q_power = 0);

    int dim() const { return num_.dim(); }
    const PolyFun& num() const { return num_; }
    int q_power() const { return k_; }
    PolyFun den() const;
    bool is_polynomial() const { return k_ == 0; }
    // Structural zero test on the numerator.
    bool is_zero() const { return num_.is_zero(); }

    RationalFun& operator+=(const RationalFun& o);
    RationalFun& operator-=(const RationalFun& o);
    RationalFun operator-() const { return RationalFun(-num_, k_); }
    friend RationalFun operator+(RationalFun a, const RationalFun& b) { return a += b; }
    friend RationalFun operator-(RationalFun a, const RationalFun& b) { return a -= b; }
    friend RationalFun operator*(const RationalFun& a, const RationalFun& b);
    friend RationalFun operator*(RationalFun a, const Rational& s);

    RationalFun derivative(int i) const;
    // Cancels common factors of q.
    RationalFun normalized() const;

    MV eval(const MV& x) const;

private:
    PolyFun num_;
    int k_ = 0;
};

RationalFun scaled(const RationalFun& a, const Rational& r);
RationalFun unit_like(const RationalFun& a);

// Exact quotient by q when it divides p.
bool divide_by_q(const PolyFun& p, PolyFun& quotient);

// Taylor coefficients of s -> f(a + s h) up to order K; result[k] = d^k/ds^k f / k!.
std::vector<MV> line_taylor(const RationalFun& f, const MV& a, const MV& h, int K);

}  // namespace cliffsym
