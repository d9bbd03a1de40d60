#pragma once

#include "cliffsym/error.hpp"
#include "cliffsym/kernels.hpp"
#include "cliffsym/scalar.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

namespace cliffsym {

constexpr int kMaxDim = 8;

// Sign of e_A e_B in R_{0,n}, blades as bitmasks (bit i-1 <-> e_i).
inline int blade_sign(unsigned a, unsigned b) {
    int swaps = 0;
    unsigned x = a >> 1;
    while (x) {
        swaps += std::popcount(x & b);
        x >>= 1;
    }
    swaps += std::popcount(a & b);
    return (swaps & 1) ? -1 : 1;
}

inline int blade_grade(unsigned a) { return std::popcount(a); }

template <class T>
class Multivector {
public:
    Multivector() : n_(0), c_(1, T(0)) {}
    explicit Multivector(int n) : n_(check_dim(n)), c_(std::size_t{1} << n, T(0)) {}

    static Multivector scalar(int n, const T& s) {
        Multivector m(n);
        m.c_[0] = s;
        return m;
    }
    // e_i, i in 1..n; i == 0 gives the unit.
    static Multivector basis(int n, int i) {
        if (i < 0 || i > n) throw Error(ErrorKind::IndexOutOfRange, "basis index " + std::to_string(i));
        Multivector m(n);
        m.c_[i == 0 ? 0u : (1u << (i - 1))] = T(1);
        return m;
    }
    static Multivector blade(int n, unsigned mask, const T& coef) {
        Multivector m(n);
        if (mask >= m.c_.size()) throw Error(ErrorKind::IndexOutOfRange, "blade mask");
        m.c_[mask] = coef;
        return m;
    }

    int dim() const { return n_; }
    std::size_t size() const { return c_.size(); }
    const T& operator[](unsigned mask) const { return c_[mask]; }
    T& operator[](unsigned mask) { return c_[mask]; }
    const std::vector<T>& coeffs() const { return c_; }
    std::vector<T>& coeffs() { return c_; }

    T scalar_part() const { return c_[0]; }
    // Coefficient of e_i (i >= 1) or of the unit (i == 0).
    const T& vec(int i) const { return c_[i == 0 ? 0u : (1u << (i - 1))]; }
    T& vec(int i) { return c_[i == 0 ? 0u : (1u << (i - 1))]; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!cliffsym::is_zero(x)) return false;
        return true;
    }

    Multivector& operator+=(const Multivector& o) {
        same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Multivector& operator-=(const Multivector& o) {
        same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Multivector& operator*=(const T& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    Multivector& operator/=(const T& s) {
        for (auto& x : c_) x /= s;
        return *this;
    }
    Multivector operator-() const {
        Multivector r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator*(Multivector a, const T& s) { return a *= s; }
    friend Multivector operator*(const T& s, Multivector a) { return a *= s; }
    friend Multivector operator/(Multivector a, const T& s) { return a /= s; }

    friend Multivector operator*(const Multivector& a, const Multivector& b) {
        a.same(b);
        Multivector r(a.n_);
        if constexpr (std::is_same_v<T, double>) {
            kernels::gp(a.n_, a.c_.data(), b.c_.data(), r.c_.data());
        } else {
            const unsigned N = static_cast<unsigned>(a.c_.size());
            for (unsigned m = 0; m < N; ++m) {
                if (cliffsym::is_zero(b.c_[m])) continue;
                for (unsigned j = 0; j < N; ++j) {
                    const unsigned k = j ^ m;
                    if (cliffsym::is_zero(a.c_[k])) continue;
                    T t = a.c_[k] * b.c_[m];
                    if (blade_sign(k, m) < 0) t = -t;
                    r.c_[j] += t;
                }
            }
        }
        return r;
    }

    friend bool operator==(const Multivector& a, const Multivector& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

    void same(const Multivector& o) const {
        if (o.n_ != n_)
            throw Error(ErrorKind::AlgebraMismatch,
                        "R_{0," + std::to_string(n_) + "} vs R_{0," + std::to_string(o.n_) + "}");
    }

private:
    static int check_dim(int n) {
        if (n < 0 || n > kMaxDim) throw Error(ErrorKind::InvalidArgument, "dimension must be in 0..8");
        return n;
    }

    int n_;
    std::vector<T> c_;
};

using MV = Multivector<double>;
using CMV = Multivector<Complex>;
using QMV = Multivector<Rational>;
using ZMV = Multivector<std::int64_t>;

template <class U, class T>
Multivector<U> convert(const Multivector<T>& a) {
    Multivector<U> r(a.dim());
    for (unsigned i = 0; i < a.size(); ++i) {
        if constexpr (std::is_same_v<T, Rational>)
            r[i] = from_rational<U>(a[i]);
        else
            r[i] = static_cast<U>(a[i]);
    }
    return r;
}

inline CMV complexify(const MV& a) {
    CMV r(a.dim());
    for (unsigned i = 0; i < a.size(); ++i) r[i] = Complex(a[i], 0.0);
    return r;
}

inline MV real_part(const CMV& a) {
    MV r(a.dim());
    for (unsigned i = 0; i < a.size(); ++i) r[i] = a[i].real();
    return r;
}

inline MV imag_part(const CMV& a) {
    MV r(a.dim());
    for (unsigned i = 0; i < a.size(); ++i) r[i] = a[i].imag();
    return r;
}

template <class T>
Multivector<T> power(const Multivector<T>& a, int p) {
    if (p < 0) throw Error(ErrorKind::InvalidArgument, "negative power of a general multivector");
    Multivector<T> r = Multivector<T>::scalar(a.dim(), T(1));
    Multivector<T> b = a;
    while (p) {
        if (p & 1) r = r * b;
        p >>= 1;
        if (p) b = b * b;
    }
    return r;
}

// Largest coefficient magnitude.
template <class T>
double max_abs(const Multivector<T>& a) {
    double m = 0.0;
    for (const auto& x : a.coeffs()) m = std::max(m, magnitude(x));
    return m;
}

template <class T>
double max_abs_diff(const Multivector<T>& a, const Multivector<T>& b) {
    return max_abs(a - b);
}

// Sum of coefficient magnitudes on blades of grade >= 2.
template <class T>
double nonparavector_max(const Multivector<T>& a) {
    double m = 0.0;
    for (unsigned i = 0; i < a.size(); ++i)
        if (blade_grade(i) >= 2) m = std::max(m, magnitude(a[i]));
    return m;
}

template <class T>
bool is_paravector(const Multivector<T>& a) {
    for (unsigned i = 0; i < a.size(); ++i)
        if (blade_grade(i) >= 2 && !cliffsym::is_zero(a[i])) return false;
    return true;
}

// u0 - uvec for a paravector; general multivectors are rejected.
template <class T>
Multivector<T> paravector_conj(const Multivector<T>& u) {
    if (!is_paravector(u)) throw Error(ErrorKind::NotParavector, "conjugate of a non-paravector");
    Multivector<T> r = -u;
    r[0] = u[0];
    return r;
}

// u0^2 + sum ui^2 (bilinear, also for complex coefficients).
template <class T>
T paravector_quadratic(const Multivector<T>& u) {
    T s = u[0] * u[0];
    for (int i = 1; i <= u.dim(); ++i) s += u.vec(i) * u.vec(i);
    return s;
}

template <class T>
Multivector<T> paravector_inverse(const Multivector<T>& u) {
    if (!is_paravector(u)) throw Error(ErrorKind::NotParavector, "inverse of a non-paravector");
    T q = paravector_quadratic(u);
    if (cliffsym::is_zero(q)) throw Error(ErrorKind::ZeroParavector, "paravector with zero norm");
    return paravector_conj(u) / q;
}

}  // namespace cliffsym
