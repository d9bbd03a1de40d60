#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <type_traits>

namespace cliffsym {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

// Magnitude of a scalar as a double, for norms and tolerances.
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }
inline double magnitude(const Rational& x) { return std::abs(x.convert_to<double>()); }
inline double magnitude(std::int64_t x) { return std::abs(static_cast<double>(x)); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(std::int64_t x) { return x == 0; }

template <class T>
T from_rational(const Rational& r) {
    if constexpr (std::is_same_v<T, Rational>) {
        return r;
    } else if constexpr (std::is_same_v<T, Complex>) {
        return Complex(r.template convert_to<double>(), 0.0);
    } else {
        return static_cast<T>(r.template convert_to<double>());
    }
}

template <class T>
double to_double(const T& x) {
    if constexpr (std::is_same_v<T, Rational>) {
        return x.template convert_to<double>();
    } else if constexpr (std::is_same_v<T, Complex>) {
        return x.real();
    } else {
        return static_cast<double>(x);
    }
}

Rational factorial_q(int k);
double factorial(int k);
double binomial(int n, int k);

}  // namespace cliffsym
