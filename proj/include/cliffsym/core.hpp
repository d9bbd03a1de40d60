#pragma once

#include "cliffsym/multivector.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cliffsym {

// Scalar plus vector part, u0 + sum ui ei.
struct Paravector {
    double u0 = 0.0;
    std::vector<double> v;

    Paravector() = default;
    Paravector(double s, std::vector<double> vec) : u0(s), v(std::move(vec)) {}

    int dim() const { return static_cast<int>(v.size()); }
    MV mv() const;
    double norm() const;
    double vec_norm() const;
    Paravector conj() const;

    // Throws NotParavector if a has support on grades >= 2.
    static Paravector from(const MV& a);
};

struct Algebra {
    int n = 1;

    MV zero() const { return MV(n); }
    MV one() const { return MV::scalar(n, 1.0); }
    MV e(int i) const { return MV::basis(n, i); }
};

// Geometric product with an explicit algebra check.
MV geometric_product(const MV& a, const MV& b);

Paravector paravector_inverse(const Paravector& u);

// Spectral norm of the left-multiplication matrix L_a.
double operator_norm(const MV& a);
// Same norm by power iteration only, without the paravector shortcut.
double operator_norm_power(const MV& a, int max_iter = 500, double tol = 1e-12);

// Reversion-like involution with L_{adjoint(a)} = L_a^T.
MV adjoint(const MV& a);

struct ParavectorSplit {
    Paravector part;
    double residual_norm;
};
ParavectorSplit paravector_part(const MV& a);
MV grade01(const MV& a);

Paravector exp_paravector(const Paravector& u);
MV exp_paravector(const MV& u);

// Text format: "2.5 + 1 e1 - 0.5 e13". Blades with index >= 10 are not expressible.
std::string format_mv(const MV& a, int precision = 12);
MV parse_mv(const std::string& s, int n);
std::string blade_name(unsigned mask);

}  // namespace cliffsym
