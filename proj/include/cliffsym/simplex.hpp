#pragma once

#include "cliffsym/core.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace cliffsym {

struct QuadratureSpec {
    int base_order = 16;  // Gauss points per axis
    double tol = 1e-10;   // target absolute error
    int max_refine = 8;   // dyadic bisections allowed per axis
};

struct GaussRule {
    std::vector<double> x, w;
};

// Nodes and weights for int_0^1 g(x) x^p (1-x)^q dx, p, q > -1 (Golub-Welsch).
GaussRule gauss_jacobi01(int m, double p, double q);
GaussRule gauss_legendre01(int m);

double beta_multivariate(const std::vector<double>& b);

struct Integral {
    MV value;
    double error = 0.0;
    long evaluations = 0;
};

// int_E g(t) dmu_b(t), t = (t_1..t_l) barycentric with sum 1, over the Dirichlet
// probability measure with weights b. Adaptive tensor Gauss-Jacobi in
// stick-breaking coordinates.
Integral dirichlet_integrate(const std::function<MV(const std::vector<double>&)>& g,
                             const std::vector<double>& b, const QuadratureSpec& q);

// F(f, b, u) = int_E f(t:u) dmu_b.
Integral dirichlet_mean(const std::function<MV(const MV&)>& f, const std::vector<double>& b,
                        const std::vector<MV>& us, const QuadratureSpec& q = {});
// Exact moment route for f(t) = t^k.
MV dirichlet_mean_power(int k, const std::vector<double>& b, const std::vector<MV>& us);

// Certified lower bound on the distance from 0 to the convex hull of the points
// (paravectors as vectors in R^{n+1}), and the near point found.
struct HullDistance {
    double lower;
    double upper;
};
HullDistance hull_distance_to_origin(const std::vector<MV>& pts, int iters = 2000);

Integral feynman_inverse_pair(const MV& u, const MV& v, const QuadratureSpec& q = {});

// sym(prod u_i prod v_j^{-1}) by the simplex integral with the Dirichlet(1..1) measure.
Integral sym_mixed_rational(std::vector<MV> us, std::vector<MV> vs, const QuadratureSpec& q = {});

std::pair<Complex, Complex> paravector_eigenvalues(const MV& u);

struct Contour {
    Complex center{0.0, 0.0};
    double radius = 1.0;
    int nodes = 64;

    static Contour around(const MV& u, int nodes = 64);
    bool encloses(const MV& u) const;
};

// (1/2 pi i) contour integral of z^p (z-u)^{-1}; returns the real part, the
// imaginary residue is reported separately.
struct ContourResult {
    MV value;
    double imag_residue = 0.0;
};
ContourResult contour_power(const MV& u, int p, const Contour& c);
ContourResult contour_sym_power(const MV& u1, const MV& u2, int p, int q, const Contour& c1, const Contour& c2,
                                const QuadratureSpec& qs = {});

}  // namespace cliffsym
