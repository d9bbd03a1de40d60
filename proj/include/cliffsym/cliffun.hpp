#pragma once

#include "cliffsym/poly.hpp"
#include "cliffsym/simplex.hpp"
#include "cliffsym/symprod.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cliffsym {

struct MultiIndex {
    std::vector<int> idx;  // alpha_0..alpha_n

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> v);
    static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n + 1, 0)); }
    static MultiIndex unit(int n, int i);

    int dim() const { return static_cast<int>(idx.size()) - 1; }
    int order() const;
    // k_alpha = |alpha|! / prod alpha_i!
    BigInt weight() const;
    // The letters e_i, alpha_i copies each, in ascending order.
    std::vector<int> letters() const;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
};

// Multiplication from the left by a constant.
RationalFun operator*(const QMV& c, const RationalFun& f);

RationalFun power_x(int n, int k);
RationalFun partial(const RationalFun& f, const MultiIndex& alpha);
RationalFun dirac_D(const RationalFun& f);
RationalFun laplacian(const RationalFun& f);
// D Delta^m f for n = 2m + 1.
RationalFun holo_check(const RationalFun& f);
// Dense evaluation at random points; max |value| over the samples.
double sampled_max(const RationalFun& f, int samples, std::uint64_t seed);

constexpr int kPermutationLimit = 8;

// Sum over all orderings of the letters of prod (e x) followed by the last letter.
PolyFun P_alpha(const MultiIndex& alpha);
// Sum over all orderings of prod (x^-1 e) followed by x^-1.
RationalFun S_beta(const MultiIndex& beta);

// c with sym(P_alpha) = c * d^alpha x^(2|alpha|-1); equals |alpha|!(|alpha|-1)!/(2|alpha|-1)!.
Rational sym_P_alpha_constant(int order);
RationalFun sym_P_alpha(const MultiIndex& alpha);
// (-1)^|beta| d^beta x^-1.
RationalFun sym_S_beta(const MultiIndex& beta);

// Symbolic sym(e^alpha x^h), e_0 = 1.
struct SymMonomial {
    MultiIndex alpha;
    int h = 0;
    friend SymMonomial operator*(const SymMonomial& a, const SymMonomial& b);
};
MV eval_sym_monomial(const SymMonomial& m, const MV& x, Engine engine = Engine::Auto);
// Exact polynomial in x.
PolyFun sym_monomial_poly(const SymMonomial& m);

// sym(a e^x) = int_0^1 e^{tx} a e^{(1-t)x} dt.
MV sym_const_exp(const MV& a, const MV& x, int order = 32);
MV sym_exp_exp(const MV& x, const MV& y);

// Both sides of an identity between functions of x.
struct SymIdentity {
    RationalFun lhs, rhs;
    RationalFun residual() const { return lhs - rhs; }
    bool exact_zero() const { return residual().is_zero(); }
};

// (u|grad) sym(a x^p) against p sym(a u x^(p-1)). Negative p needs |p| = (number of
// generators of a) + 1, the case in which both sides are rational.
SymIdentity directional_sym_derivative(const MV& u, const MV& a, int p);

// f = sum c_alpha sym(P_alpha) + sum d_beta sym(S_beta).
struct ScalarCoeffSeries {
    int n = 0;
    std::vector<std::pair<MultiIndex, QMV>> poly;
    std::vector<std::pair<MultiIndex, Rational>> singular;

    bool scalar_coefficients() const;
    RationalFun function() const;
    MV eval(const MV& x) const { return function().eval(x); }
    // Lines "c a0 .. an value" and "d b0 .. bn value"; '#' starts a comment.
    static ScalarCoeffSeries parse(const std::string& text, int n);
    static ScalarCoeffSeries power(int n, int k);
};

// d^q/dx0^q sym(u^q f) against (u|grad)^q sym(f).
SymIdentity iterated_scalar_derivative(const MV& u, const ScalarCoeffSeries& f, int q);
RationalFun cr_residual(const ScalarCoeffSeries& f, const MV& u);

// Partial sums S_0..S_K of the expansion of f about a in direction x.
std::vector<MV> taylor_partial_sums(const ScalarCoeffSeries& f, const MV& a, const MV& x, int K);
MV taylor_sym(const ScalarCoeffSeries& f, const MV& a, const MV& x, int K);

class LagrangeInterpolant {
public:
    LagrangeInterpolant(std::vector<MV> nodes, std::vector<MV> values, QuadratureSpec q = {});
    MV operator()(const MV& x) const;
    double error_estimate() const { return last_error_; }

private:
    std::vector<MV> nodes_, values_;
    QuadratureSpec q_;
    mutable double last_error_ = 0.0;
};

LagrangeInterpolant lagrange_interpolate(std::vector<MV> nodes, std::vector<MV> values, QuadratureSpec q = {});

double partial_fraction_check(const MV& a, const MV& b, const MV& x, double tol = 1e-12);

struct Rect {
    double x0_lo, x0_hi, y_lo, y_hi;
};

// Loop integral of sym(f (dx0 + v d(x|v))) over the rectangle boundary in span{1, v}.
MV morera_integral(const std::function<MV(const MV&)>& f, const MV& v, const Rect& r, int panels = 4);
MV morera_integral(const ScalarCoeffSeries& f, const MV& v, const Rect& r, int panels = 4);

// sym((f(x+h) - f(x)) h^-1) for f = x^p, p >= 1 or p = -1.
MV sym_difference_quotient(int p, const MV& x, const MV& h);
MV sym_central_quotient(int p, const MV& x, const MV& h);

}  // namespace cliffsym
