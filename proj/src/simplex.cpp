#include "cliffsym/simplex.hpp"

#include "cliffsym/symprod.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <queue>
#include <tuple>

namespace cliffsym {

GaussRule gauss_jacobi01(int m, double p, double q) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "quadrature order must be positive");
    if (!(p > -1.0) || !(q > -1.0)) throw Error(ErrorKind::InvalidArgument, "Jacobi exponents must exceed -1");
    // Jacobi weight (1-y)^a (1+y)^b on [-1,1], x = (1+y)/2.
    const double a = q, b = p, ab = a + b;
    Eigen::VectorXd diag(m), sub(std::max(m - 1, 1));
    for (int k = 0; k < m; ++k) {
        if (k == 0)
            diag[k] = (b - a) / (ab + 2.0);
        else
            diag[k] = (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    }
    for (int k = 1; k < m; ++k) {
        double beta;
        if (k == 1)
            beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else {
            const double s = 2.0 * k + ab;
            beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        sub[k - 1] = std::sqrt(beta);
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(ab + 2.0));
    GaussRule r;
    r.x.resize(m);
    r.w.resize(m);
    if (m == 1) {
        r.x[0] = (1.0 + diag[0]) / 2.0;
        r.w[0] = mu0 / std::exp((ab + 1.0) * std::log(2.0));
        return r;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(m - 1), Eigen::ComputeEigenvectors);
    const double scale = std::exp(-(ab + 1.0) * std::log(2.0));
    for (int i = 0; i < m; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        r.x[i] = (1.0 + es.eigenvalues()[i]) / 2.0;
        r.w[i] = mu0 * v0 * v0 * scale;
    }
    return r;
}

GaussRule gauss_legendre01(int m) { return gauss_jacobi01(m, 0.0, 0.0); }

double beta_multivariate(const std::vector<double>& b) {
    if (b.empty()) throw Error(ErrorKind::InvalidArgument, "empty Dirichlet weights");
    double s = 0.0, lg = 0.0;
    for (double x : b) {
        if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "Dirichlet weights must be positive");
        s += x;
        lg += std::lgamma(x);
    }
    return std::exp(lg - std::lgamma(s));
}

namespace {

struct Box {
    std::vector<double> lo, hi;
    int depth = 0;
    MV value;
    double err = 0.0;
};

class DirichletIntegrator {
public:
    DirichletIntegrator(const std::function<MV(const std::vector<double>&)>& g, const std::vector<double>& b,
                        const QuadratureSpec& q)
        : g_(g), b_(b), q_(q), d_(static_cast<int>(b.size()) - 1) {
        p_.resize(d_);
        r_.resize(d_);
        norm_.resize(d_);
        for (int j = 0; j < d_; ++j) {
            double tail = 0.0;
            for (std::size_t k = j + 1; k < b.size(); ++k) tail += b[k];
            p_[j] = b[j] - 1.0;
            r_[j] = tail - 1.0;
            norm_[j] = beta_multivariate({b[j], tail});
        }
    }

    Integral run() {
        Integral out;
        if (d_ == 0) {
            out.value = g_({1.0});
            out.evaluations = 1;
            return out;
        }
        auto cmp = [](const Box& x, const Box& y) { return x.err < y.err; };
        std::priority_queue<Box, std::vector<Box>, decltype(cmp)> open(cmp);
        std::vector<Box> done;
        Box root;
        root.lo.assign(d_, 0.0);
        root.hi.assign(d_, 1.0);
        eval(root);
        double total = root.err;
        open.push(std::move(root));
        const int max_depth = q_.max_refine * d_;
        while (total > q_.tol && !open.empty()) {
            if (evals_ > 200000000L) break;
            Box bx = open.top();
            open.pop();
            if (bx.depth >= max_depth) {
                done.push_back(std::move(bx));
                continue;
            }
            total -= bx.err;
            const int axis = bx.depth % d_;
            const double mid = 0.5 * (bx.lo[axis] + bx.hi[axis]);
            Box c1 = bx, c2 = bx;
            c1.hi[axis] = mid;
            c2.lo[axis] = mid;
            c1.depth = c2.depth = bx.depth + 1;
            eval(c1);
            eval(c2);
            total += c1.err + c2.err;
            open.push(std::move(c1));
            open.push(std::move(c2));
        }
        // Deterministic accumulation: sort leaves by their lower corners.
        std::vector<Box> leaves = std::move(done);
        while (!open.empty()) {
            leaves.push_back(open.top());
            open.pop();
        }
        std::sort(leaves.begin(), leaves.end(), [](const Box& x, const Box& y) {
            return std::tie(x.lo, x.hi) < std::tie(y.lo, y.hi);
        });
        out.value = leaves[0].value - leaves[0].value;
        out.error = 0.0;
        for (const auto& l : leaves) {
            out.value += l.value;
            out.error += l.err;
        }
        out.evaluations = evals_;
        if (out.error > q_.tol) {
            char msg[96];
            std::snprintf(msg, sizeof msg, "error estimate %.3g above tolerance %.3g", out.error, q_.tol);
            throw Error(ErrorKind::QuadratureNotConverged, msg);
        }
        return out;
    }

private:
    const GaussRule& rule(int m, double p, double q) {
        auto key = std::make_tuple(m, p, q);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, gauss_jacobi01(m, p, q)).first;
        return it->second;
    }

    // Normalized 1D rule for axis j on [l, h].
    GaussRule axis_rule(int j, double l, double h, int m) {
        const double p = p_[j], q = r_[j];
        GaussRule out;
        if (l == 0.0 && h == 1.0) {
            out = rule(m, p, q);
        } else if (l == 0.0) {
            const GaussRule& s = rule(m, p, 0.0);
            const double f = std::pow(h, p + 1.0);
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                const double x = h * s.x[i];
                out.x.push_back(x);
                out.w.push_back(s.w[i] * f * std::pow(1.0 - x, q));
            }
        } else if (h == 1.0) {
            const GaussRule& s = rule(m, q, 0.0);
            const double f = std::pow(1.0 - l, q + 1.0);
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                const double x = 1.0 - (1.0 - l) * s.x[i];
                out.x.push_back(x);
                out.w.push_back(s.w[i] * f * std::pow(x, p));
            }
        } else {
            const GaussRule& s = rule(m, 0.0, 0.0);
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                const double x = l + (h - l) * s.x[i];
                out.x.push_back(x);
                out.w.push_back(s.w[i] * (h - l) * std::pow(x, p) * std::pow(1.0 - x, q));
            }
        }
        for (auto& w : out.w) w /= norm_[j];
        return out;
    }

    MV tensor(const Box& bx, int m) {
        std::vector<GaussRule> rules;
        for (int j = 0; j < d_; ++j) rules.push_back(axis_rule(j, bx.lo[j], bx.hi[j], m));
        std::vector<int> idx(d_, 0);
        std::vector<double> t(d_ + 1);
        MV acc;
        bool first = true;
        while (true) {
            double w = 1.0, rest = 1.0;
            for (int j = 0; j < d_; ++j) {
                const double xi = rules[j].x[idx[j]];
                w *= rules[j].w[idx[j]];
                t[j] = xi * rest;
                rest *= 1.0 - xi;
            }
            t[d_] = rest;
            MV v = g_(t) * w;
            ++evals_;
            if (first) {
                acc = v;
                first = false;
            } else {
                acc += v;
            }
            int j = d_ - 1;
            while (j >= 0 && ++idx[j] == static_cast<int>(rules[j].x.size())) idx[j--] = 0;
            if (j < 0) break;
        }
        return acc;
    }

    void eval(Box& bx) {
        const int m = std::max(2, q_.base_order);
        bx.value = tensor(bx, m);
        MV coarse = tensor(bx, std::max(1, (3 * m) / 4));
        bx.err = max_abs(bx.value - coarse);
    }

    const std::function<MV(const std::vector<double>&)>& g_;
    std::vector<double> b_;
    QuadratureSpec q_;
    int d_;
    std::vector<double> p_, r_, norm_;
    std::map<std::tuple<int, double, double>, GaussRule> cache_;
    long evals_ = 0;
};

MV combine(const std::vector<double>& t, const std::vector<MV>& us) {
    MV r = us[0] * t[0];
    for (std::size_t i = 1; i < us.size(); ++i) r += us[i] * t[i];
    return r;
}

double vec_dot(const MV& a, const MV& b) {
    double s = 0.0;
    for (int i = 0; i <= a.dim(); ++i) s += a.vec(i) * b.vec(i);
    return s;
}

}  // namespace

Integral dirichlet_integrate(const std::function<MV(const std::vector<double>&)>& g, const std::vector<double>& b,
                             const QuadratureSpec& q) {
    if (q.base_order < 2 || !(q.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "invalid quadrature spec");
    beta_multivariate(b);  // validates b
    return DirichletIntegrator(g, b, q).run();
}

Integral dirichlet_mean(const std::function<MV(const MV&)>& f, const std::vector<double>& b,
                        const std::vector<MV>& us, const QuadratureSpec& q) {
    if (us.empty() || us.size() != b.size())
        throw Error(ErrorKind::InvalidArgument, "need one Dirichlet weight per paravector");
    for (const auto& u : us) us[0].same(u);
    try {
        return dirichlet_integrate([&](const std::vector<double>& t) { return f(combine(t, us)); }, b, q);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ZeroParavector) throw Error(ErrorKind::SingularOnSimplex, e.what());
        throw;
    }
}

MV dirichlet_mean_power(int k, const std::vector<double>& b, const std::vector<MV>& us) {
    if (us.empty() || us.size() != b.size())
        throw Error(ErrorKind::InvalidArgument, "need one Dirichlet weight per paravector");
    if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
    const int n = us[0].dim();
    if (k == 0) return MV::scalar(n, 1.0);
    const int l = static_cast<int>(us.size());
    double bsum = 0.0;
    for (double x : b) bsum += x;
    double denom = 1.0;  // rising factorial (bsum)_k
    for (int i = 0; i < k; ++i) denom *= bsum + i;
    MV acc(n);
    std::vector<int> kappa(l, 0);
    // Enumerate compositions of k into l parts.
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == l - 1) {
            kappa[pos] = left;
            double moment = 1.0, coef = factorial(k);
            std::vector<std::pair<MV, int>> ms;
            for (int i = 0; i < l; ++i) {
                for (int j = 0; j < kappa[i]; ++j) moment *= b[i] + j;
                coef /= factorial(kappa[i]);
                if (kappa[i] > 0) ms.emplace_back(us[i], kappa[i]);
            }
            acc += sym_multiset(ms) * (moment / denom * coef);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            kappa[pos] = c;
            self(self, pos + 1, left - c);
        }
    };
    rec(rec, 0, k);
    return acc;
}

HullDistance hull_distance_to_origin(const std::vector<MV>& pts, int iters) {
    MV x = pts[0];
    for (const auto& p : pts)
        if (vec_dot(p, p) < vec_dot(x, x)) x = p;
    double lower = 0.0;
    for (int it = 0; it < iters; ++it) {
        const double nx = std::sqrt(vec_dot(x, x));
        if (nx == 0.0) return {0.0, 0.0};
        std::size_t s = 0;
        double best = vec_dot(pts[0], x);
        for (std::size_t j = 1; j < pts.size(); ++j) {
            double d = vec_dot(pts[j], x);
            if (d < best) {
                best = d;
                s = j;
            }
        }
        lower = std::max(lower, best / nx);
        if (nx - lower <= 1e-15 * nx) break;
        MV dir = x - pts[s];
        const double dd = vec_dot(dir, dir);
        if (dd == 0.0) break;
        const double gamma = std::clamp(vec_dot(x, dir) / dd, 0.0, 1.0);
        x = x - dir * gamma;
    }
    return {std::max(lower, 0.0), std::sqrt(vec_dot(x, x))};
}

namespace {

void check_nonsingular_hull(const std::vector<MV>& vs, ErrorKind kind) {
    double scale = 0.0;
    for (const auto& v : vs) scale = std::max(scale, std::sqrt(vec_dot(v, v)));
    if (scale == 0.0) throw Error(kind, "zero paravector");
    auto hd = hull_distance_to_origin(vs);
    if (hd.lower <= 1e-12 * scale) throw Error(kind, "convex combination passes through 0");
}

}  // namespace

Integral feynman_inverse_pair(const MV& u, const MV& v, const QuadratureSpec& q) {
    u.same(v);
    if (!is_paravector(u) || !is_paravector(v)) throw Error(ErrorKind::NotParavector, "inverse pair expects paravectors");
    const double uu = vec_dot(u, u), vv = vec_dot(v, v);
    if (uu == 0.0 || vv == 0.0) throw Error(ErrorKind::ZeroParavector, "zero factor");
    const double lambda = vec_dot(u, v) / uu;
    if (max_abs(v - u * lambda) <= 1e-14 * std::sqrt(vv)) {
        if (lambda < 0.0) throw Error(ErrorKind::SingularPath, "v = lambda u with lambda < 0");
        MV ui = paravector_inverse(u);
        return {ui * ui / lambda, 0.0, 0};
    }
    check_nonsingular_hull({u, v}, ErrorKind::SingularPath);
    return dirichlet_integrate(
        [&](const std::vector<double>& t) {
            MV w = paravector_inverse(u * t[0] + v * t[1]);
            return w * w;
        },
        {1.0, 1.0}, q);
}

Integral sym_mixed_rational(std::vector<MV> us, std::vector<MV> vs, const QuadratureSpec& q) {
    if (vs.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one inverted factor");
    const int n = vs[0].dim();
    for (const auto& v : vs) {
        vs[0].same(v);
        if (!is_paravector(v)) throw Error(ErrorKind::NotParavector, "inverted factors must be paravectors");
    }
    for (const auto& u : us) vs[0].same(u);
    while (vs.size() < us.size() + 1) vs.push_back(MV::scalar(n, 1.0));
    while (us.size() + 1 < vs.size()) us.push_back(MV::scalar(n, 1.0));
    for (const auto& u : us)
        if (u.is_zero()) return {MV(n), 0.0, 0};
    check_nonsingular_hull(vs, ErrorKind::SingularPath);
    const int l = static_cast<int>(us.size());
    if (l == 0) return {paravector_inverse(vs[0]), 0.0, 0};
    const double inv_fact = 1.0 / factorial(l);
    const std::size_t full = (std::size_t{1} << l) - 1;
    // The integrand sees t only through sum t_i v_i, so repeated vertices merge
    // into one with the summed Dirichlet weight.
    std::vector<MV> verts;
    std::vector<double> weights;
    for (const auto& v : vs) {
        auto it = std::find(verts.begin(), verts.end(), v);
        if (it == verts.end()) {
            verts.push_back(v);
            weights.push_back(1.0);
        } else {
            weights[it - verts.begin()] += 1.0;
        }
    }
    auto g = [&](const std::vector<double>& t) {
        MV W = paravector_inverse(combine(t, verts));
        std::vector<MV> wu(l);
        for (int j = 0; j < l; ++j) wu[j] = W * us[j];
        // Q[S] = sum over orderings of S of prod (W u_j).
        std::vector<MV> Q(full + 1, MV(n));
        Q[0] = MV::scalar(n, 1.0);
        for (std::size_t S = 0; S < full; ++S) {
            if (Q[S].is_zero()) continue;
            for (int j = 0; j < l; ++j)
                if (!(S & (std::size_t{1} << j))) Q[S | (std::size_t{1} << j)] += Q[S] * wu[j];
        }
        return Q[full] * W * inv_fact;
    };
    try {
        return dirichlet_integrate(g, weights, q);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ZeroParavector) throw Error(ErrorKind::SingularPath, e.what());
        throw;
    }
}

std::pair<Complex, Complex> paravector_eigenvalues(const MV& u) {
    if (!is_paravector(u)) throw Error(ErrorKind::NotParavector, "eigenvalues of a non-paravector");
    const double r = Paravector::from(u).vec_norm();
    return {Complex(u[0], r), Complex(u[0], -r)};
}

Contour Contour::around(const MV& u, int nodes) {
    const double r = Paravector::from(u).vec_norm();
    return Contour{Complex(u[0], 0.0), 2.0 * r + 1.0, nodes};
}

bool Contour::encloses(const MV& u) const {
    auto [l1, l2] = paravector_eigenvalues(u);
    return std::abs(l1 - center) < radius && std::abs(l2 - center) < radius;
}

namespace {

void check_contour(const Contour& c, const MV& u) {
    if (c.nodes < 1 || !(c.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "invalid contour");
    if (!c.encloses(u)) throw Error(ErrorKind::EigenvalueOutsideContour, "eigenvalue outside contour");
}

Complex node(const Contour& c, int k) {
    const double th = 2.0 * std::numbers::pi * k / c.nodes;
    return c.center + c.radius * Complex(std::cos(th), std::sin(th));
}

}  // namespace

ContourResult contour_power(const MV& u, int p, const Contour& c) {
    if (p < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
    check_contour(c, u);
    const int n = u.dim();
    const CMV uc = complexify(u);
    CMV acc(n);
    for (int k = 0; k < c.nodes; ++k) {
        const Complex z = node(c, k);
        CMV r = paravector_inverse(CMV::scalar(n, z) - uc);
        acc += r * (std::pow(z, p) * (z - c.center));
    }
    acc /= Complex(c.nodes, 0.0);
    return {real_part(acc), max_abs(imag_part(acc))};
}

ContourResult contour_sym_power(const MV& u1, const MV& u2, int p, int q, const Contour& c1, const Contour& c2,
                                const QuadratureSpec& qs) {
    u1.same(u2);
    if (p < 0 || q < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
    check_contour(c1, u1);
    check_contour(c2, u2);
    const int n = u1.dim();
    const CMV a1 = complexify(u1), a2 = complexify(u2);
    const GaussRule gl = gauss_legendre01(std::max(2 * qs.base_order, 16));
    // Each factor is scaled by 1/(z_j - c_j): the inner Feynman path then stays
    // in the region where the resolvent series converges.
    std::vector<CMV> b2(c2.nodes);
    std::vector<Complex> w2(c2.nodes);
    for (int k = 0; k < c2.nodes; ++k) {
        const Complex z = node(c2, k);
        b2[k] = (CMV::scalar(n, z) - a2) / (z - c2.center);
        w2[k] = std::pow(z, q);
    }
    CMV acc(n);
    try {
        for (int j = 0; j < c1.nodes; ++j) {
            const Complex z1 = node(c1, j);
            const CMV b1 = (CMV::scalar(n, z1) - a1) / (z1 - c1.center);
            const Complex w1 = std::pow(z1, p);
            for (int k = 0; k < c2.nodes; ++k) {
                CMV inner(n);
                for (std::size_t i = 0; i < gl.x.size(); ++i) {
                    CMV w = paravector_inverse(b1 * Complex(gl.x[i], 0.0) + b2[k] * Complex(1.0 - gl.x[i], 0.0));
                    inner += w * w * Complex(gl.w[i], 0.0);
                }
                acc += inner * (w1 * w2[k]);
            }
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ZeroParavector) throw Error(ErrorKind::SingularPath, e.what());
        throw;
    }
    acc /= Complex(static_cast<double>(c1.nodes) * c2.nodes, 0.0);
    return {real_part(acc), max_abs(imag_part(acc))};
}

}  // namespace cliffsym
