#include "gosc/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

#include "gosc/errors.hpp"

namespace gosc::quad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Half-width of the t-range. Wide enough that endpoint factors like (1-x)^-0.9 are
// resolved to the working precision.
double t_max_mp(long bits) { return std::log(4.5 * static_cast<double>(bits)); }
constexpr double kTMaxDouble = 6.5;

mp::Real mp_inf(long bits) {
    mp::Real r(bits);
    mpfr_set_inf(r.raw(), 1);
    return r;
}

}  // namespace

std::vector<Node> de_nodes(double lo, double hi, int level) {
    const double h = std::ldexp(1.0, -level);
    const long J = static_cast<long>(std::ceil(kTMaxDouble / h));
    std::vector<Node> out;
    out.reserve(static_cast<size_t>(2 * J + 1));
    const bool fin_lo = std::isfinite(lo), fin_hi = std::isfinite(hi);
    for (long j = -J; j <= J; ++j) {
        const double t = static_cast<double>(j) * h;
        const double u = M_PI_2 * std::sinh(t);
        const double du = M_PI_2 * std::cosh(t);
        Node nd{};
        if (fin_lo && fin_hi) {
            const double c = 0.5 * (hi - lo);
            const double e = std::exp(-2.0 * std::abs(u));
            const double near = c * 2.0 * e / (1.0 + e);
            if (u >= 0) {
                nd.dr = near;
                nd.dl = 2.0 * c - near;
                nd.x = hi - near;
            } else {
                nd.dl = near;
                nd.dr = 2.0 * c - near;
                nd.x = lo + near;
            }
            nd.w = h * c * du * 4.0 * e / ((1.0 + e) * (1.0 + e));
            if (nd.dl <= 0 || nd.dr <= 0) continue;
        } else if (fin_lo) {
            const double e = std::exp(u);
            nd.x = lo + e;
            nd.dl = e;
            nd.dr = kInf;
            nd.w = h * e * du;
            if (e <= 0) continue;
        } else if (fin_hi) {
            const double e = std::exp(u);
            nd.x = hi - e;
            nd.dr = e;
            nd.dl = kInf;
            nd.w = h * e * du;
            if (e <= 0) continue;
        } else {
            nd.x = std::sinh(u);
            nd.dl = nd.dr = kInf;
            nd.w = h * std::cosh(u) * du;
        }
        if (!std::isfinite(nd.x) || !std::isfinite(nd.w) || nd.w == 0.0) continue;
        out.push_back(nd);
    }
    return out;
}

std::vector<MpNode> de_nodes_mp(double lo, double hi, int level, long bits) {
    const double tm = t_max_mp(bits);
    const long J = static_cast<long>(std::ceil(std::ldexp(tm, level)));
    const mp::Real h = mp::Real(std::ldexp(1.0, -level), bits);
    const mp::Real half_pi = mp::pi(bits) / 2.0;
    const bool fin_lo = std::isfinite(lo), fin_hi = std::isfinite(hi);
    const mp::Real rlo(fin_lo ? lo : 0.0, bits), rhi(fin_hi ? hi : 0.0, bits);
    const mp::Real c = (rhi - rlo) / 2.0;
    std::vector<MpNode> out;
    out.reserve(static_cast<size_t>(2 * J + 1));
    for (long j = -J; j <= J; ++j) {
        const mp::Real t = h * static_cast<double>(j);
        const mp::Real u = half_pi * mp::sinh(t);
        const mp::Real du = half_pi * mp::cosh(t);
        if (fin_lo && fin_hi) {
            const mp::Real e = mp::exp(u.sign() >= 0 ? u * -2.0 : u * 2.0);
            const mp::Real opl = e + 1.0;
            const mp::Real near = c * 2.0 * e / opl;
            mp::Real w = h * c * du * 4.0 * e / (opl * opl);
            if (near.is_zero()) continue;
            if (u.sign() >= 0)
                out.push_back({rhi - near, c * 2.0 - near, near, std::move(w)});
            else
                out.push_back({rlo + near, near, c * 2.0 - near, std::move(w)});
        } else if (fin_lo) {
            mp::Real e = mp::exp(u);
            if (e.is_zero()) continue;
            mp::Real w = h * e * du;
            out.push_back({rlo + e, e, mp_inf(bits), std::move(w)});
        } else if (fin_hi) {
            mp::Real e = mp::exp(u);
            if (e.is_zero()) continue;
            mp::Real w = h * e * du;
            out.push_back({rhi - e, mp_inf(bits), e, std::move(w)});
        } else {
            mp::Real w = h * mp::cosh(u) * du;
            out.push_back({mp::sinh(u), mp_inf(bits), mp_inf(bits), std::move(w)});
        }
    }
    return out;
}

MpRule gauss_legendre_mp(int n, long bits) {
    if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs n >= 1");
    MpRule r;
    r.x.resize(static_cast<size_t>(n), mp::Real(bits));
    r.w.resize(static_cast<size_t>(n), mp::Real(bits));
    const mp::Real eps = mp::pow(mp::Real(2.0, bits), -(bits - 6));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        mp::Real x(std::cos(M_PI * (i + 0.75) / (n + 0.5)), bits);
        mp::Real dp(bits);
        for (int it = 0; it < 200; ++it) {
            // P_n and P_n' by the three-term recurrence
            mp::Real p0(1.0, bits), p1 = x;
            for (int k = 2; k <= n; ++k) {
                mp::Real p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            if (n == 1) p0 = mp::Real(1.0, bits);
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            mp::Real dx = p1 / dp;
            x -= dx;
            if (mp::abs(dx) <= eps) break;
        }
        if (n == 1) {
            x = mp::Real(bits);
            dp = mp::Real(1.0, bits);
        } else {
            mp::Real p0(1.0, bits), p1 = x;
            for (int k = 2; k <= n; ++k) {
                mp::Real p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        }
        mp::Real w = 2.0 / ((1.0 - x * x) * dp * dp);
        const size_t a = static_cast<size_t>(i), b = static_cast<size_t>(n - 1 - i);
        r.x[a] = -x;
        r.x[b] = x;
        r.w[a] = w;
        r.w[b] = w;
    }
    return r;
}

Rule gauss_legendre(int n) {
    MpRule m = gauss_legendre_mp(n, 64);
    Rule r;
    for (int i = 0; i < n; ++i) {
        r.x.push_back(m.x[static_cast<size_t>(i)].to_double());
        r.w.push_back(m.w[static_cast<size_t>(i)].to_double());
    }
    return r;
}

Rule gauss_rule(const RecurrenceCoefficients& c, int n) {
    if (n < 1 || static_cast<size_t>(n) > c.size() + 1 || static_cast<size_t>(n) > c.a.size())
        throw InvalidArgument("gauss_rule: not enough recurrence coefficients");
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag(i) = c.a[static_cast<size_t>(i)];
    for (int i = 0; i + 1 < n; ++i) sub(i) = c.b[static_cast<size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw SolverError("gauss_rule: tridiagonal eigensolver failed");
    // Christoffel weights 1 / sum_k psi_k(x_i)^2 keep full relative accuracy where the first
    // eigenvector component underflows.
    Rule r;
    for (int i = 0; i < n; ++i) {
        const double x = es.eigenvalues()(i);
        const std::vector<double> p = evaluate(c, x, n - 1);
        double s = 0.0;
        for (double v : p) s += v * v;
        r.x.push_back(x);
        r.w.push_back(1.0 / s);
    }
    return r;
}

}  // namespace gosc::quad
