#include "gosc/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "gosc/errors.hpp"
#include "gosc/quadrature.hpp"

namespace gosc {

std::string to_string(Provenance p) {
    return p == Provenance::ClosedForm ? "closed-form" : "solved-from-moments";
}

RecurrenceCoefficients::RecurrenceCoefficients(std::vector<double> a_, std::vector<double> b_, Provenance p)
    : a(std::move(a_)), b(std::move(b_)), n_max(static_cast<int>(b.size()) - 1), provenance(p) {
    validate();
}

bool RecurrenceCoefficients::symmetric(double tol) const {
    return std::all_of(a.begin(), a.end(), [tol](double v) { return std::abs(v) <= tol; });
}

void RecurrenceCoefficients::validate() const {
    if (a.size() != b.size()) throw InvalidArgument("recurrence: a and b differ in length");
    for (size_t i = 0; i < b.size(); ++i) {
        if (!(b[i] > 0) || !std::isfinite(b[i]))
            throw InvalidArgument("recurrence: b_" + std::to_string(i) + " must be positive");
        if (!std::isfinite(a[i])) throw InvalidArgument("recurrence: a_" + std::to_string(i) + " not finite");
    }
}

namespace {

void check_range(const RecurrenceCoefficients& c, int n) {
    if (n < 0 || static_cast<size_t>(n) > c.size())
        throw InvalidArgument("evaluate: index " + std::to_string(n) + " beyond n_max + 1");
}

}  // namespace

std::vector<double> evaluate(const RecurrenceCoefficients& c, double x, int n) {
    check_range(c, n);
    std::vector<double> p(static_cast<size_t>(n) + 1);
    p[0] = 1.0;
    for (int k = 0; k < n; ++k) {
        const size_t i = static_cast<size_t>(k);
        const double prev = k > 0 ? c.b[i - 1] * p[i - 1] : 0.0;
        p[i + 1] = ((x - c.a[i]) * p[i] - prev) / c.b[i];
    }
    return p;
}

PolyValues evaluate_all(const RecurrenceCoefficients& c, double x, int n) {
    check_range(c, n);
    const size_t m = static_cast<size_t>(n) + 1;
    PolyValues v{std::vector<double>(m), std::vector<double>(m), std::vector<double>(m)};
    v.psi[0] = 1.0;
    v.dpsi[0] = 0.0;
    v.d2psi[0] = 0.0;
    for (int k = 0; k < n; ++k) {
        const size_t i = static_cast<size_t>(k);
        const double bp = k > 0 ? c.b[i - 1] : 0.0;
        const double p1 = k > 0 ? v.psi[i - 1] : 0.0;
        const double d1 = k > 0 ? v.dpsi[i - 1] : 0.0;
        const double s1 = k > 0 ? v.d2psi[i - 1] : 0.0;
        const double xa = x - c.a[i];
        v.psi[i + 1] = (xa * v.psi[i] - bp * p1) / c.b[i];
        v.dpsi[i + 1] = (v.psi[i] + xa * v.dpsi[i] - bp * d1) / c.b[i];
        v.d2psi[i + 1] = (2.0 * v.dpsi[i] + xa * v.d2psi[i] - bp * s1) / c.b[i];
    }
    return v;
}

std::vector<double> evaluate_derivative(const RecurrenceCoefficients& c, double x, int n) {
    return evaluate_all(c, x, n).dpsi;
}

std::vector<double> evaluate_second_derivative(const RecurrenceCoefficients& c, double x, int n) {
    return evaluate_all(c, x, n).d2psi;
}

double recurrence_residual(const RecurrenceCoefficients& c, double x, int n_top) {
    const std::vector<double> p = evaluate(c, x, n_top);
    double worst = 0.0;
    for (int k = 0; k < n_top; ++k) {
        const size_t i = static_cast<size_t>(k);
        const double prev = k > 0 ? c.b[i - 1] * p[i - 1] : 0.0;
        const double next = c.b[i] * p[i + 1];
        const double lhs = x * p[i];
        const double scale = std::max({1.0, std::abs(lhs), std::abs(next), std::abs(prev), std::abs(c.a[i] * p[i])});
        worst = std::max(worst, std::abs(lhs - next - c.a[i] * p[i] - prev) / scale);
    }
    return worst;
}

namespace {

void accumulate(const BasisFunction& basis, int n, double x, double w, Eigen::MatrixXd& G) {
    const std::vector<double> u = basis(x);
    for (int i = 0; i < n; ++i) {
        const double wi = w * u[static_cast<size_t>(i)];
        for (int j = 0; j <= i; ++j) G(i, j) += wi * u[static_cast<size_t>(j)];
    }
}

void symmetrize_lower(Eigen::MatrixXd& G) {
    for (int i = 0; i < G.rows(); ++i)
        for (int j = i + 1; j < G.cols(); ++j) G(i, j) = G(j, i);
}

Eigen::MatrixXd gram_level(const BasisFunction& basis, const MeasureSpec& m, int n, int level, double& mass) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    mass = 0.0;
    for (const quad::Node& nd : quad::de_nodes(m.lower, m.upper, level)) {
        const double w = nd.w * weight_density(m, nd.x, nd.dl, nd.dr);
        if (w == 0.0 || !std::isfinite(w)) continue;
        mass += w;
        accumulate(basis, n, nd.x, w, G);
    }
    symmetrize_lower(G);
    return G;
}

Eigen::MatrixXd gram_tabulated(const BasisFunction& basis, const MeasureSpec& m, const TabulatedWeight& t, int n,
                               int points, double& mass) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    const quad::Rule gl = quad::gauss_legendre(points);
    mass = 0.0;
    const double scale = m.normalization.value_or(1.0);
    for (size_t k = 0; k + 1 < t.x.size(); ++k) {
        const double lo = std::max(t.x[k], m.lower), hi = std::min(t.x[k + 1], m.upper);
        if (!(hi > lo)) continue;
        const double c = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (size_t q = 0; q < gl.x.size(); ++q) {
            const double x = mid + c * gl.x[q];
            const double w = c * gl.w[q] * scale * tabulated_value(t, x);
            mass += w;
            accumulate(basis, n, x, w, G);
        }
    }
    symmetrize_lower(G);
    return G;
}

}  // namespace

Eigen::MatrixXd gram_matrix(const BasisFunction& basis, const MeasureSpec& m, int n, GramOptions opt) {
    if (n < 1) throw InvalidArgument("gram_matrix: n must be positive");
    m.validate();
    const bool autonorm = !m.normalization.has_value();
    if (auto* d = std::get_if<DiscreteWeight>(&m.weight)) {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
        double mass = 0.0;
        const double scale = m.normalization.value_or(1.0);
        for (size_t k = 0; k < d->atoms.size(); ++k) {
            if (d->atoms[k] < m.lower || d->atoms[k] > m.upper) continue;
            mass += scale * d->masses[k];
            accumulate(basis, n, d->atoms[k], scale * d->masses[k], G);
        }
        symmetrize_lower(G);
        return autonorm ? Eigen::MatrixXd(G / mass) : G;
    }
    if (auto* t = std::get_if<TabulatedWeight>(&m.weight)) {
        const int points = (t->order + 2 * n) / 2 + 2;
        double m1 = 0, m2 = 0;
        Eigen::MatrixXd G1 = gram_tabulated(basis, m, *t, n, points, m1);
        Eigen::MatrixXd G2 = gram_tabulated(basis, m, *t, n, points + 4, m2);
        if (autonorm) {
            G1 /= m1;
            G2 /= m2;
        }
        const double diff = (G1 - G2).cwiseAbs().maxCoeff();
        if (diff > opt.tolerance * std::max(1.0, G2.cwiseAbs().maxCoeff()))
            throw QuadratureError("gram_matrix: tabulated panels disagree by " + std::to_string(diff));
        return G2;
    }
    Eigen::MatrixXd prev;
    for (int level = opt.min_level; level <= opt.max_level; ++level) {
        double mass = 0.0;
        Eigen::MatrixXd G = gram_level(basis, m, n, level, mass);
        if (autonorm) G /= mass;
        if (level > opt.min_level) {
            const double diff = (G - prev).cwiseAbs().maxCoeff();
            if (diff <= opt.tolerance * std::max(1.0, G.cwiseAbs().maxCoeff())) return G;
        }
        prev = std::move(G);
    }
    throw QuadratureError("gram_matrix: quadrature did not converge by level " + std::to_string(opt.max_level));
}

Eigen::MatrixXd gram_matrix(const RecurrenceCoefficients& c, const MeasureSpec& m, int n, GramOptions opt) {
    if (n < 1 || static_cast<size_t>(n) > c.size() + 1) throw InvalidArgument("gram_matrix: n out of range");
    return gram_matrix([&](double x) { return evaluate(c, x, n - 1); }, m, n, opt);
}

std::vector<double> to_weighted(const RecurrenceCoefficients& c, const std::function<double(double)>& ground,
                                double x, int n) {
    std::vector<double> v = evaluate(c, x, n);
    const double g = ground(x);
    for (double& e : v) e *= g;
    return v;
}

WeightedSystem make_weighted_system(const RecurrenceCoefficients& c, const MeasureSpec& mu,
                                    std::function<double(double)> ground) {
    MeasureSpec nu = mu;
    MeasureSpec base = mu;
    auto g = ground;
    nu.weight = CustomWeight{nullptr,
                             [base, g](double x, double dl, double dr) {
                                 const double psi = g(x);
                                 return weight_density(base, x, dl, dr) / (psi * psi);
                             },
                             "weighted-target"};
    nu.normalization = 1.0;
    nu.symmetric = mu.symmetric;
    return WeightedSystem{c, std::move(ground), std::move(nu)};
}

void write_value_table(std::ostream& os, const RecurrenceCoefficients& c, const std::vector<double>& xs, int n) {
    os << "n,x,psi,dpsi\n";
    char buf[128];
    for (double x : xs) {
        const PolyValues v = evaluate_all(c, x, n);
        for (int k = 0; k <= n; ++k) {
            const size_t i = static_cast<size_t>(k);
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", k, x, v.psi[i], v.dpsi[i]);
            os << buf;
        }
    }
}

}  // namespace gosc
