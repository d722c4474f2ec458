#include "gosc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "gosc/errors.hpp"
#include "gosc/quadrature.hpp"

namespace gosc {

void KernelSpec::validate() const {
    if (std::abs(t) > 1.0 + 1e-15) throw InvalidArgument("kernel parameter must satisfy |t| <= 1");
    if (N < 1) throw InvalidArgument("kernel needs at least one term");
    if (static_cast<size_t>(N) > coeffs.size() + 1)
        throw InvalidArgument("kernel with " + std::to_string(N) + " terms needs n_max >= " + std::to_string(N - 2));
}

namespace {

std::vector<double> phi_values(const KernelSpec& s, double x, int n) {
    std::vector<double> v = evaluate(s.coeffs, x, n - 1);
    if (s.ground) {
        const double g = s.ground(x);
        for (double& e : v) e *= g;
    }
    return v;
}

}  // namespace

KernelValue poisson_kernel(const KernelSpec& spec, double x, double y) {
    spec.validate();
    const std::vector<double> px = phi_values(spec, x, spec.N), py = phi_values(spec, y, spec.N);
    KernelValue out;
    cplx tn(1.0, 0.0), sum(0.0, 0.0);
    double running = 0.0;
    for (int n = 0; n < spec.N; ++n) {
        const double p = px[static_cast<size_t>(n)] * py[static_cast<size_t>(n)];
        sum += tn * p;
        running = std::max(running, std::abs(p));
        tn *= spec.t;
    }
    out.value = sum;
    out.terms = spec.N;
    out.tail_estimate = std::pow(std::abs(spec.t), spec.N) * running;
    return out;
}

int kernel_terms_for(const KernelSpec& spec, double x, double y, double tol) {
    const int cap = static_cast<int>(spec.coeffs.size()) + 1;
    const std::vector<double> px = phi_values(spec, x, cap), py = phi_values(spec, y, cap);
    const double r = std::abs(spec.t);
    double running = 0.0;
    for (int n = 0; n < cap; ++n) {
        running = std::max(running, std::abs(px[static_cast<size_t>(n)] * py[static_cast<size_t>(n)]));
        if (std::pow(r, n + 1) * running < tol) return n + 1;
    }
    return cap;
}

double mehler_closed_form(double x, double y, double omega) {
    if (!(std::abs(omega) < 1.0)) throw InvalidArgument("Mehler closed form needs |omega| < 1");
    const double d = 1.0 - omega * omega;
    return std::exp((2.0 * x * y * omega - (x * x + y * y) * omega * omega) / d) / std::sqrt(d);
}

cplx mehler_closed_form(double x, double y, cplx omega) {
    if (std::abs(omega) > 1.0 + 1e-15) throw InvalidArgument("Mehler closed form needs |omega| <= 1");
    const cplx d = 1.0 - omega * omega;
    if (std::abs(d) < 1e-300) throw InvalidArgument("Mehler closed form is singular at omega^2 = 1");
    return std::exp((2.0 * x * y * omega - (x * x + y * y) * omega * omega) / d) / std::sqrt(d);
}

cplx mehler_weighted(double x, double y, cplx omega) {
    const double pref = std::exp(-0.5 * (x * x + y * y)) / std::sqrt(M_PI);
    return pref * mehler_closed_form(x, y, omega);
}

cplx hermite_fourier_kernel(double x, double y) {
    return std::exp(cplx(0.0, -x * y)) / std::sqrt(2.0 * M_PI);
}

double chebyshev_poisson_closed_form(double theta, double phi, double r) {
    if (!(std::abs(r) < 1.0)) throw InvalidArgument("Poisson kernel needs |r| < 1");
    auto P = [r](double a) { return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(a) + r * r); };
    return 0.5 * (P(theta - phi) + P(theta + phi));
}

FockOperator fourier_fock_matrix(cplx t, int N) {
    if (std::abs(std::abs(t) - 1.0) > 1e-12) throw InvalidArgument("Fourier Fock matrix needs |t| = 1");
    std::vector<cplx> d;
    cplx p(1.0, 0.0);
    for (int n = 0; n < N; ++n) {
        d.push_back(p);
        p *= t;
    }
    return diagonal_operator("F", d);
}

VerificationReport verify_intertwining(const RecurrenceCoefficients& c, int N, cplx t, double tol) {
    VerificationReport rep;
    rep.name = "intertwining";
    const FockOperator F = fourier_fock_matrix(t, N);
    const FockOperator Fi = fourier_fock_matrix(std::conj(t), N).relabel("F^-1");
    const FockOperator X = position_operator(c, N);
    const FockOperator Pa = momentum_operator(c, N, std::conj(t)), Pb = momentum_operator(c, N, t);
    const FockOperator Ha = hamiltonian(c, N, std::conj(t)), Hb = hamiltonian(c, N, t);
    auto add = [&](const std::string& id, const std::string& tag, const FockOperator& lhs, const FockOperator& rhs) {
        const double scale = std::max(1.0, valid_max_abs(rhs));
        VerificationItem& it = rep.add(id, tag, valid_residual(lhs, rhs) / scale, tol);
        if (!it.pass) it.failures = worst_entries(lhs, rhs);
    };
    add("intertwining.momentum_fourier", "fourier/intertwining", Pa * F, F * X);
    add("intertwining.position_fourier", "fourier/intertwining", X * F, F * Pb);
    add("intertwining.momentum_inverse", "fourier/intertwining", Pb * Fi, Fi * X);
    add("intertwining.position_inverse", "fourier/intertwining", X * Fi, Fi * Pa);
    add("intertwining.hamiltonian_fourier", "fourier/hamiltonian", Ha * F, F * Hb);
    add("intertwining.hamiltonian_inverse", "fourier/hamiltonian", Hb * Fi, Fi * Ha);
    const FockOperator I = identity_operator(N);
    add("intertwining.fourier_unitary", "fourier/unitarity", F * F.adjoint(), I);
    add("intertwining.fourier_inverse", "fourier/unitarity", Fi * F, I);
    return rep;
}

KernelDiscretization discretize_kernel(const RecurrenceCoefficients& c, int G, cplx t, Direction dir,
                                       double gram_tol) {
    if (std::abs(t) > 1.0 + 1e-15) throw InvalidArgument("kernel parameter must satisfy |t| <= 1");
    const quad::Rule rule = quad::gauss_rule(c, G);
    Eigen::MatrixXd Psi(G, G);
    for (int j = 0; j < G; ++j) {
        const std::vector<double> v = evaluate(c, rule.x[static_cast<size_t>(j)], G - 1);
        for (int n = 0; n < G; ++n) Psi(j, n) = v[static_cast<size_t>(n)];
    }
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.w.data(), G);
    const Eigen::MatrixXd gram = Psi.transpose() * w.asDiagonal() * Psi;
    KernelDiscretization k;
    k.gram_residual = (gram - Eigen::MatrixXd::Identity(G, G)).cwiseAbs().maxCoeff();
    if (!(k.gram_residual <= gram_tol))
        throw QuadratureError("Gauss rule with " + std::to_string(G) +
                              " nodes does not resolve the basis: Gram residual " + std::to_string(k.gram_residual));
    k.t = dir == Direction::Direct ? t : std::conj(t);
    Eigen::VectorXcd tp(G);
    cplx p(1.0, 0.0);
    for (int n = 0; n < G; ++n) {
        tp(n) = p;
        p *= k.t;
    }
    k.matrix = Psi.cast<cplx>() * tp.asDiagonal() * (Psi.transpose() * w.asDiagonal()).cast<cplx>();
    k.nodes = rule.x;
    k.weights = rule.w;
    return k;
}

std::vector<cplx> kernel_transform(const KernelDiscretization& k, const std::vector<cplx>& f) {
    if (f.size() != k.nodes.size())
        throw DimensionMismatch("kernel_transform: " + std::to_string(f.size()) + " samples for " +
                                std::to_string(k.nodes.size()) + " nodes");
    const Eigen::VectorXcd v = k.matrix * Eigen::Map<const Eigen::VectorXcd>(f.data(), static_cast<long>(f.size()));
    return {v.data(), v.data() + v.size()};
}

double kernel_round_trip_error(const RecurrenceCoefficients& c, int G, cplx t, int m) {
    const KernelDiscretization fwd = discretize_kernel(c, G, t, Direction::Direct);
    const KernelDiscretization inv = discretize_kernel(c, G, t, Direction::Inverse);
    double worst = 0.0;
    for (int n = 0; n <= m; ++n) {
        std::vector<cplx> f;
        for (double x : fwd.nodes) f.emplace_back(evaluate(c, x, n)[static_cast<size_t>(n)], 0.0);
        const std::vector<cplx> back = kernel_transform(inv, kernel_transform(fwd, f));
        double num = 0.0, den = 0.0;
        for (size_t j = 0; j < f.size(); ++j) {
            num += fwd.weights[j] * std::norm(back[j] - f[j]);
            den += fwd.weights[j] * std::norm(f[j]);
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    return worst;
}

void write_kernel_grid(std::ostream& os, const KernelSpec& spec, const std::vector<double>& xs,
                       const std::vector<double>& ys) {
    os << "x,y,re,im\n";
    char buf[128];
    for (double x : xs)
        for (double y : ys) {
            const cplx v = poisson_kernel(spec, x, y).value;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x, y, v.real(), v.imag());
            os << buf;
        }
}

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> v;
    for (int i = 0; i < points; ++i) v.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
    return v;
}

}  // namespace gosc
