#include "gosc/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gosc/errors.hpp"
#include "gosc/families.hpp"
#include "gosc/moments.hpp"

namespace gosc {

MeasureSplit split_measure(const MeasureSpec& m) {
    m.validate();
    if (!m.symmetric) throw InvalidArgument("split_measure needs a symmetric measure, got " + m.describe());
    if (!(m.lower < 0.0 && m.upper > 0.0))
        throw InvalidArgument("split_measure needs a support containing both half-lines");
    if (m.is_discrete()) {
        for (double a : std::get<DiscreteWeight>(m.weight).atoms)
            if (std::abs(a) < 1e-15) throw InvalidArgument("split_measure: the measure has an atom at zero");
    }
    MeasureSplit s;
    s.symmetric = m;
    s.plus = m.restricted(0.0, m.upper, 2.0);
    s.minus = m.restricted(m.lower, 0.0, 2.0);
    // By symmetry each half carries half the mass, so auto-normalized halves are 2 mu_+-.
    if (!m.normalization && !m.is_discrete()) {
        s.plus.normalization.reset();
        s.minus.normalization.reset();
    }
    return s;
}

namespace {

NonsymmetricSolution solve_half(const MeasureSpec& m, int n_max, long bits, const char* side, MomentMethod method) {
    MomentOptions opt;
    opt.method = method;
    const MomentSequence ms = compute_moments(m, 2 * n_max + 2, bits, opt);
    try {
        return solve_nonsymmetric_recurrence(ms, n_max);
    } catch (const NonpositivePivot& e) {
        throw NonpositivePivot(e.order(), std::string(side) + " half-line solve failed at order " +
                                              std::to_string(e.order()) + ": " + e.what());
    }
}

// Interior sample points of [lo, hi] (a finite window for infinite ends), excluding 0.
std::vector<double> sample_points(double lo, double hi, int n, int points) {
    const double window = 4.0 + std::sqrt(2.0 * n + 1.0);
    const double l = std::isfinite(lo) ? lo : -window;
    const double h = std::isfinite(hi) ? hi : window;
    std::vector<double> xs;
    for (int i = 1; i <= points; ++i) {
        const double x = l + (h - l) * i / (points + 1);
        if (std::abs(x) > 1e-12) xs.push_back(x);
    }
    return xs;
}

double gram_deviation(const Eigen::MatrixXd& g, double target = 1.0) {
    return (g - target * Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

// Monomial coefficients (row k, degree d) of the orthonormalization of psi_0..psi_{n-1} under m.
std::vector<std::vector<mp::Real>> orthonormalize_restricted(const RecurrenceCoefficients& c, const MeasureSpec& m,
                                                             int n, long bits) {
    const MomentSequence ms = compute_moments(m, 2 * n - 2, bits);
    using Mat = std::vector<std::vector<mp::Real>>;
    const mp::Real zero(0.0, bits);
    Mat C(static_cast<size_t>(n), std::vector<mp::Real>(static_cast<size_t>(n), zero));
    C[0][0] = mp::Real(1.0, bits);
    for (int k = 0; k + 1 < n; ++k) {
        const size_t K = static_cast<size_t>(k);
        for (int d = 0; d <= k + 1; ++d) {
            const size_t D = static_cast<size_t>(d);
            mp::Real v = (d > 0 ? C[K][D - 1] : zero) - C[K][D] * c.a[K];
            if (k > 0) v -= C[K - 1][D] * c.b[K - 1];
            C[K + 1][D] = v / c.b[K];
        }
    }
    Mat G(static_cast<size_t>(n), std::vector<mp::Real>(static_cast<size_t>(n), zero));
    for (size_t i = 0; i < static_cast<size_t>(n); ++i)
        for (size_t j = 0; j <= i; ++j) {
            mp::Real acc = zero;
            for (size_t p = 0; p <= i; ++p)
                for (size_t q = 0; q <= j; ++q) acc += C[i][p] * C[j][q] * ms.values[p + q];
            G[i][j] = acc;
            G[j][i] = acc;
        }
    Mat L(static_cast<size_t>(n), std::vector<mp::Real>(static_cast<size_t>(n), zero));
    for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
        for (size_t j = 0; j <= i; ++j) {
            mp::Real v = G[i][j];
            for (size_t k = 0; k < j; ++k) v -= L[i][k] * L[j][k];
            if (i == j) {
                if (!(v > 0)) throw NonpositivePivot(static_cast<int>(i), "restricted Gram matrix is not positive definite");
                L[i][i] = mp::sqrt(v);
            } else {
                L[i][j] = v / L[j][j];
            }
        }
    }
    Mat U(static_cast<size_t>(n), std::vector<mp::Real>(static_cast<size_t>(n), zero));
    for (size_t i = 0; i < static_cast<size_t>(n); ++i)
        for (size_t d = 0; d < static_cast<size_t>(n); ++d) {
            mp::Real v = C[i][d];
            for (size_t k = 0; k < i; ++k) v -= L[i][k] * U[k][d];
            U[i][d] = v / L[i][i];
        }
    return U;
}

}  // namespace

HalfLineSystems half_line_systems(const MeasureSplit& s, int n_max, long bits) {
    if (n_max < 0) throw InvalidArgument("half_line_systems needs n_max >= 0");
    HalfLineSystems h;
    h.precision_bits = 2 * bits;
    // The minus side always takes quadrature moments so that the cross-check does not reuse a
    // reflected closed form.
    const NonsymmetricSolution p = solve_half(s.plus, n_max, h.precision_bits, "plus", MomentMethod::Auto);
    const NonsymmetricSolution m = solve_half(s.minus, n_max, h.precision_bits, "minus", MomentMethod::Quadrature);
    h.plus = p.coeffs;
    h.minus = m.coeffs;
    std::vector<double> ra;
    for (double a : h.plus.a) ra.push_back(-a);
    h.minus_reflected = RecurrenceCoefficients(ra, h.plus.b, Provenance::SolvedFromMoments);
    for (size_t n = 0; n < h.plus.size(); ++n) {
        h.diagonal_mismatch = std::max(h.diagonal_mismatch, std::abs(h.minus.a[n] + h.plus.a[n]));
        h.b_mismatch = std::max(h.b_mismatch, std::abs(h.minus.b[n] - h.plus.b[n]));
    }
    return h;
}

RecurrenceCoefficients symmetric_system(const MeasureSplit& s, int n_max, long bits) {
    if (s.symmetric.is_family()) return family_coefficients(std::get<FamilyWeight>(s.symmetric.weight).family, n_max);
    const MomentSequence ms = compute_moments(s.symmetric, 2 * n_max + 2, bits);
    return solve_symmetric_recurrence(ms, n_max).coefficients();
}

std::vector<double> combined_values(const HalfLineSystems& h, double x, int n, double scale) {
    std::vector<double> v = evaluate(x >= 0.0 ? h.plus : h.minus, x, n);
    for (double& e : v) e *= scale;
    return v;
}

VerificationReport verify_combination(const MeasureSplit& s, const HalfLineSystems& h,
                                      const RecurrenceCoefficients& sym, int n_max, double tol) {
    if (static_cast<int>(h.plus.size()) < n_max + 1 || static_cast<int>(sym.size()) < n_max + 1)
        throw InvalidArgument("verify_combination: systems must be solved to n_max = " + std::to_string(n_max));
    VerificationReport rep;
    rep.name = "split";
    const int n = n_max + 1;

    // Integral over mu_s = mu_+ + mu_- of the direct-sum functions, one half-line at a time.
    const Eigen::MatrixXd gp = gram_matrix(h.plus, s.plus, n), gm = gram_matrix(h.minus, s.minus, n);
    const Eigen::MatrixXd combined = 0.5 * gp + 0.5 * gm;
    rep.add("split.gram_combined", "splitting/combination", gram_deviation(combined), tol, ItemKind::Check,
            Compare::AtMost, "direct sum psi+ on x > 0, psi- on x < 0, under mu_s");
    rep.add("split.gram_combined_half_prefactor", "splitting/combination", gram_deviation(0.25 * combined), tol,
            ItemKind::Informational, Compare::AtMost, "with the 1/2 prefactor the Gram matrix is I/4");

    std::vector<int> even, odd;
    for (int k = 0; k <= n_max; ++k) (k % 2 == 0 ? even : odd).push_back(k);
    auto sub_family = [&](const std::vector<int>& idx) {
        return BasisFunction([&sym, idx, n_max](double x) {
            const std::vector<double> v = evaluate(sym, x, n_max);
            std::vector<double> out;
            for (int k : idx) out.push_back(v[static_cast<size_t>(k)]);
            return out;
        });
    };
    rep.add("split.gram_even_plus", "splitting/sub-family", gram_deviation(gram_matrix(sub_family(even), s.plus,
                                                                                       static_cast<int>(even.size()))),
            tol, ItemKind::Check, Compare::AtMost, "psi_{2l} of the symmetric system under 2 mu_+");
    if (!odd.empty())
        rep.add("split.gram_odd_minus", "splitting/sub-family",
                gram_deviation(gram_matrix(sub_family(odd), s.minus, static_cast<int>(odd.size()))), tol,
                ItemKind::Check, Compare::AtMost, "psi_{2l+1} of the symmetric system under 2 mu_-");

    rep.add("split.minus_diagonal", "splitting/half-line", h.diagonal_mismatch, 1e-10, ItemKind::Check,
            Compare::AtMost, "max |a-_n + a+_n| between independent solves");
    rep.add("split.b_plus_minus", "splitting/half-line", h.b_mismatch, 1e-10, ItemKind::Check, Compare::AtMost,
            "max |b-_n - b+_n| between independent solves");

    double refl = 0.0;
    for (double x : sample_points(s.minus.lower, 0.0, n_max, 64)) {
        const std::vector<double> vm = evaluate(h.minus, x, n_max), vp = evaluate(h.plus, -x, n_max);
        for (int k = 0; k <= n_max; ++k) {
            const double r = (k % 2 == 0 ? 1.0 : -1.0) * vp[static_cast<size_t>(k)];
            refl = std::max(refl, std::abs(vm[static_cast<size_t>(k)] - r) / std::max(1.0, std::abs(r)));
        }
    }
    rep.add("split.reflection", "splitting/half-line", refl, 1e-10, ItemKind::Check, Compare::AtMost,
            "psi-_n(x) = (-1)^n psi+_n(-x)");

    // Recurrence with zero diagonal and b^a, applied to the direct-sum functions.
    double rec = 0.0;
    for (double x : sample_points(s.symmetric.lower, s.symmetric.upper, n_max, 64)) {
        const std::vector<double> u = combined_values(h, x, n_max + 1);
        for (int k = 0; k <= n_max; ++k) {
            const size_t i = static_cast<size_t>(k);
            const double lhs = x * u[i];
            const double rhs = h.plus.b[i] * u[i + 1] + (k > 0 ? h.plus.b[i - 1] * u[i - 1] : 0.0);
            rec = std::max(rec, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    rep.add("split.combined_recurrence", "splitting/combination", rec, 1e-9, ItemKind::Informational,
            Compare::AtMost, "direct-sum functions carry the extra term sign(x) a^a_n psi_n");

    double bdiff = 0.0;
    for (int k = 0; k <= n_max; ++k)
        bdiff = std::max(bdiff, std::abs(sym.b[static_cast<size_t>(k)] - h.plus.b[static_cast<size_t>(k)]));
    rep.add("split.b_match", "splitting/combination", bdiff, 1e-9, ItemKind::Informational, Compare::AtMost,
            "symmetric b_n of mu_s versus half-line b^a_n");

    const int K = 2 * n_max;
    const long bits = std::max<long>(h.precision_bits, 128);
    const std::vector<double> ms = compute_moments(s.symmetric, K, bits).to_double();
    const std::vector<double> mp = compute_moments(s.plus, K, bits).to_double();
    const std::vector<double> mm = compute_moments(s.minus, K, bits).to_double();
    double add = 0.0, refl_m = 0.0;
    for (int k = 0; k <= K; ++k) {
        const size_t i = static_cast<size_t>(k);
        const double scale = std::max(1.0, std::abs(ms[i]));
        add = std::max(add, std::abs(ms[i] - 0.5 * (mp[i] + mm[i])) / scale);
        refl_m = std::max(refl_m, std::abs(mm[i] - (k % 2 == 0 ? 1.0 : -1.0) * mp[i]) / std::max(1.0, std::abs(mp[i])));
    }
    rep.add("split.moment_additivity", "splitting/measure", add, 1e-12, ItemKind::Check, Compare::AtMost,
            "mu_s moments against the halves of 2 mu_+ and 2 mu_-");
    rep.add("split.moment_reflection", "splitting/measure", refl_m, 1e-12, ItemKind::Check, Compare::AtMost,
            "moments of 2 mu_- equal (-1)^k times those of 2 mu_+");

    std::vector<double> zeros(static_cast<size_t>(n_max + 1), 0.0);
    const std::vector<double> ws = walk_sums(zeros, h.plus.b, K);
    double walk = 0.0;
    for (int k = 0; k <= K; ++k)
        walk = std::max(walk, std::abs(ws[static_cast<size_t>(k)] - ms[static_cast<size_t>(k)]) /
                                  std::max(1.0, std::abs(ms[static_cast<size_t>(k)])));
    rep.add("split.walk_sums", "splitting/combination", walk, 1e-9, ItemKind::Informational, Compare::AtMost,
            "Jacobi matrix (0, b^a) against the moments of mu_s");

    // Gram-Schmidt of the symmetric system restricted to the positive half-line, carried out on
    // monomial coefficients with the Hankel matrix of 2 mu_+ in extended precision.
    const std::vector<std::vector<mp::Real>> U = orthonormalize_restricted(sym, s.plus, n, bits);
    double gs = 0.0;
    for (double x : sample_points(0.0, s.plus.upper, n_max, 64)) {
        const std::vector<double> vp = evaluate(h.plus, x, n_max);
        const mp::Real xm(x, bits);
        for (int k = 0; k < n; ++k) {
            mp::Real acc(0.0, bits);
            for (int d = k; d >= 0; --d) acc = acc * xm + U[static_cast<size_t>(k)][static_cast<size_t>(d)];
            const double u = acc.to_double(), ref = vp[static_cast<size_t>(k)];
            gs = std::max(gs, std::abs(u - ref) / std::max(1.0, std::abs(ref)));
        }
    }
    rep.add("split.gram_schmidt_fallback", "splitting/orthogonalization", gs, tol, ItemKind::Check, Compare::AtMost,
            "orthonormalized restriction of the symmetric system against the half-line solve");
    return rep;
}

}  // namespace gosc
