#include "gosc/suites.hpp"

#include <algorithm>
#include <cmath>

#include "gosc/errors.hpp"
#include "gosc/families.hpp"
#include "gosc/kernel.hpp"
#include "gosc/moments.hpp"
#include "gosc/splitting.hpp"

namespace gosc {

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"moments", "hamiltonian", "algebra", "intertwining", "kernel", "ode",
                                                "differential", "identities", "heisenberg", "su2", "split", "all"};
    return names;
}

bool is_suite(const std::string& name) {
    const auto& n = suite_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

double rel(double v, double ref) { return std::abs(v - ref) / std::max(1.0, std::abs(ref)); }

VerificationReport moments_suite(const SuiteConfig& cfg) {
    VerificationReport rep;
    const FamilySpec& f = cfg.family;
    const int n = std::min(cfg.n_max, 12);
    const RecurrenceCoefficients ref = family_coefficients(f, n);
    MomentOptions quad_opt;
    quad_opt.method = MomentMethod::Quadrature;
    const MomentSequence ms = compute_moments(measure_for(f), 2 * n + 2, cfg.precision_bits, quad_opt);
    double eb = 0.0, ea = 0.0;
    if (f.symmetric()) {
        const RecurrenceCoefficients c = solve_symmetric_recurrence(ms, n).coefficients();
        for (int k = 0; k <= n; ++k)
            eb = std::max(eb, std::abs(c.b[static_cast<size_t>(k)] / ref.b[static_cast<size_t>(k)] - 1.0));
    } else {
        const RecurrenceCoefficients c = solve_nonsymmetric_recurrence(ms, n).coeffs;
        for (int k = 0; k <= n; ++k) {
            const size_t i = static_cast<size_t>(k);
            eb = std::max(eb, std::abs(c.b[i] / ref.b[i] - 1.0));
            ea = std::max(ea, rel(c.a[i], ref.a[i]));
        }
        rep.add("moments.roundtrip_a", "moments/recurrence", ea, 1e-9, ItemKind::Check, Compare::AtMost,
                "quadrature moments, n <= " + std::to_string(n));
    }
    rep.add("moments.roundtrip_b", "moments/recurrence", eb, 1e-9, ItemKind::Check, Compare::AtMost,
            "quadrature moments, n <= " + std::to_string(n) + ", relative error");
    rep.add("moments.hankel_positive", "moments/determinacy", hankel_positive(ms, n + 1) ? 0.0 : 1.0, 0.5);
    if (has_closed_form_moments(measure_for(f))) {
        const MomentSequence cf = closed_form_moments(f, 2 * n + 2, cfg.precision_bits);
        double d = 0.0;
        for (int k = 0; k <= 2 * n + 2; ++k) {
            const mp::Real diff = mp::abs(cf.values[static_cast<size_t>(k)] - ms.values[static_cast<size_t>(k)]);
            const mp::Real scale = mp::max(mp::abs(cf.values[static_cast<size_t>(k)]), mp::Real(1.0, cfg.precision_bits));
            d = std::max(d, (diff / scale).to_double());
        }
        rep.add("moments.closed_vs_quadrature", "moments/quadrature", d, 1e-30);
    }
    return rep;
}

VerificationReport hamiltonian_suite(const SuiteConfig& cfg) {
    VerificationReport rep;
    const FamilySpec& f = cfg.family;
    const int N = cfg.dim;
    const RecurrenceCoefficients c = family_coefficients(f, N);
    const std::vector<double> lev = energy_levels(c, N);
    const bool distinguished = std::abs(std::abs(cfg.t.imag()) - 1.0) < 1e-12;
    FockOperator H;
    std::string form;
    if (f.symmetric()) {
        H = hamiltonian(c, N, cfg.t);
        form = "H(t)";
    } else {
        H = tilde_operators(c, N).H;
        form = "H~";
    }
    const ItemKind diag_kind = (f.symmetric() && !distinguished) ? ItemKind::ExpectedFail : ItemKind::Check;
    rep.add("hamiltonian.offdiagonal", "hamiltonian/diagonality", valid_offdiagonal(H), 1e-10, diag_kind,
            Compare::AtMost, form + " on valid columns");
    double d = 0.0;
    for (int n = 0; n <= H.valid_cols; ++n)
        d = std::max(d, rel(H(n, n).real(), lev[static_cast<size_t>(n)]) + std::abs(H(n, n).imag()));
    rep.add("hamiltonian.diagonal", "hamiltonian/spectrum", d, 1e-12, ItemKind::Check, Compare::AtMost,
            "diagonal against 2(b_{n-1}^2 + b_n^2)");
    if (f.symmetric() && !distinguished) {
        const cplx expect = (1.0 + std::conj(cfg.t) * std::conj(cfg.t)) * c.b[0] * c.b[1];
        rep.add("hamiltonian.entry_2_0", "hamiltonian/negative-case", std::abs(H(2, 0) - expect), 1e-14,
                ItemKind::Check, Compare::AtMost, "H(2,0) = (1 + conj(t)^2) b_0 b_1");
    }
    if (f.tag == FamilyTag::Hermite) {
        double e = 0.0;
        for (int n = 0; n < N; ++n) e = std::max(e, rel(lev[static_cast<size_t>(n)], 2.0 * n + 1.0));
        rep.add("hamiltonian.hermite_levels", "hamiltonian/spectrum", e, 1e-12, ItemKind::Check, Compare::AtMost,
                "lambda_n = 2n + 1");
    }
    if (f.tag == FamilyTag::Legendre)
        rep.add("hamiltonian.legendre_ground", "hamiltonian/spectrum", std::abs(lev[0] - 2.0 / 3.0), 1e-15);
    if (f.tag == FamilyTag::ChebyshevT || f.tag == FamilyTag::ChebyshevU) {
        double e = 0.0;
        for (int n = 0; n < N; ++n) e = std::max(e, std::abs(lev[static_cast<size_t>(n)] - (n == 0 ? 0.5 : 1.0)));
        const bool t_kind = f.tag == FamilyTag::ChebyshevT;
        rep.add("hamiltonian.chebyshev_printed_levels", "hamiltonian/spectrum", e, 1e-12,
                t_kind ? ItemKind::Informational : ItemKind::Check, Compare::AtMost,
                t_kind ? "printed (1/2, 1, 1, ...) assumes b_0 = 1/2; the orthonormal system has b_0 = 1/sqrt2"
                       : "lambda = (1/2, 1, 1, ...)");
    }
    return rep;
}

VerificationReport algebra_suite(const SuiteConfig& cfg) {
    VerificationReport rep;
    const FamilySpec& f = cfg.family;
    if (!f.symmetric()) return rep;
    const RecurrenceCoefficients c = family_coefficients(f, cfg.dim);
    std::optional<AlgebraRelation> relation;
    if (f.tag == FamilyTag::Hermite) relation = AlgebraRelation{1.0, [](int) { return 0.5; }};
    rep.append(verify_oscillator_algebra(c, cfg.dim, relation));
    const double q = cfg.q;
    const RecurrenceCoefficients cq = deformation_coefficients(DeformationFunction::q_bracket(q), cfg.dim);
    VerificationReport qr =
        verify_oscillator_algebra(cq, cfg.dim, AlgebraRelation{q, [q](int n) { return 0.5 * std::pow(q, -n); }});
    rep.append(qr, "q_oscillator.");
    return rep;
}

VerificationReport intertwining_suite(const SuiteConfig& cfg) {
    VerificationReport rep;
    const RecurrenceCoefficients c = family_coefficients(cfg.family, 40);
    rep.append(verify_intertwining(c, 32, cplx(0.0, -1.0)));
    rep.add("intertwining.kernel_round_trip", "fourier/kernel", kernel_round_trip_error(c, 40, cplx(0.0, -1.0), 5),
            1e-9, ItemKind::Check, Compare::AtMost, "span(phi_0..phi_5), 40-node Gauss rule");
    return rep;
}

VerificationReport kernel_suite(const SuiteConfig& cfg) {
    VerificationReport rep;
    const FamilySpec& f = cfg.family;
    const std::vector<double> g = linspace(-2.0, 2.0, 11);
    if (f.tag == FamilyTag::Hermite) {
        KernelSpec ks{family_coefficients(f, 200), {}, 0.0, 200};
        for (double w : {0.3, 0.6, 0.9}) {
            ks.t = w;
            double num = 0.0, den = 0.0;
            for (double x : g)
                for (double y : g) {
                    const double ref = mehler_closed_form(x, y, w);
                    num = std::max(num, std::abs(poisson_kernel(ks, x, y).value - ref));
                    den = std::max(den, std::abs(ref));
                }
            char id[64];
            std::snprintf(id, sizeof id, "kernel.mehler_omega_%.1f", w);
            rep.add(id, "kernel/mehler", num / den, 1e-8, ItemKind::Check, Compare::AtMost,
                    "200 terms, 11x11 grid on [-2,2]^2, normwise relative");
        }
        double e = 0.0;
        for (double x : g)
            for (double y : g)
                e = std::max(e, std::abs(mehler_weighted(x, y, cplx(0.0, -1.0)) - hermite_fourier_kernel(x, y)));
        rep.add("kernel.fourier_limit", "kernel/fourier", e, 1e-12, ItemKind::Check, Compare::AtMost,
                "weighted kernel at omega = -i against exp(-ixy)/sqrt(2pi)");
    }
    if (f.tag == FamilyTag::ChebyshevT) {
        const double r = 0.5;
        KernelSpec ks{family_coefficients(f, 120), {}, r, 120};
        double e = 0.0;
        for (double th : linspace(0.1, 3.0, 11))
            for (double ph : linspace(0.1, 3.0, 11))
                e = std::max(e, rel(poisson_kernel(ks, std::cos(th), std::cos(ph)).value.real(),
                                    chebyshev_poisson_closed_form(th, ph, r)));
        rep.add("kernel.chebyshev_poisson", "kernel/poisson", e, 1e-12, ItemKind::Check, Compare::AtMost,
                "r = 0.5, 120 terms");
    }
    const RecurrenceCoefficients c = family_coefficients(f, 40);
    KernelSpec k0{c, {}, 0.0, 40};
    double e0 = 0.0;
    for (double x : linspace(std::max(f.lower(), -2.0) + 0.05, std::min(f.upper(), 2.0) - 0.05, 7))
        for (double y : linspace(std::max(f.lower(), -2.0) + 0.05, std::min(f.upper(), 2.0) - 0.05, 7))
            e0 = std::max(e0, std::abs(poisson_kernel(k0, x, y).value - 1.0));
    rep.add("kernel.omega_zero", "kernel/poisson", e0, 1e-15, ItemKind::Check, Compare::AtMost,
            "K(x, y; 0) = phi_0 phi_0 = 1");
    return rep;
}

VerificationReport heisenberg_suite(const SuiteConfig& cfg) {
    VerificationReport rep;
    const RecurrenceCoefficients c = family_coefficients(cfg.family, 20);
    const bool canon = is_canonical_heisenberg(c.b, 1e-10);
    const bool expect = cfg.family.tag == FamilyTag::Hermite;
    rep.add("heisenberg.canonical", "heisenberg/criterion", canon == expect ? 0.0 : 1.0, 0.5, ItemKind::Check,
            Compare::AtMost, std::string("[X, P] canonical: ") + (canon ? "yes" : "no") + ", expected " +
                                 (expect ? "yes" : "no"));
    return rep;
}

VerificationReport su2_suite(const SuiteConfig& cfg) {
    VerificationReport rep;
    const DeformationFunction lin = DeformationFunction::linear();
    rep.append(verify_su_phi2(lin, 4, deformation_coefficients(lin, 4), 1e-12), "linear.");
    const DeformationFunction qb = DeformationFunction::q_bracket(cfg.q);
    rep.append(verify_su_phi2(qb, 8, deformation_coefficients(qb, 8), 1e-10), "q_bracket.");
    const std::vector<std::pair<double, double>> grid = square_grid(-2.0, 2.0, 20);
    const DeformationFunction sh = DeformationFunction::sinh_family(cfg.eta);
    rep.add("su2.functional_equation_sinh", "su2/functional-equation", check_functional_equation(sh, grid), 1e-13,
            ItemKind::Check, Compare::AtMost, sh.name() + " on a 20x20 grid of [-2,2]^2");
    const DeformationFunction sq = DeformationFunction::from([](double x) { return x * x; });
    rep.add("su2.functional_equation_control", "su2/functional-equation", check_functional_equation(sq, grid), 0.5,
            ItemKind::Check, Compare::Exceeds, "f(x) = x^2 must violate the equation");
    return rep;
}

VerificationReport split_suite(const SuiteConfig& cfg) {
    if (!cfg.family.symmetric()) return {};
    const MeasureSplit s = split_measure(measure_for(cfg.family));
    const HalfLineSystems h = half_line_systems(s, cfg.split_n_max, std::max<long>(cfg.precision_bits / 2, 64));
    return verify_combination(s, h, symmetric_system(s, cfg.split_n_max), cfg.split_n_max);
}

VerificationReport one_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "moments") return moments_suite(cfg);
    if (name == "hamiltonian") return hamiltonian_suite(cfg);
    if (name == "algebra") return algebra_suite(cfg);
    if (name == "intertwining") return intertwining_suite(cfg);
    if (name == "kernel") return kernel_suite(cfg);
    if (name == "ode") return verify_ode(cfg.family, 20, cfg.grid);
    if (name == "differential") return verify_differential_forms(cfg.family, 15);
    if (name == "identities") return verify_identities(cfg.family, cfg.n_max, cfg.dim);
    if (name == "heisenberg") return heisenberg_suite(cfg);
    if (name == "su2") return su2_suite(cfg);
    if (name == "split") return split_suite(cfg);
    throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace

VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (!is_suite(name)) throw InvalidArgument("unknown suite '" + name + "'");
    if (cfg.dim < 2) throw InvalidArgument("dimension must be at least 2");
    cfg.family.validate();
    VerificationReport rep;
    rep.name = name + ":" + cfg.family.label();
    if (name == "all") {
        for (const std::string& s : suite_names())
            if (s != "all") rep.append(one_suite(s, cfg));
    } else {
        rep.append(one_suite(name, cfg));
    }
    if (cfg.tolerance > 0.0)
        for (VerificationItem& it : rep.items)
            if (it.counts() && it.compare == Compare::AtMost) {
                it.tolerance = cfg.tolerance;
                it.pass = it.residual <= it.tolerance;
            }
    rep.sort_by_id();
    return rep;
}

}  // namespace gosc
