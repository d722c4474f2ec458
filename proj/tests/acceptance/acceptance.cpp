// Acceptance driver: one line per criterion.
//   gosc_acceptance [--known-red 2,5]
// Without --known-red the exit status is 0 iff every criterion passes. With it, the exit status is 0
// iff the failing set equals the listed set exactly.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gosc/families.hpp"
#include "gosc/fock.hpp"
#include "gosc/kernel.hpp"
#include "gosc/moments.hpp"
#include "gosc/splitting.hpp"

using namespace gosc;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [FAIL " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::vector<FamilySpec> symmetric_families() {
    std::vector<FamilySpec> out;
    for (const FamilySpec& f : sample_families())
        if (f.symmetric()) out.push_back(f);
    return out;
}

double item_residual(const VerificationReport& r, const std::string& id) {
    const VerificationItem* it = r.find(id);
    return it ? it->residual : INFINITY;
}

double rel_residual(const FockOperator& A, const FockOperator& B) {
    return valid_residual(A, B) / std::max(1.0, valid_max_abs(B));
}

// 1. moment round trip
void c1(Outcome& o) {
    const auto t0 = Clock::now();
    const int n = 12;
    MomentOptions opt;
    opt.method = MomentMethod::Quadrature;
    const MomentSequence ms = compute_moments(measure_for(FamilySpec::hermite()), 2 * n + 2, 256, opt);
    const SymmetricSolution s = solve_symmetric_recurrence(ms, n);
    double e = 0.0;
    for (int k = 0; k <= n; ++k) e = std::max(e, std::abs(s.b_double[size_t(k)] / std::sqrt((k + 1) / 2.0) - 1.0));
    const double dt = seconds_since(t0);
    o.detail << "max rel err " << sci(e) << " (tol 1e-9), " << dt << " s";
    o.require(e < 1e-9, "b_n");
    o.require(dt < 1.0, "runtime");
}

// 2. spectra
void c2(Outcome& o) {
    double off = 0.0, diag = 0.0;
    for (const FamilySpec& f : sample_families()) {
        const RecurrenceCoefficients c = family_coefficients(f, 64);
        const FockOperator H = f.symmetric() ? hamiltonian(c, 64, cplx(0.0, -1.0)) : tilde_operators(c, 64).H;
        const std::vector<double> lev = energy_levels(c, 64);
        double fo = valid_offdiagonal(H), fd = 0.0;
        for (int n = 0; n <= H.valid_cols; ++n)
            fd = std::max(fd, std::abs(H(n, n) - lev[size_t(n)]) / std::max(1.0, lev[size_t(n)]));
        off = std::max(off, fo);
        diag = std::max(diag, fd);
        o.require(fo < 1e-10, f.label() + " offdiagonal " + sci(fo));
        o.require(fd < 1e-12, f.label() + " diagonal " + sci(fd));
        if (f.tag == FamilyTag::Hermite) {
            double e = 0.0;
            for (int n = 0; n <= H.valid_cols; ++n) e = std::max(e, std::abs(H(n, n).real() - (2.0 * n + 1)) / (2.0 * n + 1));
            o.require(e < 1e-12, "hermite 2n+1 " + sci(e));
        }
        if (f.tag == FamilyTag::Legendre)
            o.require(std::abs(lev[0] - 2.0 / 3.0) < 1e-15, "legendre lambda_0 " + sci(std::abs(lev[0] - 2.0 / 3.0)));
        if (f.tag == FamilyTag::ChebyshevT || f.tag == FamilyTag::ChebyshevU) {
            double e = 0.0;
            for (int n = 0; n <= H.valid_cols; ++n) e = std::max(e, std::abs(H(n, n).real() - (n == 0 ? 0.5 : 1.0)));
            std::string what = f.label() + " levels (1/2, 1, 1, ...) off by " + sci(e);
            if (f.tag == FamilyTag::ChebyshevT)
                what += "; orthonormal T has b_0 = 1/sqrt2, hence levels 1, 3/2, 1, 1, ...";
            o.require(e < 1e-12, what);
        }
    }
    o.detail << " max offdiag " << sci(off) << ", max diag rel err " << sci(diag);
}

// 3. negative case
void c3(Outcome& o) {
    const FockOperator H = hamiltonian(family_coefficients(FamilySpec::hermite(), 64), 64, cplx(1.0, 0.0));
    const double e = std::abs(H(2, 0) - std::sqrt(2.0));
    o.detail << "|H(2,0) - sqrt2| = " << sci(e) << ", offdiag " << sci(valid_offdiagonal(H));
    o.require(e < 1e-14, "entry (2,0)");
    o.require(valid_offdiagonal(H) > 1.0, "non-diagonality");
}

// 4. oscillator algebra
void c4(Outcome& o) {
    double worst = 0.0;
    for (const FamilySpec& f : symmetric_families()) {
        const VerificationReport r = verify_oscillator_algebra(family_coefficients(f, 64), 64);
        for (const char* id : {"algebra.commutator_B", "algebra.number_raise", "algebra.number_lower"}) {
            const double v = item_residual(r, id);
            worst = std::max(worst, v);
            o.require(v < 1e-12, f.label() + " " + id + " " + sci(v));
        }
    }
    const VerificationReport h = verify_oscillator_algebra(family_coefficients(FamilySpec::hermite(), 64), 64,
                                                           AlgebraRelation{1.0, [](int) { return 0.5; }});
    const double eh = item_residual(h, "algebra.deformed_relation");
    const double q = 1.1;
    const VerificationReport qr = verify_oscillator_algebra(deformation_coefficients(DeformationFunction::q_bracket(q), 64), 64,
                                                            AlgebraRelation{q, [q](int n) { return 0.5 * std::pow(q, -n); }});
    const double eq = item_residual(qr, "algebra.deformed_relation");
    o.detail << "max commutator " << sci(worst) << ", hermite A=1 " << sci(eh) << ", q=1.1 A=q " << sci(eq);
    o.require(eh < 1e-12, "hermite relation");
    o.require(eq < 1e-12, "q relation");
}

// 5. Laguerre tilde commutator as printed
void c5(Outcome& o) {
    for (double al : {0.0, 0.5, 2.0}) {
        const RecurrenceCoefficients c = family_coefficients(FamilySpec::laguerre(al), 64);
        const Ladder L = tilde_ladder(c, 64);
        const FockOperator comm = commutator(L.minus, L.plus);
        const FockOperator Nn = number_operator(64), I = identity_operator(64);
        const double printed = rel_residual(comm, 2.0 * Nn + (al + 1.0) * I);
        const double doubled = rel_residual(comm, 4.0 * Nn + 2.0 * (al + 1.0) * I);
        o.detail << " alpha=" << al << ": printed " << sci(printed) << ", 4N+2(alpha+1)I " << sci(doubled) << ";";
        char a[16];
        std::snprintf(a, sizeof a, "%g", al);
        o.require(printed < 1e-10, std::string("printed 2N+(alpha+1)I at alpha=") + a);
        if (!(doubled < 1e-10)) o.detail << " (doubled form also fails)";
    }
    o.detail << " b_n^2 - b_{n-1}^2 = 2n + alpha + 1 makes the commutator 4N + 2(alpha+1)I";
}

// 6. Mehler kernel
void c6(Outcome& o) {
    const auto t0 = Clock::now();
    const KernelSpec ks{family_coefficients(FamilySpec::hermite(), 200), {}, 0.0, 200};
    const std::vector<double> g = linspace(-2.0, 2.0, 11);
    double normwise = 0.0, pointwise = 0.0;
    for (double w : {0.3, 0.6, 0.9}) {
        KernelSpec k = ks;
        k.t = w;
        double num = 0.0, den = 0.0;
        for (double x : g)
            for (double y : g) {
                const double ref = mehler_closed_form(x, y, w);
                const double d = std::abs(poisson_kernel(k, x, y).value - ref);
                num = std::max(num, d);
                den = std::max(den, std::abs(ref));
                pointwise = std::max(pointwise, d / std::abs(ref));
            }
        normwise = std::max(normwise, num / den);
    }
    const double dt = seconds_since(t0);
    o.detail << "normwise rel err " << sci(normwise) << " (tol 1e-8), pointwise " << sci(pointwise) << ", " << dt << " s";
    o.require(normwise < 1e-8, "kernel");
    o.require(dt < 1.0, "runtime");
}

// 7. intertwining
void c7(Outcome& o) {
    double worst = 0.0, trip = 0.0;
    for (const FamilySpec& f : symmetric_families()) {
        const RecurrenceCoefficients c = family_coefficients(f, 40);
        const VerificationReport r = verify_intertwining(c, 32, cplx(0.0, -1.0));
        for (const char* id : {"intertwining.momentum_fourier", "intertwining.position_fourier", "intertwining.momentum_inverse",
                               "intertwining.position_inverse", "intertwining.hamiltonian_fourier",
                               "intertwining.hamiltonian_inverse"}) {
            const double v = item_residual(r, id);
            worst = std::max(worst, v);
            o.require(v < 1e-12, f.label() + " " + id);
        }
        const double e = kernel_round_trip_error(c, 40, cplx(0.0, -1.0), 5);
        trip = std::max(trip, e);
        o.require(e < 1e-9, f.label() + " round trip " + sci(e));
    }
    o.detail << "max relation " << sci(worst) << ", round trip " << sci(trip);
}

// 8. ODE
void c8(Outcome& o) {
    double worst = 0.0;
    for (const FamilySpec& f : sample_families()) {
        const double v = item_residual(verify_ode(f, 20, 200), "ode.classical");
        worst = std::max(worst, v);
        o.require(v < 1e-8, f.label() + " " + sci(v));
    }
    o.detail << "max residual " << sci(worst);
}

// 9. differential forms
void c9(Outcome& o) {
    double worst = 0.0;
    int items = 0;
    for (const FamilySpec& f : sample_families()) {
        if (f.tag == FamilyTag::Hermite) continue;
        const VerificationReport r = verify_differential_forms(f, 15);
        for (const VerificationItem& it : r.items) {
            if (!it.counts()) continue;
            ++items;
            worst = std::max(worst, it.residual);
            o.require(it.residual < 1e-8, f.label() + " " + it.id + " " + sci(it.residual));
        }
    }
    o.detail << items << " forms, max residual " << sci(worst);
    o.require(items > 0, "no forms");
}

// 10. su_phi(2)
void c10(Outcome& o) {
    const DeformationFunction lin = DeformationFunction::linear();
    const VerificationReport a = verify_su_phi2(lin, 4, deformation_coefficients(lin, 4), 1e-12);
    const DeformationFunction qb = DeformationFunction::q_bracket(1.1);
    const VerificationReport b = verify_su_phi2(qb, 8, deformation_coefficients(qb, 8), 1e-10);
    const auto grid = square_grid(-2.0, 2.0, 20);
    const double fe = check_functional_equation(DeformationFunction::sinh_family(0.3), grid);
    const double ctrl = check_functional_equation(DeformationFunction::from([](double x) { return x * x; }), grid);
    o.detail << "linear " << (a.ok() ? "ok" : "violated") << ", q-bracket " << (b.ok() ? "ok" : "violated")
             << ", sinh functional eq " << sci(fe) << ", x^2 control " << sci(ctrl);
    o.require(a.ok(), "linear relations");
    o.require(b.ok(), "q-bracket relations");
    o.require(fe < 1e-13, "functional equation");
    o.require(ctrl > 0.5, "control");
}

// 11. Heisenberg criterion
void c11(Outcome& o) {
    std::string hits;
    for (const FamilySpec& f : sample_families()) {
        const RecurrenceCoefficients c = family_coefficients(f, 20);
        const bool canon = is_canonical_heisenberg(std::vector<double>(c.b.begin(), c.b.begin() + 21), 1e-10);
        if (canon) hits += " " + f.label();
        o.require(canon == (f.tag == FamilyTag::Hermite), f.label());
    }
    o.detail << "canonical:" << hits;
}

// 12. splitting
void c12(Outcome& o) {
    const MeasureSplit s = split_measure(measure_for(FamilySpec::legendre()));
    const HalfLineSystems h = half_line_systems(s, 8);
    const VerificationReport r = verify_combination(s, h, symmetric_system(s, 8), 8);
    for (const char* id : {"split.gram_combined", "split.gram_even_plus", "split.gram_odd_minus"}) {
        const double v = item_residual(r, id);
        o.detail << id << " " << sci(v) << ", ";
        o.require(v < 1e-8, id);
    }
    o.detail << "minus diagonal " << sci(h.diagonal_mismatch);
    o.require(h.diagonal_mismatch < 1e-10, "minus diagonal");
}

// 13. coefficient differences and the printed-level report
void c13(Outcome& o) {
    double worst = 0.0;
    int reports = 0, discrepancies = 0;
    for (const FamilySpec& f : sample_families()) {
        const VerificationReport r = verify_identities(f, 30, 64);
        if (f.tag == FamilyTag::Legendre || f.tag == FamilyTag::Gegenbauer || f.tag == FamilyTag::Laguerre) {
            const double v = item_residual(r, "identities.b_difference");
            worst = std::max(worst, v);
            o.require(v < 1e-12, f.label() + " b difference " + sci(v));
        }
        const VerificationItem* p = r.find("identities.energy_levels_printed");
        if (p) {
            ++reports;
            if (!p->pass) ++discrepancies;
        }
        o.require(p != nullptr, f.label() + " missing printed-level report");
    }
    o.detail << "max b difference " << sci(worst) << ", printed-level reports " << reports << " (" << discrepancies
             << " with discrepancies)";
}

// 14. full CLI run
void c14(Outcome& o) {
#ifdef GOSC_CLI_PATH
    const auto t0 = Clock::now();
    const std::string cmd = std::string("\"") + GOSC_CLI_PATH + "\" verify --suite all > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    const double dt = seconds_since(t0);
    const int code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    o.detail << "exit " << code << ", " << dt << " s";
    o.require(code == 0, "exit status");
    o.require(dt < 60.0, "runtime");
#else
    o.require(false, "command-line tool not built");
#endif
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.insert(std::stoi(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    bool have_known = false;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--known-red" && i + 1 < argc) {
            known = parse_list(argv[++i]);
            have_known = true;
        } else {
            std::fprintf(stderr, "usage: %s [--known-red i,j,...]\n", argv[0]);
            return 2;
        }
    }

    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"moment round trip", c1},     {"hamiltonian spectra", c2},  {"negative case t = 1", c3},
        {"oscillator algebra", c4},    {"laguerre commutator", c5},  {"mehler kernel", c6},
        {"fourier intertwining", c7},  {"ode equivalence", c8},      {"differential forms", c9},
        {"su_phi(2)", c10},            {"heisenberg criterion", c11}, {"splitting", c12},
        {"coefficient differences", c13}, {"cli verify --suite all", c14}};

    std::set<int> failed;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const int id = static_cast<int>(i) + 1;
        if (!o.pass) failed.insert(id);
        std::printf("criterion %2d %-26s %s  %s\n", id, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
        std::fflush(stdout);
    }

    std::printf("failed:");
    for (int f : failed) std::printf(" %d", f);
    std::printf("%s\n", failed.empty() ? " none" : "");
    if (!have_known) return failed.empty() ? 0 : 1;
    if (failed == known) {
        std::printf("failing set matches the known-red list\n");
        return 0;
    }
    std::printf("failing set differs from the known-red list\n");
    return 1;
}
