#include "gosc/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gosc/errors.hpp"
#include "gosc/moments.hpp"
#include "gosc/quadrature.hpp"

namespace gosc {

namespace {

constexpr double kSingular = 1e-12;

bool ultraspherical(const FamilySpec& f) {
    return f.tag == FamilyTag::Legendre || f.tag == FamilyTag::Gegenbauer || f.tag == FamilyTag::ChebyshevT ||
           f.tag == FamilyTag::ChebyshevU;
}

bool on_interval(const FamilySpec& f) { return ultraspherical(f) || f.tag == FamilyTag::Jacobi; }

// ultraspherical parameter (Legendre 0)
double ua(const FamilySpec& f) { return f.tag == FamilyTag::Legendre ? 0.0 : f.alpha; }

double gegenbauer_b2(double a, int n) {
    if (n == 0) return 1.0 / (2.0 * a + 3.0);
    return (n + 1.0) * (n + 2.0 * a + 1.0) / ((2.0 * n + 2.0 * a + 1.0) * (2.0 * n + 2.0 * a + 3.0));
}

double jacobi_a(double al, double be, int n) {
    const double s = al + be;
    if (n == 0) return (be - al) / (s + 2.0);
    return (be * be - al * al) / ((2.0 * n + s) * (2.0 * n + s + 2.0));
}

double jacobi_b2(double al, double be, int n) {
    const double s = al + be;
    if (n == 0) return 4.0 * (al + 1.0) * (be + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
    const double u = 2.0 * n + s;
    return 4.0 * (n + 1.0) * (n + al + 1.0) * (n + be + 1.0) * (n + s + 1.0) /
           ((u + 1.0) * (u + 2.0) * (u + 2.0) * (u + 3.0));
}

// diagonal entry of A = (1 - x^2) d/dx in the Jacobi basis
double jacobi_A_diag(double al, double be, int n) {
    if (n == 0) return 0.0;
    const double s = al + be;
    return -2.0 * n * (n + s + 1.0) * (be - al) / ((2.0 * n + s) * (2.0 * n + s + 2.0));
}

double rel(double num, double scale) { return num / std::max(1.0, scale); }

}  // namespace

RecurrenceCoefficients family_coefficients(const FamilySpec& f, int n_max) {
    f.validate();
    if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
    std::vector<double> a, b;
    for (int n = 0; n <= n_max; ++n) {
        switch (f.tag) {
            case FamilyTag::Hermite:
                a.push_back(0.0);
                b.push_back(std::sqrt((n + 1.0) / 2.0));
                break;
            case FamilyTag::Legendre:
                a.push_back(0.0);
                b.push_back((n + 1.0) / std::sqrt((2.0 * n + 1.0) * (2.0 * n + 3.0)));
                break;
            case FamilyTag::Gegenbauer:
            case FamilyTag::ChebyshevT:
            case FamilyTag::ChebyshevU:
                a.push_back(0.0);
                b.push_back(std::sqrt(gegenbauer_b2(f.alpha, n)));
                break;
            case FamilyTag::Laguerre:
                a.push_back(2.0 * n + f.alpha + 1.0);
                b.push_back(std::sqrt((n + 1.0) * (n + f.alpha + 1.0)));
                break;
            case FamilyTag::Jacobi:
                a.push_back(jacobi_a(f.alpha, f.beta, n));
                b.push_back(std::sqrt(jacobi_b2(f.alpha, f.beta, n)));
                break;
        }
    }
    return RecurrenceCoefficients(std::move(a), std::move(b), Provenance::ClosedForm);
}

FamilyConventions family_conventions(const FamilySpec& f) {
    FamilyConventions c;
    if (ultraspherical(f)) c.gegenbauer_lambda = ua(f) + 0.5;
    switch (f.tag) {
        case FamilyTag::Laguerre:
            c.printed_b_sign = -1;
            c.c_is_b_prev = true;
            c.note = "printed psi_n = L_n/d_n; canonical psi_n = (-1)^n L_n/d_n, b_n = +sqrt((n+1)(n+alpha+1))";
            break;
        case FamilyTag::ChebyshevT:
            c.note = "orthonormal table has b_0 = 1/sqrt(2); the printed constant b_n = 1/2 holds for n >= 1";
            break;
        case FamilyTag::Jacobi:
            c.note = "b_n carries the factor 4 required by the Gegenbauer reduction and the moment round trip";
            break;
        default:
            break;
    }
    return c;
}

std::vector<double> family_energy_levels(const FamilySpec& f, int n_max) {
    return energy_levels(family_coefficients(f, n_max), n_max + 1);
}

std::vector<double> family_energy_levels_printed(const FamilySpec& f, int n_max) {
    std::vector<double> out;
    const double al = f.alpha, be = f.beta;
    for (int n = 0; n <= n_max; ++n) {
        double v = 0.0;
        switch (f.tag) {
            case FamilyTag::Hermite: v = 2.0 * n + 1.0; break;
            case FamilyTag::Legendre:
                v = n == 0 ? 2.0 / 3.0 : (n * (n + 1.0) - 0.5) / ((n + 1.5) * (n - 0.5));
                break;
            case FamilyTag::Gegenbauer:
                v = n == 0 ? 2.0 / (2.0 * al + 3.0)
                           : (n * (n + 2.0 * al + 1.0) + al - 0.5) / ((n + al + 1.5) * (n + al - 0.5));
                break;
            case FamilyTag::ChebyshevT:
            case FamilyTag::ChebyshevU: v = n == 0 ? 0.5 : 1.0; break;
            case FamilyTag::Laguerre: v = 4.0 * (n * n + (al + 1.0) * n + (al + 1.0) / 2.0); break;
            case FamilyTag::Jacobi: {
                const double s = al + be;
                auto t = [&](double k) { return k * (k + al) * (k + be) * (k + s); };
                const double sn = t(n) + t(n + 1.0);
                const double wn = 2.0 * n * n + 2.0 * n * (s + 1.0) + (al + 1.0) * (be + 1.0);
                const double u = 2.0 * n + s;
                v = ((u + 1.0) * (u + 1.0) * (sn - 4.0 * wn) + 5.0 * sn - 2.0 * wn) /
                    (u * u * (u + 2.0) * (u + 2.0) * (u - 1.0) * (u + 3.0));
                break;
            }
        }
        out.push_back(v);
    }
    return out;
}

double family_weight(const FamilySpec& f, double x) {
    f.validate();
    if (!(x >= f.lower() && x <= f.upper())) throw InvalidArgument("x outside the support of " + f.label());
    return family_density(f, x, x - f.lower(), f.upper() - x);
}

double normalization_constant_d(const FamilySpec& f, int n) {
    f.validate();
    if (n < 0) throw InvalidArgument("d_n needs n >= 0");
    const double al = f.alpha, be = f.beta;
    switch (f.tag) {
        case FamilyTag::Hermite:
            return std::sqrt(std::exp(n * std::log(2.0) + std::lgamma(n + 1.0)) * std::sqrt(M_PI));
        case FamilyTag::Legendre: return std::sqrt(2.0 / (2.0 * n + 1.0));
        case FamilyTag::Gegenbauer:
        case FamilyTag::ChebyshevT:
        case FamilyTag::ChebyshevU: {
            const double l2 = (2.0 * al + 1.0) * std::log(2.0) + 2.0 * std::lgamma(n + al + 1.0);
            if (n == 0) return std::sqrt(std::exp(l2 - std::lgamma(2.0 * al + 2.0)));
            return std::sqrt(std::exp(l2 - std::lgamma(n + 1.0) - std::lgamma(n + 2.0 * al + 1.0)) /
                             (2.0 * n + 2.0 * al + 1.0));
        }
        case FamilyTag::Laguerre: return std::sqrt(std::exp(std::lgamma(n + al + 1.0) - std::lgamma(n + 1.0)));
        case FamilyTag::Jacobi: {
            const double s = al + be;
            const double l2 = (s + 1.0) * std::log(2.0) + std::lgamma(n + al + 1.0) + std::lgamma(n + be + 1.0);
            if (n == 0) return std::sqrt(std::exp(l2 - std::lgamma(s + 2.0)));
            return std::sqrt(std::exp(l2 - std::lgamma(n + 1.0) - std::lgamma(n + s + 1.0)) / (2.0 * n + s + 1.0));
        }
    }
    return 1.0;
}

std::function<double(double)> ground_function(const FamilySpec& f) {
    f.validate();
    const double al = f.alpha, be = f.beta;
    switch (f.tag) {
        case FamilyTag::Hermite: return [](double x) { return std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x); };
        case FamilyTag::Legendre: return [](double) { return 1.0 / std::sqrt(2.0); };
        case FamilyTag::Gegenbauer:
        case FamilyTag::ChebyshevT:
        case FamilyTag::ChebyshevU: {
            const double d0 = normalization_constant_d(f, 0);
            return [al, d0](double x) { return std::pow(1.0 - x * x, 0.5 * al) / d0; };
        }
        case FamilyTag::Laguerre: return [al](double x) { return std::pow(x, 0.5 * al) * std::exp(-0.5 * x); };
        case FamilyTag::Jacobi:
            return [al, be](double x) { return std::pow(1.0 - x, 0.5 * al) * std::pow(1.0 + x, 0.5 * be); };
    }
    return [](double) { return 1.0; };
}

MeasureSpec measure_for(const FamilySpec& f) { return MeasureSpec::family(f); }

std::vector<double> apply_A(const FamilySpec& f, const RecurrenceCoefficients& c, int n,
                            const std::vector<double>& xs) {
    if (!on_interval(f)) throw InvalidArgument("A = (1-x^2) d/dx is defined for families on [-1, 1]");
    std::vector<double> out;
    for (double x : xs) out.push_back((1.0 - x * x) * evaluate_derivative(c, x, n)[static_cast<size_t>(n)]);
    return out;
}

std::vector<double> apply_K(const FamilySpec& f, const RecurrenceCoefficients& c, int n,
                            const std::vector<double>& xs) {
    if (f.tag != FamilyTag::Laguerre) throw InvalidArgument("K = x d/dx is defined for the Laguerre family");
    std::vector<double> out;
    for (double x : xs) out.push_back(x * evaluate_derivative(c, x, n)[static_cast<size_t>(n)]);
    return out;
}

FockOperator differential_matrix(const FamilySpec& f, const RecurrenceCoefficients& c, int M, const std::string& label,
                                 const PointOperator& op, int lower_band, int upper_band) {
    (void)f;
    const int G = M + 2;
    const quad::Rule rule = quad::gauss_rule(c, G);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(M, M);
    for (int j = 0; j < G; ++j) {
        const double x = rule.x[static_cast<size_t>(j)], w = rule.w[static_cast<size_t>(j)];
        const PolyValues v = evaluate_all(c, x, M - 1);
        for (int n = 0; n < M; ++n) {
            const auto un = static_cast<size_t>(n);
            const double img = op(x, v.psi[un], v.dpsi[un], v.d2psi[un]);
            for (int k = 0; k < M; ++k) m(k, n) += w * v.psi[static_cast<size_t>(k)] * img;
        }
    }
    FockOperator r;
    r.matrix = std::move(m);
    r.dim = M;
    r.bandwidth = std::max(lower_band, upper_band);
    r.label = label;
    r.valid_cols = M - 1 - upper_band;
    return r;
}

double identity_residual(const OperatorIdentity& e, int max_col, int* compared_cols) {
    const int v = std::min({max_col, e.lhs.valid_cols, e.rhs.valid_cols});
    double diff = 0.0, scale = 0.0;
    int cols = 0;
    for (int j = 0; j <= v; ++j) {
        if (e.skip_cols.count(j)) continue;
        ++cols;
        for (int i = 0; i < e.lhs.dim; ++i) {
            if (e.skip_rows.count(i)) continue;
            diff = std::max(diff, std::abs(e.lhs.matrix(i, j) - e.rhs.matrix(i, j)));
            scale = std::max(scale, std::abs(e.rhs.matrix(i, j)));
        }
    }
    if (compared_cols) *compared_cols = cols;
    return rel(diff, scale);
}

namespace {

struct Resolvent {
    FockOperator op;
    std::set<int> singular;
};

Resolvent resolvent(const std::string& label, int M, const std::function<double(int)>& f) {
    Resolvent r;
    std::vector<cplx> d;
    for (int n = 0; n < M; ++n) {
        const double v = f(n);
        if (std::abs(v) < kSingular) {
            r.singular.insert(n);
            d.emplace_back(0.0, 0.0);
        } else {
            d.emplace_back(1.0 / v, 0.0);
        }
    }
    r.op = diagonal_operator(label, d);
    return r;
}

std::string set_note(const char* what, const std::set<int>& s) {
    if (s.empty()) return {};
    std::ostringstream os;
    os << what << ":";
    for (int i : s) os << " " << i;
    return os.str();
}

class FormBuilder {
public:
    FormBuilder(VerificationReport& rep, int m, double tol, std::string prefix)
        : rep_(rep), m_(m), tol_(tol), prefix_(std::move(prefix)) {}

    void add(OperatorIdentity e) {
        int cols = 0;
        const double r = identity_residual(e, m_, &cols);
        std::string note = e.note;
        auto append = [&](const std::string& s) {
            if (s.empty()) return;
            if (!note.empty()) note += "; ";
            note += s;
        };
        append(set_note("rows skipped at singular resolvent", e.skip_rows));
        append(set_note("columns skipped at singular resolvent", e.skip_cols));
        append("compared columns " + std::to_string(cols));
        VerificationItem& it = rep_.add(prefix_ + e.id, e.tag, r, tol_, e.kind, Compare::AtMost, note);
        if (!it.pass) it.failures = worst_entries(e.lhs, e.rhs);
    }

    void add_pointwise(const std::string& id, const std::string& tag, double residual, ItemKind kind,
                       std::string note = {}) {
        rep_.add(prefix_ + id, tag, residual, tol_, kind, Compare::AtMost, std::move(note));
    }

private:
    VerificationReport& rep_;
    int m_;
    double tol_;
    std::string prefix_;
};

std::vector<double> interior_grid(double lo, double hi, int points) {
    std::vector<double> xs;
    for (int i = 0; i < points; ++i) xs.push_back(lo + (hi - lo) * (i + 0.5) / points);
    return xs;
}

// max over n <= m and grid of |lhs_n(x) - rhs_n(x)| / max(1, max |lhs|)
double pointwise_action(const RecurrenceCoefficients& c, int m, const std::vector<double>& xs,
                        const std::function<double(double, const PolyValues&, int)>& lhs,
                        const std::function<double(double, const PolyValues&, int)>& rhs) {
    double diff = 0.0, scale = 0.0;
    for (double x : xs) {
        const PolyValues v = evaluate_all(c, x, m + 1);
        for (int n = 0; n <= m; ++n) {
            const double l = lhs(x, v, n);
            diff = std::max(diff, std::abs(l - rhs(x, v, n)));
            scale = std::max(scale, std::abs(l));
        }
    }
    return rel(diff, scale);
}

const cplx I1(0.0, 1.0);

void ultraspherical_forms(const FamilySpec& f, int m, double tol, VerificationReport& rep) {
    const int M = m + 8;
    const double al = ua(f), h = al + 0.5;
    const RecurrenceCoefficients c = family_coefficients(f, M + 4);
    FormBuilder fb(rep, m, tol, "diff.");
    const std::string tag = "differential-forms/" + f.name();

    const std::vector<double> xs = interior_grid(-1.0, 1.0, 41);
    fb.add_pointwise("A_action", tag + "/A-action",
                     pointwise_action(
                         c, m, xs, [](double x, const PolyValues& v, int n) { return (1 - x * x) * v.dpsi[size_t(n)]; },
                         [&](double, const PolyValues& v, int n) {
                             const double lo = n > 0 ? (n + 2.0 * al + 1.0) * c.b_prev(n) * v.psi[size_t(n - 1)] : 0.0;
                             return lo - n * c.b[size_t(n)] * v.psi[size_t(n + 1)];
                         }),
                     ItemKind::Check);

    const FockOperator A = differential_matrix(
        f, c, M, "A", [](double x, double, double d, double) { return (1 - x * x) * d; }, 1, 1);
    const FockOperator X = position_operator(c, M), Nn = number_operator(M), I = identity_operator(M);
    const Ladder L = ladder_operators(c, M);
    const FockOperator P = momentum_operator(c, M, kDistinguishedT);
    auto sh = [&](double k) { return Nn + k * I; };
    const double s2 = 1.0 / std::sqrt(2.0);

    const Resolvent Rm = resolvent("(N+a+3/2)^-1", M, [&](int n) { return n + al + 1.5; });
    const Resolvent Rp = resolvent("(N+a-1/2)^-1", M, [&](int n) { return n + al - 0.5; });

    fb.add({"lowering", tag + "/ladder", s2 * (Rm.op * (A + X * Nn)), L.minus, Rm.singular, {}, ItemKind::Check, {}});
    fb.add({"raising", tag + "/ladder", s2 * (Rp.op * (-1.0 * A + X * sh(2.0 * al + 1.0))), L.plus, Rp.singular, {},
            ItemKind::Check, {}});
    fb.add({"momentum", tag + "/momentum",
            I1 * (Rp.op * (Rm.op * sh(h) * A - Rm.op * X * Nn - h * X)), P, Rp.singular, {}, ItemKind::Check,
            "compared with P(+i)"});

    // D = N + (alpha + 1/2) I forms
    const FockOperator D = sh(h);
    const Resolvent RD = resolvent("(D^2-I)^-1", M, [&](int n) { return (n + h) * (n + h) - 1.0; });
    const Resolvent RDp = resolvent("(D+I)^-1", M, [&](int n) { return n + h + 1.0; });
    const Resolvent RDm = resolvent("(D-I)^-1", M, [&](int n) { return n + h - 1.0; });
    fb.add({"momentum_D", tag + "/momentum-D", I1 * (RD.op * (D * A - X * D - h * (D * X))), P, RD.singular, {},
            ItemKind::Check, {}});
    fb.add({"lowering_D", tag + "/ladder-D", s2 * (RDp.op * (A + X * (D - h * I))), L.minus, RDp.singular, {},
            ItemKind::Check, {}});
    fb.add({"raising_D", tag + "/ladder-D", s2 * (RDm.op * (-1.0 * A + X * (D + h * I))), L.plus, RDm.singular, {},
            ItemKind::Check, {}});
    const FockOperator H = hamiltonian(c, M, kDistinguishedT);
    fb.add({"hamiltonian_D", tag + "/hamiltonian-D", I + (0.25 - al * al) * RD.op, H, RD.singular, {},
            ItemKind::Check, {}});

    if (f.tag == FamilyTag::Legendre) {
        const FockOperator Lop = differential_matrix(
            f, c, M, "d/dx (1-x^2) d/dx",
            [](double x, double, double d, double d2) { return (1 - x * x) * d2 - 2 * x * d; }, 0, 0);
        fb.add({"D_square", tag + "/D-operator", D * D, 0.25 * (I - 4.0 * Lop), {}, {}, ItemKind::Check,
                "D^2 = (I - 4 d/dx (1-x^2) d/dx)/4"});
        // (3I + 4L)^-1 is diagonal in the basis with entries 1/(3 - 4n(n+1))
        Eigen::MatrixXcd inv = (3.0 * I + 4.0 * Lop).matrix.inverse();
        FockOperator Inv = I;
        Inv.matrix = inv;
        Inv.label = "(3I+4L)^-1";
        fb.add({"hamiltonian_L", tag + "/hamiltonian-D", I - Inv, H, {}, {}, ItemKind::Check,
                "H = I - (3I + 4 d/dx (1-x^2) d/dx)^-1"});
    }

    if (f.tag == FamilyTag::ChebyshevT || f.tag == FamilyTag::ChebyshevU) {
        const bool t = f.tag == FamilyTag::ChebyshevT;
        const Resolvent R1 = resolvent("(N+I)^-1", M, [](int n) { return n + 1.0; });
        // lowering as printed: (N+I)^-1 for both kinds
        fb.add({"chebyshev_lowering_printed", tag + "/ladder-printed", s2 * (R1.op * (A + X * Nn)), L.minus,
                R1.singular, {}, t ? ItemKind::Check : ItemKind::Informational,
                t ? std::string{} : "printed resolvent (N+I)^-1; the ultraspherical reduction gives (N+2I)^-1"});
        if (t) {
            const Resolvent Rt = resolvent("(N-I)^-1", M, [](int n) { return n - 1.0; });
            fb.add({"chebyshev_raising_printed", tag + "/ladder-printed", s2 * (Rt.op * (-1.0 * A + X * Nn)), L.plus,
                    Rt.singular, {}, ItemKind::Check, {}});
            fb.add({"chebyshev_momentum_printed", tag + "/momentum-printed",
                    I1 * (Rt.op * (R1.op * Nn * A - R1.op * X * Nn)), P, Rt.singular, {}, ItemKind::Check, {}});
        } else {
            const Resolvent Rn = resolvent("N^-1", M, [](int n) { return static_cast<double>(n); });
            const Resolvent R2 = resolvent("(N+2I)^-1", M, [](int n) { return n + 2.0; });
            fb.add({"chebyshev_raising_printed", tag + "/ladder-printed", s2 * (Rn.op * (-1.0 * A + X * sh(2.0))),
                    L.plus, Rn.singular, {}, ItemKind::Check, {}});
            fb.add({"chebyshev_momentum_printed", tag + "/momentum-printed",
                    I1 * (Rn.op * (R2.op * sh(1.0) * A - R2.op * X * Nn - X)), P, Rn.singular, {}, ItemKind::Check,
                    {}});
        }
    }
}

void hermite_forms(const FamilySpec& f, int m, double tol, VerificationReport& rep) {
    const int M = m + 8;
    const RecurrenceCoefficients c = family_coefficients(f, M + 4);
    FormBuilder fb(rep, m, tol, "diff.");
    const std::string tag = "differential-forms/hermite";
    // d/dx and d^2/dx^2 on the weighted functions phi_n = pi^-1/4 exp(-x^2/2) psi_n
    const FockOperator Dx = differential_matrix(
        f, c, M, "d/dx", [](double x, double p, double d, double) { return d - x * p; }, 1, 1);
    const FockOperator Dxx = differential_matrix(
        f, c, M, "d2/dx2", [](double x, double p, double d, double d2) { return d2 - 2 * x * d + (x * x - 1) * p; }, 2,
        2);
    const FockOperator X = position_operator(c, M);
    const Ladder L = ladder_operators(c, M);
    const double s2 = 1.0 / std::sqrt(2.0);
    fb.add({"raising", tag + "/ladder", s2 * (X - Dx), L.plus, {}, {}, ItemKind::Check, {}});
    fb.add({"lowering", tag + "/ladder", s2 * (X + Dx), L.minus, {}, {}, ItemKind::Check, {}});
    fb.add({"momentum", tag + "/momentum", I1 * Dx, momentum_operator(c, M, kDistinguishedT), {}, {},
            ItemKind::Check, "i d/dx equals P(+i)"});
    fb.add({"hamiltonian", tag + "/hamiltonian", X * X - Dxx, hamiltonian(c, M, kDistinguishedT), {}, {},
            ItemKind::Check, "-d^2/dx^2 + x^2"});
}

void laguerre_forms(const FamilySpec& f, int m, double tol, VerificationReport& rep) {
    const int M = m + 8;
    const double ap = f.alpha + 1.0;
    const RecurrenceCoefficients c = family_coefficients(f, M + 4);
    FormBuilder fb(rep, m, tol, "diff.");
    const std::string tag = "differential-forms/laguerre";

    const double sx = 4.0 * (m + 1) + 10.0;
    fb.add_pointwise("K_action", tag + "/K-action",
                     pointwise_action(
                         c, m, interior_grid(0.0, sx, 60),
                         [](double x, const PolyValues& v, int n) { return x * v.dpsi[size_t(n)]; },
                         [&](double, const PolyValues& v, int n) {
                             return (n > 0 ? c.b_prev(n) * v.psi[size_t(n - 1)] : 0.0) + n * v.psi[size_t(n)];
                         }),
                     ItemKind::Check);

    FockOperator K =
        differential_matrix(f, c, M, "K", [](double x, double, double d, double) { return x * d; }, 1, 0);
    const FockOperator X = position_operator(c, M), Nn = number_operator(M), I = identity_operator(M);
    const Tilde T = tilde_operators(c, M);
    const Ladder TL = tilde_ladder(c, M);
    const FockOperator NX = commutator(Nn, X), KN = K - Nn;
    const double r2 = std::sqrt(2.0);

    fb.add({"momentum", tag + "/momentum", 2.0 * Nn + ap * I - I1 * (2.0 * K - X + ap * I),
            momentum_operator(c, M, cplx(0.0, -1.0)), {}, {}, ItemKind::Check, "equals P(-i)"});
    fb.add({"tilde_position", tag + "/tilde", X - 2.0 * Nn - ap * I, T.X, {}, {}, ItemKind::Check, {}});
    fb.add({"tilde_momentum", tag + "/tilde", I1 * (2.0 * K - X + ap * I), T.P, {}, {}, ItemKind::Check, {}});
    fb.add({"tilde_lowering", tag + "/tilde-ladder", r2 * KN, TL.minus, {}, {}, ItemKind::Check, {}});
    fb.add({"tilde_raising", tag + "/tilde-ladder", r2 * (NX + KN), TL.plus, {}, {}, ItemKind::Check, {}});
    fb.add({"commutator_KX", tag + "/commutators", commutator(K, X), X, {}, {}, ItemKind::Check, "[K, X] = X"});
    fb.add({"commutator_KNX", tag + "/commutators", commutator(KN, X), 2.0 * K + ap * I, {}, {}, ItemKind::Check,
            "[K - N, X] = 2K + (alpha+1) I"});
    fb.add({"tilde_position_rewritten", tag + "/tilde", 2.0 * KN + NX, T.X, {}, {}, ItemKind::Check, {}});
    fb.add({"tilde_momentum_rewritten", tag + "/tilde", -1.0 * (I1 * NX), T.P, {}, {}, ItemKind::Check, {}});
    fb.add({"tilde_hamiltonian", tag + "/tilde-hamiltonian", 4.0 * (KN * KN) + 2.0 * (NX * KN + KN * NX), T.H, {}, {},
            ItemKind::Check, {}});
    fb.add({"tilde_hamiltonian_ladder", tag + "/tilde-hamiltonian", TL.plus * TL.minus + TL.minus * TL.plus, T.H, {},
            {}, ItemKind::Check, {}});
    fb.add({"tilde_hamiltonian_expanded", tag + "/tilde-hamiltonian",
            4.0 * (Nn * Nn - K * K) + 2.0 * (KN * X + X * KN) + 4.0 * ap * (Nn - K), T.H, {}, {}, ItemKind::Check,
            {}});
    FockOperator zero = I;
    zero.matrix.setZero();
    zero.label = "0";
    fb.add({"ode_operator_form", tag + "/ode", K * K + f.alpha * K - X * KN, zero, {}, {}, ItemKind::Check,
            "K^2 + alpha K - X (K - N) = 0"});
}

void jacobi_forms(const FamilySpec& f, int m, double tol, VerificationReport& rep) {
    const int M = m + 8;
    const double al = f.alpha, be = f.beta, s = al + be;
    const RecurrenceCoefficients c = family_coefficients(f, M + 4);
    FormBuilder fb(rep, m, tol, "diff.");
    const std::string tag = "differential-forms/jacobi";

    const std::vector<double> xs = interior_grid(-1.0, 1.0, 41);
    auto lhsA = [](double x, const PolyValues& v, int n) { return (1 - x * x) * v.dpsi[size_t(n)]; };
    auto upper = [&](const PolyValues& v, int n) {
        return (n > 0 ? (n + s + 1.0) * c.b_prev(n) * v.psi[size_t(n - 1)] : 0.0) - n * c.b[size_t(n)] * v.psi[size_t(n + 1)];
    };
    fb.add_pointwise("A_action", tag + "/A-action",
                     pointwise_action(c, m, xs, lhsA,
                                      [&](double, const PolyValues& v, int n) {
                                          return upper(v, n) + jacobi_A_diag(al, be, n) * v.psi[size_t(n)];
                                      }),
                     ItemKind::Check, "diagonal term on psi_n");
    if (std::abs(s) > kSingular)
        fb.add_pointwise("A_action_printed", tag + "/A-action-printed",
                         pointwise_action(c, m, xs, lhsA,
                                          [&](double, const PolyValues& v, int n) {
                                              const double corr = n > 0 ? 2.0 * n * (n + s + 1.0) / s *
                                                                              c.a[size_t(n)] * v.psi[size_t(n - 1)]
                                                                        : 0.0;
                                              return upper(v, n) - corr;
                                          }),
                         ItemKind::Informational, "correction term placed on psi_{n-1} as printed");

    const FockOperator A = differential_matrix(
        f, c, M, "A", [](double x, double, double d, double) { return (1 - x * x) * d; }, 1, 1);
    const FockOperator X = position_operator(c, M), Nn = number_operator(M), I = identity_operator(M);
    const Tilde T = tilde_operators(c, M);
    const Ladder TL = tilde_ladder(c, M);
    const double r2 = std::sqrt(2.0), amb = al - be;
    auto sh = [&](double k) { return Nn + k * I; };
    const Resolvent R1 = resolvent("(2N+s+1)^-1", M, [&](int n) { return 2.0 * n + s + 1.0; });
    const Resolvent R2 = resolvent("(2N+s+2)^-1", M, [&](int n) { return 2.0 * n + s + 2.0; });
    const Resolvent R0 = resolvent("(2N+s)^-1", M, [&](int n) { return 2.0 * n + s; });

    const FockOperator up = r2 * ((X * sh(s + 1.0) - A) * R1.op + amb * (sh(s + 1.0) * R1.op * R2.op));
    const FockOperator down = r2 * ((X * Nn + A - amb * (Nn * R0.op)) * R1.op);
    fb.add({"tilde_raising", tag + "/tilde-ladder", up, TL.plus, {}, R1.singular, ItemKind::Check, {}});
    fb.add({"tilde_lowering", tag + "/tilde-ladder", down, TL.minus, {}, R1.singular, ItemKind::Check, {}});
    const double s2 = 1.0 / r2;
    fb.add({"tilde_position", tag + "/tilde", s2 * (up + down), T.X, {}, R1.singular, ItemKind::Check,
            "(a~+ + a~-)/sqrt2 from the ladder forms"});
    fb.add({"tilde_momentum", tag + "/tilde", cplx(0.0, -s2) * (up - down), T.P, {}, R1.singular, ItemKind::Check,
            "-i (a~+ - a~-)/sqrt2 from the ladder forms"});

    // closed forms as printed, read literally
    const FockOperator xl = X * Nn + amb * (R1.op * ((2.0 * s + 1.0) * Nn + (s + 1.0) * (s + 1.0) * I) * R0.op * R2.op);
    fb.add({"tilde_position_printed", tag + "/tilde-printed", xl, T.X, {}, {}, ItemKind::Informational,
            "literal reading of the printed closed form"});
    const FockOperator T1 = 2.0 * Nn + (s + 1.0) * I;
    const FockOperator pl = -1.0 * (I1 * (-2.0 * A + (s + 1.0) * X)) + amb * ((T1 * T1 + Nn) * R0.op * R2.op * R1.op);
    fb.add({"tilde_momentum_printed", tag + "/tilde-printed", pl, T.P, {}, {}, ItemKind::Informational,
            "literal reading of the printed closed form"});
}


}  // namespace

VerificationReport verify_differential_forms(const FamilySpec& f, int m, double tol) {
    f.validate();
    VerificationReport rep;
    rep.name = "differential-forms/" + f.label();
    if (ultraspherical(f)) ultraspherical_forms(f, m, tol, rep);
    else if (f.tag == FamilyTag::Hermite) hermite_forms(f, m, tol, rep);
    else if (f.tag == FamilyTag::Laguerre) laguerre_forms(f, m, tol, rep);
    else jacobi_forms(f, m, tol, rep);
    return rep;
}

namespace {

// terms whose sum is the classical equation, divided by the weight where needed
std::vector<double> ode_terms(const FamilySpec& f, int n, double x, double p, double d, double d2) {
    const double al = f.alpha, be = f.beta;
    switch (f.tag) {
        case FamilyTag::Hermite: return {d2, -2.0 * x * d, 2.0 * n * p};
        case FamilyTag::Legendre: return {(1 - x * x) * d2, -2.0 * x * d, n * (n + 1.0) * p};
        case FamilyTag::Gegenbauer:
        case FamilyTag::ChebyshevT:
        case FamilyTag::ChebyshevU:
            return {(1 - x * x) * d2, -2.0 * (al + 1.0) * x * d, n * (n + 2.0 * al + 1.0) * p};
        case FamilyTag::Laguerre: return {x * d2, (al + 1.0 - x) * d, n * p};
        case FamilyTag::Jacobi:
            return {(1 - x * x) * d2, (be - al - (al + be + 2.0) * x) * d, n * (n + al + be + 1.0) * p};
    }
    return {};
}

double terms_residual(const RecurrenceCoefficients& c, int n, const std::vector<double>& xs,
                      const std::function<std::vector<double>(double, double, double, double)>& terms) {
    double res = 0.0, scale = 0.0;
    for (double x : xs) {
        const PolyValues v = evaluate_all(c, x, n);
        const auto un = static_cast<size_t>(n);
        double sum = 0.0;
        for (double t : terms(x, v.psi[un], v.dpsi[un], v.d2psi[un])) {
            sum += t;
            scale = std::max(scale, std::abs(t));
        }
        res = std::max(res, std::abs(sum));
    }
    return scale > 0 ? res / scale : res;
}

}  // namespace

double ode_residual(const FamilySpec& f, const RecurrenceCoefficients& c, int n, const std::vector<double>& xs) {
    return terms_residual(c, n, xs, [&](double x, double p, double d, double d2) { return ode_terms(f, n, x, p, d, d2); });
}

double ode_residual_printed_gegenbauer(const FamilySpec& f, const RecurrenceCoefficients& c, int n,
                                       const std::vector<double>& xs) {
    if (!ultraspherical(f)) throw InvalidArgument("printed ultraspherical equation needs an ultraspherical family");
    const double al = ua(f);
    return terms_residual(c, n, xs, [&](double x, double p, double d, double d2) {
        const double w = 1 - x * x;
        return std::vector<double>{d2, -2.0 * (al - 1.0) * x / w * d, n * (n + 2.0 * al + 1.0) * w * p};
    });
}

std::vector<double> ode_grid(const FamilySpec& f, int points, int n_max) {
    switch (f.tag) {
        case FamilyTag::Hermite: {
            const double L = std::sqrt(2.0 * n_max + 1.0) + 3.0;
            return interior_grid(-L, L, points);
        }
        case FamilyTag::Laguerre: return interior_grid(0.0, 4.0 * n_max + 4.0 * f.alpha + 12.0, points);
        default: return interior_grid(-1.0, 1.0, points);
    }
}

VerificationReport verify_ode(const FamilySpec& f, int n_max, int points, double tol) {
    f.validate();
    VerificationReport rep;
    rep.name = "ode/" + f.label();
    const RecurrenceCoefficients c = family_coefficients(f, n_max + 1);
    const std::vector<double> xs = ode_grid(f, points, n_max);
    double worst = 0.0, worst_printed = 0.0;
    int at = 0, at_printed = 0;
    for (int n = 0; n <= n_max; ++n) {
        const double r = ode_residual(f, c, n, xs);
        if (r > worst || std::isnan(r)) worst = r, at = n;
        if (ultraspherical(f) && f.tag != FamilyTag::Legendre) {
            const double rp = ode_residual_printed_gegenbauer(f, c, n, xs);
            if (rp > worst_printed || std::isnan(rp)) worst_printed = rp, at_printed = n;
        }
    }
    rep.add("ode.classical", "ode/" + f.name(), worst, tol, ItemKind::Check, Compare::AtMost,
            "n <= " + std::to_string(n_max) + ", worst n = " + std::to_string(at) + ", " + std::to_string(points) +
                " interior points");
    if (ultraspherical(f) && f.tag != FamilyTag::Legendre)
        rep.add("ode.printed_arrangement", "ode/" + f.name() + "-printed", worst_printed, tol, ItemKind::Informational,
                Compare::AtMost,
                "operator (1-x^2) d/dx (1-x^2)^(alpha-1) d/dx as printed; worst n = " + std::to_string(at_printed));
    return rep;
}

VerificationReport verify_identities(const FamilySpec& f, int n_top, int N) {
    f.validate();
    VerificationReport rep;
    rep.name = "identities/" + f.label();
    const RecurrenceCoefficients c = family_coefficients(f, std::max(n_top, N) + 2);
    const std::string tag = "identities/" + f.name();

    {
        const std::vector<double> norm = family_energy_levels(f, n_top), printed = family_energy_levels_printed(f, n_top);
        double worst = 0.0;
        std::ostringstream note;
        int shown = 0;
        for (int n = 0; n <= n_top; ++n) {
            const double d = std::abs(norm[size_t(n)] - printed[size_t(n)]);
            const double r = d / std::max(1.0, std::abs(norm[size_t(n)]));
            if (!(r <= 1e-12) && shown < 4) {
                note << (shown ? "; " : "discrepancies: ") << "n=" << n << " normative " << norm[size_t(n)]
                     << " printed " << printed[size_t(n)];
                ++shown;
            }
            if (std::isnan(r) || r > worst) worst = std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
        }
        if (!shown) note << "printed levels agree with 2(b_{n-1}^2 + b_n^2) for n <= " << n_top;
        rep.add("identities.energy_levels_printed", tag + "/energy-levels", worst, 1e-12, ItemKind::Informational,
                Compare::AtMost, note.str());
    }

    auto diff = [&](int n) { return c.b[size_t(n)] * c.b[size_t(n)] - c.b_prev(n) * c.b_prev(n); };
    auto add_difference = [&](const std::function<double(int, bool&)>& closed, const std::string& note) {
        double worst = 0.0;
        std::string skipped;
        for (int n = 0; n <= n_top; ++n) {
            bool ok = true;
            const double v = closed(n, ok);
            if (!ok) {
                skipped += " " + std::to_string(n);
                continue;
            }
            worst = std::max(worst, std::abs(diff(n) - v) / std::max(1.0, std::abs(v)));
        }
        rep.add("identities.b_difference", tag + "/coefficient-difference", worst, 1e-12, ItemKind::Check,
                Compare::AtMost, note + (skipped.empty() ? "" : "; undefined at n =" + skipped));
    };

    const int M = N;
    const FockOperator Nn = number_operator(M);
    auto commutator_item = [&](const std::string& id, const FockOperator& closed, const std::set<int>& skip,
                               const FockOperator& fock, ItemKind kind, const std::string& note) {
        OperatorIdentity e{id, tag + "/commutator", fock, closed, skip, {}, kind, note};
        int cols = 0;
        const double r = identity_residual(e, M - 1, &cols);
        VerificationItem& it = rep.add(id, e.tag, r, 1e-10, kind, Compare::AtMost,
                                       note + (skip.empty() ? "" : "; " + set_note("rows skipped", skip)));
        if (!it.pass) it.failures = worst_entries(fock, closed);
    };

    if (ultraspherical(f)) {
        const double al = ua(f), lam = al + 0.5;
        if (f.tag == FamilyTag::Legendre)
            add_difference([](int n, bool&) { return -1.0 / ((2.0 * n - 1) * (2.0 * n + 1) * (2.0 * n + 3)); },
                           "b_n^2 - b_{n-1}^2 = -((2n-1)(2n+1)(2n+3))^-1");
        else
            add_difference(
                [&](int n, bool& ok) {
                    const double den = (n + lam) * (n - 1 + lam) * (n + lam + 1);
                    if (std::abs(den) < kSingular) return ok = false, 0.0;
                    return 0.5 * lam * (lam - 1) / den;
                },
                "b_n^2 - b_{n-1}^2 = lambda(lambda-1) / (2 (n+lambda)(n-1+lambda)(n+lambda+1))");
        const Ladder L = ladder_operators(c, M);
        const FockOperator comm = commutator(L.minus, L.plus);
        if (f.tag == FamilyTag::Legendre) {
            const Resolvent R = resolvent("-(1/4)(N^2-1/4)^-1(N+3/2)^-1", M,
                                          [](int n) { return -4.0 * (n * n - 0.25) * (n + 1.5); });
            commutator_item("identities.commutator_closed_form", R.op, R.singular, comm, ItemKind::Check,
                            "-(1/4) (N^2 - I/4)^-1 (N + 3/2 I)^-1");
            const Resolvent Rp = resolvent("-(1/4)(N^2-1/4)^-1(N^2+3/2)^-1", M,
                                           [](int n) { return -4.0 * (n * n - 0.25) * (n * n + 1.5); });
            commutator_item("identities.commutator_printed", Rp.op, Rp.singular, comm, ItemKind::Informational,
                            "printed second factor (N^2 + 3/2 I)^-1");
        } else {
            std::set<int> undefined;
            std::vector<cplx> vals;
            for (int n = 0; n < M; ++n) {
                const double den = ((n + al) * (n + al) - 0.25) * (n + al + 1.5);
                if (std::abs(den) < kSingular) undefined.insert(n);
                vals.emplace_back(undefined.count(n) ? 0.0 : lam * (lam - 1) / den, 0.0);
            }
            const Resolvent R{diagonal_operator("closed form", vals), undefined};
            commutator_item("identities.commutator_closed_form", R.op, R.singular, comm, ItemKind::Check,
                            "lambda(lambda-1) ((N+alpha)^2 - I/4)^-1 (N + (alpha+3/2) I)^-1");
        }
    } else if (f.tag == FamilyTag::Laguerre) {
        add_difference([&](int n, bool&) { return 2.0 * n + f.alpha + 1.0; }, "b_n^2 - b_{n-1}^2 = 2n + alpha + 1");
        const Ladder TL = tilde_ladder(c, M);
        const FockOperator comm = commutator(TL.minus, TL.plus);
        const FockOperator I = identity_operator(M);
        commutator_item("identities.tilde_commutator_printed", 2.0 * Nn + (f.alpha + 1.0) * I, {}, comm,
                        ItemKind::Informational, "printed 2N + (alpha+1) I; the premises give twice this");
        commutator_item("identities.tilde_commutator", 4.0 * Nn + 2.0 * (f.alpha + 1.0) * I, {}, comm,
                        ItemKind::Check, "2(b_n^2 - b_{n-1}^2) = 4N + 2(alpha+1) I");
    }

    {
        std::vector<double> b(c.b.begin(), c.b.begin() + 21);
        const bool canon = is_canonical_heisenberg(b, 1e-10);
        const bool expect = f.tag == FamilyTag::Hermite;
        rep.add("identities.heisenberg", tag + "/heisenberg", canon == expect ? 0.0 : 1.0, 0.5, ItemKind::Check,
                Compare::AtMost,
                std::string("canonical Heisenberg relation ") + (canon ? "holds" : "fails") + " for n <= 20");
    }
    return rep;
}

std::vector<CatalogEntry> family_catalog(int n_max) {
    std::vector<CatalogEntry> out;
    for (const FamilySpec& f : sample_families()) {
        CatalogEntry e;
        e.family = f;
        e.coeffs = family_coefficients(f, n_max);
        e.levels = family_energy_levels(f, n_max);
        e.levels_printed = family_energy_levels_printed(f, n_max);
        e.formulas = {{"coefficients", "recurrence"}, {"energy_levels", "hamiltonian/spectrum"},
                      {"ode", "ode/" + f.name()}};
        if (f.tag == FamilyTag::Hermite)
            e.formulas.insert(e.formulas.end(), {{"mehler", "kernel/mehler"}, {"fourier", "fourier/hermite"},
                                                 {"ladder_d_dx", "differential-forms/hermite"}});
        else if (f.tag == FamilyTag::Laguerre)
            e.formulas.insert(e.formulas.end(), {{"K_action", "differential-forms/laguerre/K-action"},
                                                 {"tilde_operators", "differential-forms/laguerre/tilde"},
                                                 {"tilde_commutator", "identities/laguerre/commutator"}});
        else
            e.formulas.insert(e.formulas.end(), {{"A_action", "differential-forms/" + f.name() + "/A-action"},
                                                 {"ladder", "differential-forms/" + f.name() + "/ladder"}});
        if (f.tag != FamilyTag::Laguerre && f.tag != FamilyTag::Jacobi && f.tag != FamilyTag::Hermite)
            e.formulas.emplace_back("commutator", "identities/" + f.name() + "/commutator");
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace gosc
