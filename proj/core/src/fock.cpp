#include "gosc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gosc/errors.hpp"

namespace gosc {

namespace {

FockOperator make(std::string label, Eigen::MatrixXcd m, int bandwidth, int valid) {
    FockOperator op;
    op.dim = static_cast<int>(m.rows());
    op.matrix = std::move(m);
    op.bandwidth = std::min(bandwidth, std::max(op.dim - 1, 0));
    op.label = std::move(label);
    op.valid_cols = std::min(valid, op.dim - 1);
    return op;
}

void same_dim(const FockOperator& A, const FockOperator& B) {
    if (A.dim != B.dim) throw DimensionMismatch("operators " + A.label + " and " + B.label + " differ in dimension");
}

void need_coeffs(const RecurrenceCoefficients& c, int N) {
    if (N < 1) throw InvalidArgument("truncation dimension must be positive");
    if (static_cast<size_t>(N) > c.size())
        throw InvalidArgument("truncation dimension " + std::to_string(N) + " needs n_max >= " + std::to_string(N - 1));
}

void check_unimodular(cplx t) {
    if (std::abs(std::abs(t) - 1.0) > 1e-12) throw InvalidArgument("t must satisfy |t| = 1");
}

std::string fmt_t(cplx t) {
    std::ostringstream os;
    os << "(" << t.real() << (t.imag() < 0 ? "" : "+") << t.imag() << "i)";
    return os.str();
}

double scale_of(const FockOperator& B) { return std::max(1.0, valid_max_abs(B)); }

}  // namespace

FockOperator FockOperator::adjoint() const {
    // exact for operators whose truncated entries are all exact (elementary band operators)
    return make(label + "*", matrix.adjoint(), bandwidth, std::min(valid_cols, dim - 1 - bandwidth));
}

FockOperator FockOperator::relabel(std::string l) const {
    FockOperator r = *this;
    r.label = std::move(l);
    return r;
}

FockOperator operator*(const FockOperator& A, const FockOperator& B) {
    same_dim(A, B);
    return make(A.label + B.label, A.matrix * B.matrix, A.bandwidth + B.bandwidth,
                std::min(B.valid_cols, A.valid_cols - B.bandwidth));
}

FockOperator operator+(const FockOperator& A, const FockOperator& B) {
    same_dim(A, B);
    return make("(" + A.label + "+" + B.label + ")", A.matrix + B.matrix, std::max(A.bandwidth, B.bandwidth),
                std::min(A.valid_cols, B.valid_cols));
}

FockOperator operator-(const FockOperator& A, const FockOperator& B) {
    same_dim(A, B);
    return make("(" + A.label + "-" + B.label + ")", A.matrix - B.matrix, std::max(A.bandwidth, B.bandwidth),
                std::min(A.valid_cols, B.valid_cols));
}

FockOperator operator*(cplx s, const FockOperator& A) {
    FockOperator r = A;
    r.matrix *= s;
    return r;
}

FockOperator operator*(double s, const FockOperator& A) { return cplx(s, 0.0) * A; }

FockOperator commutator(const FockOperator& A, const FockOperator& B) {
    FockOperator r = A * B - B * A;
    r.label = "[" + A.label + "," + B.label + "]";
    return r;
}

double valid_residual(const FockOperator& A, const FockOperator& B) {
    same_dim(A, B);
    const int v = std::min(A.valid_cols, B.valid_cols);
    if (v < 0) return 0.0;
    return (A.matrix.leftCols(v + 1) - B.matrix.leftCols(v + 1)).cwiseAbs().maxCoeff();
}

double valid_max_abs(const FockOperator& A) {
    if (A.valid_cols < 0) return 0.0;
    return A.matrix.leftCols(A.valid_cols + 1).cwiseAbs().maxCoeff();
}

double valid_offdiagonal(const FockOperator& A) {
    double worst = 0.0;
    for (int j = 0; j <= A.valid_cols; ++j)
        for (int i = 0; i < A.dim; ++i)
            if (i != j) worst = std::max(worst, std::abs(A.matrix(i, j)));
    return worst;
}

std::vector<FailureLocation> worst_entries(const FockOperator& A, const FockOperator& B, int count) {
    same_dim(A, B);
    std::vector<FailureLocation> all;
    const int v = std::min(A.valid_cols, B.valid_cols);
    for (int j = 0; j <= v; ++j)
        for (int i = 0; i < A.dim; ++i) {
            const double d = std::abs(A.matrix(i, j) - B.matrix(i, j));
            if (d > 0) all.push_back({i, j, d, {}});
        }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.value > y.value; });
    if (all.size() > static_cast<size_t>(count)) all.resize(static_cast<size_t>(count));
    return all;
}

FockOperator identity_operator(int N) { return make("I", Eigen::MatrixXcd::Identity(N, N), 0, N - 1); }

FockOperator number_operator(int N) {
    return diagonal_operator("N", N, [](int n) { return static_cast<double>(n); });
}

FockOperator diagonal_operator(std::string label, const std::vector<cplx>& d) {
    const int N = static_cast<int>(d.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i) m(i, i) = d[static_cast<size_t>(i)];
    return make(std::move(label), std::move(m), 0, N - 1);
}

FockOperator diagonal_operator(std::string label, int N, const std::function<double(int)>& f) {
    std::vector<cplx> d;
    for (int n = 0; n < N; ++n) d.emplace_back(f(n), 0.0);
    return diagonal_operator(std::move(label), d);
}

FockOperator b_of_number(const RecurrenceCoefficients& c, int N) {
    need_coeffs(c, N);
    return diagonal_operator("B(N)", N, [&](int n) { return c.b_prev(n) * c.b_prev(n); });
}

FockOperator position_operator(const RecurrenceCoefficients& c, int N) {
    need_coeffs(c, N);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
    for (int n = 0; n < N; ++n) {
        m(n, n) = c.a[static_cast<size_t>(n)];
        if (n + 1 < N) m(n, n + 1) = m(n + 1, n) = c.b[static_cast<size_t>(n)];
    }
    return make("X", std::move(m), 1, N - 2);
}

FockOperator momentum_operator(const RecurrenceCoefficients& c, int N, cplx t) {
    check_unimodular(t);
    need_coeffs(c, N);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
    for (int n = 0; n < N; ++n) {
        m(n, n) = c.a[static_cast<size_t>(n)];
        if (n + 1 < N) {
            const double b = c.b[static_cast<size_t>(n)];
            m(n, n + 1) = b * t;
            m(n + 1, n) = b * std::conj(t);
        }
    }
    return make("P" + fmt_t(t), std::move(m), 1, N - 2);
}

FockOperator hamiltonian(const RecurrenceCoefficients& c, int N, cplx t) {
    const FockOperator X = position_operator(c, N);
    const FockOperator P = momentum_operator(c, N, t);
    return (X * X + P * P).relabel("H" + fmt_t(t));
}

Ladder ladder_operators(const RecurrenceCoefficients& c, int N) {
    need_coeffs(c, N);
    double bmax = 0.0;
    for (double b : c.b) bmax = std::max(bmax, b);
    if (!c.symmetric(1e-13 * std::max(1.0, bmax)))
        throw InvalidArgument("untilded ladder operators need symmetric coefficients (a = 0); use tilde_ladder");
    Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(N, N);
    for (int n = 0; n + 1 < N; ++n) up(n + 1, n) = std::sqrt(2.0) * c.b[static_cast<size_t>(n)];
    Eigen::MatrixXcd down = up.transpose();
    return {make("a+", std::move(up), 1, N - 2), make("a-", std::move(down), 1, N - 2)};
}

Tilde tilde_operators(const RecurrenceCoefficients& c, int N) {
    need_coeffs(c, N);
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(N, N), p = Eigen::MatrixXcd::Zero(N, N);
    for (int n = 0; n + 1 < N; ++n) {
        const double b = c.b[static_cast<size_t>(n)];
        x(n, n + 1) = x(n + 1, n) = b;
        p(n, n + 1) = cplx(0.0, b);
        p(n + 1, n) = cplx(0.0, -b);
    }
    FockOperator X = make("X~", std::move(x), 1, N - 2);
    FockOperator P = make("P~", std::move(p), 1, N - 2);
    FockOperator H = (X * X + P * P).relabel("H~");
    return {X, P, H};
}

Ladder tilde_ladder(const RecurrenceCoefficients& c, int N) {
    const Tilde t = tilde_operators(c, N);
    const double s = 1.0 / std::sqrt(2.0);
    FockOperator up = (s * (t.X + cplx(0.0, 1.0) * t.P)).relabel("a~+");
    FockOperator down = (s * (t.X - cplx(0.0, 1.0) * t.P)).relabel("a~-");
    return {up, down};
}

std::vector<double> energy_levels(const RecurrenceCoefficients& c, int count) {
    if (count < 0 || static_cast<size_t>(count) > c.size())
        throw InvalidArgument("energy_levels: need b_0..b_{count-1}");
    std::vector<double> out;
    for (int n = 0; n < count; ++n) {
        const double b = c.b[static_cast<size_t>(n)], bp = c.b_prev(n);
        out.push_back(2.0 * (bp * bp + b * b));
    }
    return out;
}

VerificationReport verify_oscillator_algebra(const RecurrenceCoefficients& c, int N,
                                             std::optional<AlgebraRelation> rel, double tol) {
    VerificationReport rep;
    rep.name = "oscillator-algebra";
    const Ladder L = ladder_operators(c, N);
    const FockOperator Nop = number_operator(N);
    const FockOperator BN = b_of_number(c, N);
    const FockOperator BN1 = diagonal_operator("B(N+I)", N, [&](int n) {
        const double b = c.b[static_cast<size_t>(n)];
        return b * b;
    });
    auto add = [&](const std::string& id, const std::string& tag, const FockOperator& lhs, const FockOperator& rhs) {
        const double r = valid_residual(lhs, rhs) / scale_of(rhs);
        VerificationItem& it = rep.add(id, tag, r, tol);
        if (!it.pass) it.failures = worst_entries(lhs, rhs);
    };
    add("algebra.commutator_B", "oscillator-algebra/commutator", commutator(L.minus, L.plus), 2.0 * (BN1 - BN));
    add("algebra.number_raise", "oscillator-algebra/number", commutator(Nop, L.plus), L.plus);
    add("algebra.number_lower", "oscillator-algebra/number", commutator(Nop, L.minus), -1.0 * L.minus);
    add("algebra.lower_raise_product", "oscillator-algebra/products", L.minus * L.plus, 2.0 * BN1);
    add("algebra.raise_lower_product", "oscillator-algebra/products", L.plus * L.minus, 2.0 * BN);
    add("algebra.adjoint", "oscillator-algebra/adjoint", L.minus, L.plus.adjoint());
    add("algebra.ladder_factorization", "oscillator-algebra/hamiltonian", hamiltonian(c, N, kDistinguishedT),
        L.plus * L.minus + L.minus * L.plus);
    if (rel) {
        const FockOperator C2 = diagonal_operator("2C(N)", N, [&](int n) { return 2.0 * rel->C(n); });
        add("algebra.deformed_relation", "oscillator-algebra/deformed-relation",
            L.minus * L.plus - rel->A * (L.plus * L.minus), C2);
    }
    return rep;
}

DeformationFunction DeformationFunction::q_bracket(double q) {
    if (!(q > 0) || q == 1.0) throw InvalidArgument("q-bracket needs q > 0, q != 1");
    return {Kind::QBracket, q, {}};
}

DeformationFunction DeformationFunction::sinh_family(double eta) {
    if (eta == 0.0) throw InvalidArgument("sinh family needs eta != 0");
    return {Kind::Sinh, eta, {}};
}

double DeformationFunction::operator()(double x) const {
    switch (kind) {
        case Kind::Linear: return x;
        case Kind::QBracket: return (std::pow(param, x) - std::pow(param, -x)) / (param - 1.0 / param);
        case Kind::Sinh: return std::sinh(param * x) / std::sinh(param);
        case Kind::Custom: return custom(x);
    }
    return x;
}

std::string DeformationFunction::name() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Linear: os << "linear"; break;
        case Kind::QBracket: os << "q-bracket(q=" << param << ")"; break;
        case Kind::Sinh: os << "sinh(eta=" << param << ")"; break;
        case Kind::Custom: os << "custom"; break;
    }
    return os.str();
}

RecurrenceCoefficients deformation_coefficients(const DeformationFunction& B, int n_max, double b0_squared) {
    const double B1 = B(1.0);
    std::vector<double> a(static_cast<size_t>(n_max) + 1, 0.0), b;
    for (int n = 0; n <= n_max; ++n) {
        const double v = B(n + 1.0) * b0_squared / B1;
        if (!(v > 0)) throw InvalidArgument("deformation gives nonpositive b_n^2 at n = " + std::to_string(n));
        b.push_back(std::sqrt(v));
    }
    return RecurrenceCoefficients(std::move(a), std::move(b));
}

namespace {

TensorOperator make_tensor(std::string label, Eigen::MatrixXcd m, int n, int v1, int v2, int bw1, int bw2) {
    TensorOperator t;
    t.matrix = std::move(m);
    t.n = n;
    t.valid1 = std::min(v1, n - 1);
    t.valid2 = std::min(v2, n - 1);
    t.bw1 = std::min(bw1, n - 1);
    t.bw2 = std::min(bw2, n - 1);
    t.label = std::move(label);
    return t;
}

void same_dim(const TensorOperator& A, const TensorOperator& B) {
    if (A.n != B.n) throw DimensionMismatch("tensor operators differ in dimension");
}

}  // namespace

TensorOperator kron(const FockOperator& A, const FockOperator& B) {
    same_dim(A, B);
    const int n = A.dim;
    Eigen::MatrixXcd m(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.block(i * n, j * n, n, n) = A.matrix(i, j) * B.matrix;
    return make_tensor(A.label + "(x)" + B.label, std::move(m), n, A.valid_cols, B.valid_cols, A.bandwidth,
                       B.bandwidth);
}

TensorOperator operator*(const TensorOperator& A, const TensorOperator& B) {
    same_dim(A, B);
    return make_tensor(A.label + B.label, A.matrix * B.matrix, A.n, std::min(B.valid1, A.valid1 - B.bw1),
                       std::min(B.valid2, A.valid2 - B.bw2), A.bw1 + B.bw1, A.bw2 + B.bw2);
}

TensorOperator operator+(const TensorOperator& A, const TensorOperator& B) {
    same_dim(A, B);
    return make_tensor("(" + A.label + "+" + B.label + ")", A.matrix + B.matrix, A.n, std::min(A.valid1, B.valid1),
                       std::min(A.valid2, B.valid2), std::max(A.bw1, B.bw1), std::max(A.bw2, B.bw2));
}

TensorOperator operator-(const TensorOperator& A, const TensorOperator& B) {
    same_dim(A, B);
    return make_tensor("(" + A.label + "-" + B.label + ")", A.matrix - B.matrix, A.n, std::min(A.valid1, B.valid1),
                       std::min(A.valid2, B.valid2), std::max(A.bw1, B.bw1), std::max(A.bw2, B.bw2));
}

TensorOperator operator*(double s, const TensorOperator& A) {
    TensorOperator r = A;
    r.matrix *= s;
    return r;
}

TensorOperator commutator(const TensorOperator& A, const TensorOperator& B) {
    TensorOperator r = A * B - B * A;
    r.label = "[" + A.label + "," + B.label + "]";
    return r;
}

SuPhi2 su_phi2_generators(const DeformationFunction& B, int N, const RecurrenceCoefficients& c,
                          double consistency_tol) {
    need_coeffs(c, N);
    const double b02 = c.b[0] * c.b[0], B1 = B(1.0);
    for (int n = 0; n < N; ++n) {
        const double want = B(n + 1.0) * b02 / B1;
        const double have = c.b[static_cast<size_t>(n)] * c.b[static_cast<size_t>(n)];
        if (std::abs(have - want) > consistency_tol * std::max(1.0, std::abs(want)))
            throw InvalidArgument("coefficients inconsistent with deformation " + B.name() + " at n = " +
                                  std::to_string(n));
    }
    const Ladder L = ladder_operators(c, N);
    const FockOperator I = identity_operator(N), Nop = number_operator(N);
    SuPhi2 g;
    g.J_plus = kron(L.plus, L.minus);
    g.J_plus.label = "J+";
    g.J_minus = kron(L.minus, L.plus);
    g.J_minus.label = "J-";
    g.J_z = 0.5 * (kron(Nop, I) - kron(I, Nop));
    g.J_z.label = "Jz";
    return g;
}

VerificationReport verify_su_phi2(const DeformationFunction& B, int N, const RecurrenceCoefficients& c, double tol) {
    const SuPhi2 g = su_phi2_generators(B, N, c);
    VerificationReport rep;
    rep.name = "su-phi-2";
    const double b02 = c.b[0] * c.b[0], B1 = B(1.0);
    const double s = 4.0 * (b02 / B1) * (b02 / B1);

    // residual per Cz sector over valid tensor columns
    auto sector_residuals = [&](const TensorOperator& lhs, const Eigen::MatrixXcd& rhs,
                                int v1, int v2) -> std::map<int, double> {
        std::map<int, double> out;
        for (int n1 = 0; n1 <= v1; ++n1)
            for (int n2 = 0; n2 <= v2; ++n2) {
                const int col = n1 * N + n2;
                double r = 0.0;
                for (int row = 0; row < N * N; ++row) r = std::max(r, std::abs(lhs.matrix(row, col) - rhs(row, col)));
                double& slot = out[n1 + n2];
                slot = std::max(slot, r);
            }
        return out;
    };
    auto add_sectors = [&](const std::string& id, const std::string& tag, const TensorOperator& lhs,
                           const Eigen::MatrixXcd& rhs, int v1, int v2, ItemKind kind) {
        const auto sec = sector_residuals(lhs, rhs, v1, v2);
        double worst = 0.0;
        std::ostringstream note;
        note << "valid columns n1<=" << v1 << ", n2<=" << v2 << "; per Cz:";
        for (const auto& [cz, r] : sec) {
            worst = std::max(worst, r);
            note << " " << cz << ":" << r;
        }
        rep.add(id, tag, worst, tol, kind, Compare::AtMost, note.str());
    };

    const TensorOperator zp = commutator(g.J_z, g.J_plus);
    add_sectors("su2.jz_jplus", "su-phi-2/cartan", zp, g.J_plus.matrix, std::min(zp.valid1, g.J_plus.valid1),
                std::min(zp.valid2, g.J_plus.valid2), ItemKind::Check);
    const TensorOperator zm = commutator(g.J_z, g.J_minus);
    add_sectors("su2.jz_jminus", "su-phi-2/cartan", zm, -g.J_minus.matrix, std::min(zm.valid1, g.J_minus.valid1),
                std::min(zm.valid2, g.J_minus.valid2), ItemKind::Check);

    const TensorOperator pm = commutator(g.J_plus, g.J_minus);
    Eigen::MatrixXcd op2 = Eigen::MatrixXcd::Zero(N * N, N * N), lit = op2;
    for (int n1 = 0; n1 < N; ++n1)
        for (int n2 = 0; n2 < N; ++n2) {
            const int k = n1 * N + n2;
            op2(k, k) = s * B(static_cast<double>(n1 - n2));
            lit(k, k) = 2.0 * B(0.5 * static_cast<double>(n1 - n2));
        }
    add_sectors("su2.jplus_jminus", "su-phi-2/commutator", pm, op2, pm.valid1, pm.valid2, ItemKind::Check);
    add_sectors("su2.jplus_jminus_literal_2B(Jz)", "su-phi-2/commutator-printed", pm, lit, pm.valid1, pm.valid2,
                ItemKind::Informational);
    return rep;
}

double check_functional_equation(const DeformationFunction& f, const std::vector<std::pair<double, double>>& grid) {
    double worst = 0.0;
    for (const auto& [x, y] : grid)
        worst = std::max(worst, std::abs(f(x) * f(y + 1.0) - f(y) * f(x + 1.0) - f(x - y)));
    return worst;
}

std::vector<std::pair<double, double>> square_grid(double lo, double hi, int points) {
    std::vector<std::pair<double, double>> g;
    for (int i = 0; i < points; ++i)
        for (int j = 0; j < points; ++j) {
            const double x = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
            const double y = points == 1 ? lo : lo + (hi - lo) * j / (points - 1);
            g.emplace_back(x, y);
        }
    return g;
}

}  // namespace gosc
