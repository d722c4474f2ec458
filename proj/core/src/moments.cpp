#include "gosc/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gosc/errors.hpp"
#include "gosc/quadrature.hpp"

namespace gosc {

std::vector<double> MomentSequence::to_double() const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v.to_double());
    return out;
}

namespace {

double two_pow(long e) { return std::ldexp(1.0, static_cast<int>(e)); }

// Which half of a symmetric family's support the measure covers: 0 full, +1 right, -1 left, 2 other.
int family_side(const MeasureSpec& m, const FamilySpec& f) {
    if (m.lower == f.lower() && m.upper == f.upper()) return 0;
    if (!f.symmetric()) return 2;
    if (m.lower == 0.0 && m.upper == f.upper()) return 1;
    if (m.lower == f.lower() && m.upper == 0.0) return -1;
    return 2;
}

void normalize(MomentSequence& ms, const MeasureSpec& m, const mp::Real& raw_mass, double mass_tol) {
    if (m.normalization) {
        const double mass = raw_mass.to_double() * *m.normalization;
        if (std::abs(mass - 1.0) > mass_tol)
            throw InvalidArgument("measure is not normalized: total mass " + std::to_string(mass));
    }
    for (auto& v : ms.values) v /= raw_mass;
    ms.values[0] = mp::Real(1.0, ms.precision_bits);
}

void check_symmetry(const MomentSequence& ms, const std::vector<mp::Real>& absolute, double tol) {
    for (int k = 1; k <= ms.K; k += 2) {
        const size_t i = static_cast<size_t>(k);
        if (mp::abs(ms.values[i]) > absolute[i] * std::max(tol, 1e-300))
            throw SymmetryMismatch("measure claims symmetry but moment " + std::to_string(k) + " is " +
                                   ms.values[i].to_string(8));
    }
}

// Lagrange interpolant of tabulated samples, extended precision.
mp::Real tabulated_value_mp(const TabulatedWeight& t, const mp::Real& x, size_t interval) {
    const size_t n = t.x.size();
    const size_t p = static_cast<size_t>(t.order);
    long start = static_cast<long>(interval) - static_cast<long>((p - 1) / 2);
    start = std::clamp<long>(start, 0, static_cast<long>(n - 1 - p));
    const long bits = x.bits();
    mp::Real sum(bits);
    for (size_t j = 0; j <= p; ++j) {
        const size_t jj = static_cast<size_t>(start) + j;
        mp::Real l(1.0, bits);
        for (size_t k = 0; k <= p; ++k) {
            const size_t kk = static_cast<size_t>(start) + k;
            if (k != j) l *= (x - t.x[kk]) / (t.x[jj] - t.x[kk]);
        }
        sum += l * t.w[jj];
    }
    return sum;
}

std::vector<mp::Real> tabulated_raw(const MeasureSpec& m, const TabulatedWeight& t, int K, long bits, int points) {
    const quad::MpRule gl = quad::gauss_legendre_mp(points, bits);
    std::vector<mp::Real> acc(static_cast<size_t>(K) + 1, mp::Real(bits));
    for (size_t k = 0; k + 1 < t.x.size(); ++k) {
        const double lo = std::max(t.x[k], m.lower), hi = std::min(t.x[k + 1], m.upper);
        if (!(hi > lo)) continue;
        const mp::Real c = (mp::Real(hi, bits) - mp::Real(lo, bits)) / 2.0;
        const mp::Real mid = (mp::Real(hi, bits) + mp::Real(lo, bits)) / 2.0;
        for (size_t q = 0; q < gl.x.size(); ++q) {
            const mp::Real x = mid + c * gl.x[q];
            mp::Real term = c * gl.w[q] * tabulated_value_mp(t, x, k);
            for (int j = 0; j <= K; ++j) {
                acc[static_cast<size_t>(j)] += term;
                term *= x;
            }
        }
    }
    return acc;
}

MomentSequence tabulated_moments(const MeasureSpec& m, const TabulatedWeight& t, int K, long bits,
                                 const MomentOptions& opt, double tol) {
    const int points = (t.order + K + 1) / 2 + 2;
    std::vector<mp::Real> r1 = tabulated_raw(m, t, K, bits, points);
    std::vector<mp::Real> r2 = tabulated_raw(m, t, K, bits, points + 4);
    for (int k = 0; k <= K; ++k) {
        const size_t i = static_cast<size_t>(k);
        const mp::Real scale = mp::max(mp::abs(r2[i]), mp::abs(r2[0]));
        if (mp::abs(r1[i] - r2[i]) > scale * tol)
            throw QuadratureError("tabulated moment " + std::to_string(k) + " did not converge");
    }
    const mp::Real raw_mass = r2[0];
    if (!(raw_mass > 0)) throw InvalidArgument("tabulated weight has zero mass");
    MomentSequence ms{std::move(r2), K, bits, tol, m.symmetric};
    normalize(ms, m, raw_mass, opt.mass_tolerance);
    return ms;
}

// Double-exponential quadrature of x^k w(x), k = 0..K, all orders on one node set.
MomentSequence quadrature_moments(const MeasureSpec& m, int K, long bits, const MomentOptions& opt, double tol) {
    const FamilyWeight* fam = std::get_if<FamilyWeight>(&m.weight);
    const mp::Real fam_mass = fam ? family_mass_mp(fam->family, bits) : mp::Real(1.0, bits);
    const mp::Real scale(m.normalization.value_or(1.0), bits);
    MeasureSpec unscaled = m;
    unscaled.normalization = 1.0;
    const bool inf_lo = !std::isfinite(m.lower), inf_hi = !std::isfinite(m.upper);
    const size_t n = static_cast<size_t>(K) + 1;

    std::vector<mp::Real> prev;
    for (int level = opt.min_level; level <= opt.max_level; ++level) {
        const std::vector<quad::MpNode> nodes = quad::de_nodes_mp(m.lower, m.upper, level, bits);
        std::vector<mp::Real> acc(n, mp::Real(bits)), absacc(n, mp::Real(bits));
        std::vector<mp::Real> first(n, mp::Real(bits)), last(n, mp::Real(bits));
        for (size_t q = 0; q < nodes.size(); ++q) {
            const quad::MpNode& nd = nodes[q];
            mp::Real dens(bits);
            if (fam) {
                mp::Real fdl = (m.lower == fam->family.lower()) ? nd.dl : nd.x - fam->family.lower();
                mp::Real fdr = (m.upper == fam->family.upper()) ? nd.dr : fam->family.upper() - nd.x;
                dens = family_weight_unnormalized_mp(fam->family, nd.x, fdl, fdr);
            } else {
                dens = weight_density_mp(unscaled, nd.x, nd.dl, nd.dr);
            }
            if (!dens.is_finite()) throw QuadratureError("weight not finite at a quadrature node");
            if (dens < 0.0) throw InvalidArgument("weight is negative on the support");
            mp::Real term = nd.w * dens;
            mp::Real aterm = term;
            const mp::Real ax = mp::abs(nd.x);
            for (size_t j = 0; j < n; ++j) {
                acc[j] += term;
                absacc[j] += aterm;
                if (q == 0) first[j] = aterm;
                if (q + 1 == nodes.size()) last[j] = aterm;
                term *= nd.x;
                aterm *= ax;
            }
        }
        for (size_t j = 0; j < n; ++j) {
            if (!absacc[j].is_finite() || !acc[j].is_finite())
                throw DivergentMoment(static_cast<int>(j), "moment " + std::to_string(j) + " diverges");
            const mp::Real lim = absacc[j] * tol;
            if ((inf_lo && first[j] > lim) || (inf_hi && last[j] > lim))
                throw DivergentMoment(static_cast<int>(j), "moment " + std::to_string(j) +
                                                               " diverges: weight decays too slowly");
        }
        if (!prev.empty()) {
            bool ok = true;
            for (size_t j = 0; j < n && ok; ++j)
                ok = mp::abs(acc[j] - prev[j]) <= absacc[j] * tol;
            if (ok) {
                MomentSequence ms{acc, K, bits, tol, m.symmetric};
                const mp::Real raw_mass = acc[0];
                if (!(raw_mass > 0)) throw InvalidArgument("weight has zero mass");
                if (m.symmetric) check_symmetry(ms, absacc, std::max(tol, 1e-30) * 16);
                if (fam && m.normalization) {
                    const double mass = (raw_mass / fam_mass * scale).to_double();
                    if (std::abs(mass - 1.0) > opt.mass_tolerance)
                        throw InvalidArgument("measure is not normalized: total mass " + std::to_string(mass));
                    for (auto& v : ms.values) v /= raw_mass;
                    ms.values[0] = mp::Real(1.0, bits);
                } else {
                    normalize(ms, m, raw_mass, opt.mass_tolerance);
                }
                return ms;
            }
        }
        prev = std::move(acc);
    }
    throw QuadratureError("moment quadrature did not converge by level " + std::to_string(opt.max_level));
}

}  // namespace

bool has_closed_form_moments(const MeasureSpec& m) {
    if (m.is_discrete()) return true;
    const auto* f = std::get_if<FamilyWeight>(&m.weight);
    if (!f) return false;
    const int side = family_side(m, f->family);
    return side != 2;
}

MomentSequence closed_form_moments(const FamilySpec& f, int K, long bits, int side) {
    f.validate();
    if (K < 0) throw InvalidArgument("moment order must be nonnegative");
    if (side != 0 && !f.symmetric()) throw InvalidArgument("half-line closed forms need a symmetric family");
    const long wb = bits + 2L * K + 32;  // guard bits for the alternating Jacobi sum
    std::vector<mp::Real> mu(static_cast<size_t>(K) + 1, mp::Real(wb));
    mu[0] = mp::Real(1.0, wb);
    const double alpha = f.alpha;
    switch (f.tag) {
        case FamilyTag::Hermite:
            for (int k = 2; k <= K; k += 2)
                mu[static_cast<size_t>(k)] = mu[static_cast<size_t>(k - 2)] * (k - 1.0) / 2.0;
            break;
        case FamilyTag::Legendre:
        case FamilyTag::Gegenbauer:
        case FamilyTag::ChebyshevT:
        case FamilyTag::ChebyshevU:
            for (int k = 2; k <= K; k += 2)
                mu[static_cast<size_t>(k)] =
                    mu[static_cast<size_t>(k - 2)] * (k - 1.0) / (mp::Real(k + 1.0, wb) + 2.0 * alpha);
            break;
        case FamilyTag::Laguerre:
            for (int k = 1; k <= K; ++k)
                mu[static_cast<size_t>(k)] = mu[static_cast<size_t>(k - 1)] * (mp::Real(alpha, wb) + k);
            break;
        case FamilyTag::Jacobi: {
            // u = (1+x)/2 is Beta(beta+1, alpha+1): E[u^j] = (beta+1)_j / (alpha+beta+2)_j
            const mp::Real ra(alpha, wb), rb(f.beta, wb);
            std::vector<mp::Real> eu(static_cast<size_t>(K) + 1, mp::Real(wb));
            eu[0] = mp::Real(1.0, wb);
            for (int j = 1; j <= K; ++j)
                eu[static_cast<size_t>(j)] = eu[static_cast<size_t>(j - 1)] * (rb + static_cast<double>(j)) / (ra + rb + (j + 1.0));
            for (int k = 1; k <= K; ++k) {
                mp::Real s(wb), binom(1.0, wb), p2(1.0, wb);
                for (int j = 0; j <= k; ++j) {
                    const bool neg = ((k - j) % 2) != 0;
                    mp::Real term = binom * p2 * eu[static_cast<size_t>(j)];
                    if (neg) s -= term;
                    else s += term;
                    binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
                    p2 *= 2.0;
                }
                mu[static_cast<size_t>(k)] = s;
            }
            break;
        }
    }
    if (side != 0) {
        // moments of the doubled restriction: even orders unchanged, odd orders by recursion
        mp::Real odd(wb);
        const mp::Real sqrt_pi = mp::sqrt(mp::pi(wb));
        if (f.tag == FamilyTag::Hermite) {
            odd = 1.0 / sqrt_pi;
        } else {
            const mp::Real ra(alpha, wb);
            odd = mp::gamma(ra + 1.5) / (sqrt_pi * mp::gamma(ra + 2.0));
        }
        for (int k = 1; k <= K; k += 2) {
            mu[static_cast<size_t>(k)] = side > 0 ? odd : -odd;
            if (f.tag == FamilyTag::Hermite) odd = odd * (k + 1.0) / 2.0;
            else odd = odd * (k + 1.0) / (mp::Real(k + 3.0, wb) + 2.0 * alpha);
        }
    }
    MomentSequence ms;
    ms.K = K;
    ms.precision_bits = bits;
    ms.accuracy = two_pow(-bits);
    ms.symmetric = f.symmetric() && side == 0;
    for (auto& v : mu) ms.values.push_back(v.with_bits(bits));
    return ms;
}

MomentSequence compute_moments(const MeasureSpec& m, int K, long bits, MomentOptions opt) {
    if (K < 0) throw InvalidArgument("moment order must be nonnegative");
    if (bits < 32) throw InvalidArgument("precision_bits must be at least 32");
    m.validate();
    const double tol = opt.tolerance > 0 ? opt.tolerance : two_pow(-(bits - 24));

    if (auto* d = std::get_if<DiscreteWeight>(&m.weight)) {
        std::vector<mp::Real> acc(static_cast<size_t>(K) + 1, mp::Real(bits));
        for (size_t i = 0; i < d->atoms.size(); ++i) {
            if (d->atoms[i] < m.lower || d->atoms[i] > m.upper) continue;
            const mp::Real x(d->atoms[i], bits);
            mp::Real term(d->masses[i], bits);
            for (int k = 0; k <= K; ++k) {
                acc[static_cast<size_t>(k)] += term;
                term *= x;
            }
        }
        MomentSequence ms{acc, K, bits, two_pow(-bits), m.symmetric};
        normalize(ms, m, acc[0], opt.mass_tolerance);
        if (m.symmetric) {
            std::vector<mp::Real> scale(static_cast<size_t>(K) + 1, mp::Real(bits));
            for (size_t i = 0; i < d->atoms.size(); ++i) {
                const mp::Real ax(std::abs(d->atoms[i]), bits);
                mp::Real term = mp::Real(d->masses[i], bits) / acc[0];
                for (int k = 0; k <= K; ++k) {
                    scale[static_cast<size_t>(k)] += term;
                    term *= ax;
                }
            }
            check_symmetry(ms, scale, 1e-12);
        }
        return ms;
    }

    if (auto* f = std::get_if<FamilyWeight>(&m.weight)) {
        const int side = family_side(m, f->family);
        const bool closed = opt.method != MomentMethod::Quadrature && side != 2;
        if (opt.method == MomentMethod::ClosedForm && side == 2)
            throw InvalidArgument("no closed-form moments for this restriction");
        if (closed) {
            MomentSequence ms = closed_form_moments(f->family, K, bits, side);
            const double expect = side == 0 ? 1.0 : 0.5;
            if (m.normalization && std::abs(*m.normalization * expect - 1.0) > opt.mass_tolerance)
                throw InvalidArgument("measure is not normalized: total mass " +
                                      std::to_string(*m.normalization * expect));
            ms.symmetric = m.symmetric;
            return ms;
        }
        return quadrature_moments(m, K, bits, opt, tol);
    }
    if (opt.method == MomentMethod::ClosedForm) throw InvalidArgument("no closed-form moments for this measure");
    if (auto* t = std::get_if<TabulatedWeight>(&m.weight)) {
        MomentSequence ms = tabulated_moments(m, *t, K, bits, opt, tol);
        if (m.symmetric) {
            std::vector<mp::Real> scale;
            for (int k = 0; k <= K; ++k) {
                const int ke = k % 2 == 0 ? k : k - 1;
                const int ko = k % 2 == 0 ? k : std::min(k + 1, K);
                scale.push_back(mp::sqrt(mp::abs(ms.values[static_cast<size_t>(ke)] *
                                                 ms.values[static_cast<size_t>(ko)])) + 1e-300);
            }
            check_symmetry(ms, scale, 1e-10);
        }
        return ms;
    }
    return quadrature_moments(m, K, bits, opt, tol);
}

std::vector<mp::Real> hankel_determinants(const MomentSequence& ms, int n) {
    if (2 * n - 2 > ms.K) throw InvalidArgument("hankel_determinants: not enough moments");
    const long bits = ms.precision_bits;
    std::vector<std::vector<mp::Real>> H(static_cast<size_t>(n), std::vector<mp::Real>(static_cast<size_t>(n), mp::Real(bits)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) H[static_cast<size_t>(i)][static_cast<size_t>(j)] = ms.values[static_cast<size_t>(i + j)];
    std::vector<mp::Real> dets;
    mp::Real det(1.0, bits);
    for (int k = 0; k < n; ++k) {
        const size_t kk = static_cast<size_t>(k);
        const mp::Real piv = H[kk][kk];
        det *= piv;
        dets.push_back(det);
        if (piv.is_zero()) {
            for (int r = k + 1; r < n; ++r) dets.push_back(mp::Real(bits));
            break;
        }
        for (int i = k + 1; i < n; ++i) {
            const size_t ii = static_cast<size_t>(i);
            const mp::Real f = H[ii][kk] / piv;
            for (int j = k; j < n; ++j) H[ii][static_cast<size_t>(j)] -= f * H[kk][static_cast<size_t>(j)];
        }
    }
    return dets;
}

bool hankel_positive(const MomentSequence& ms, int n) {
    for (const auto& d : hankel_determinants(ms, n))
        if (!(d > 0.0)) return false;
    return true;
}

namespace {

struct Chebyshev {
    std::vector<mp::Real> a, b;
    std::vector<std::vector<mp::Real>> table;
};

// Chebyshev algorithm on the A_{k,n} table. zero_diag forces a_n = 0 (symmetric scheme).
Chebyshev chebyshev_algorithm(const std::vector<mp::Real>& mu, int n_max, long bits, bool zero_diag) {
    const int K = 2 * n_max + 2;
    Chebyshev r;
    std::vector<mp::Real> row_prev;  // A_{., n-1}
    std::vector<mp::Real> row(static_cast<size_t>(K) + 1, mp::Real(bits));
    for (int k = 0; k <= K; ++k) {
        mp::Real v = mu[static_cast<size_t>(k)].with_bits(bits);
        if (zero_diag && k % 2 == 1) v = mp::Real(bits);
        row[static_cast<size_t>(k)] = std::move(v);
    }
    const mp::Real eps = mp::pow(mp::Real(2.0, bits), -(bits - 16));
    for (int n = 0; n <= n_max; ++n) {
        const size_t un = static_cast<size_t>(n);
        const mp::Real& Ann = row[un];
        mp::Real bprev = n > 0 ? r.b[un - 1] : mp::Real(bits);
        auto prev_at = [&](int k) -> mp::Real {
            if (n == 0 || k < 0 || static_cast<size_t>(k) >= row_prev.size()) return mp::Real(bits);
            return row_prev[static_cast<size_t>(k)];
        };
        mp::Real an(bits);
        if (!zero_diag) an = (row[un + 1] - bprev * prev_at(n)) / Ann;
        const mp::Real num = row[un + 2] - an * row[un + 1] - bprev * prev_at(n + 1);
        const mp::Real b2 = num / Ann;
        const mp::Real scale = mp::abs(row[un + 2] / Ann) + an * an;
        if (!(b2 > scale * eps) || !b2.is_finite())
            throw NonpositivePivot(n, "nonpositive pivot at recurrence index " + std::to_string(n) +
                                          ": moments are not those of a positive measure with enough support points");
        mp::Real bn = mp::sqrt(b2);
        // next row A_{k, n+1}, k = n+1 .. K-n-1
        std::vector<mp::Real> next(static_cast<size_t>(K) + 1, mp::Real(bits));
        for (int k = n + 1; k <= K - n - 1; ++k) {
            const size_t uk = static_cast<size_t>(k);
            next[uk] = (row[uk + 1] - an * row[uk] - bprev * prev_at(k)) / bn;
        }
        r.a.push_back(std::move(an));
        r.b.push_back(std::move(bn));
        r.table.push_back(row);
        row_prev = std::move(row);
        row = std::move(next);
    }
    r.table.push_back(row);
    return r;
}

double relative_spread(const std::vector<mp::Real>& hi, const std::vector<mp::Real>& lo,
                       const std::vector<mp::Real>& scale) {
    double worst = 0.0;
    for (size_t i = 0; i < hi.size(); ++i) {
        const mp::Real d = mp::abs(hi[i] - lo[i].with_bits(hi[i].bits()));
        const mp::Real s = mp::abs(scale[i]);
        worst = std::max(worst, s.is_zero() ? d.to_double() : (d / s).to_double());
    }
    return worst;
}

double forward_error(const std::vector<mp::Real>& mu, int n_max, long bits, bool zero_diag,
                     const Chebyshev& full, double accuracy, long& low_bits) {
    low_bits = std::max<long>(64, (3 * bits) / 4);
    if (low_bits >= bits) low_bits = bits / 2;
    std::vector<mp::Real> mu_low;
    for (const auto& v : mu) mu_low.push_back(v.with_bits(low_bits));
    Chebyshev low;
    try {
        low = chebyshev_algorithm(mu_low, n_max, low_bits, zero_diag);
    } catch (const NonpositivePivot&) {
        return std::numeric_limits<double>::infinity();
    }
    std::vector<mp::Real> scale_a;
    for (size_t i = 0; i < full.a.size(); ++i) scale_a.push_back(mp::max(mp::abs(full.a[i]), full.b[i]));
    const double spread = std::max(relative_spread(full.a, low.a, scale_a), relative_spread(full.b, low.b, full.b));
    // the low solve sees input perturbations of 2^-low_bits; rescale to the actual input accuracy
    const double amplification = spread / std::ldexp(1.0, static_cast<int>(-low_bits));
    return amplification * std::max(accuracy, std::ldexp(1.0, static_cast<int>(-bits)));
}

void require_moments(const MomentSequence& ms, int n_max) {
    if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
    if (ms.K < 2 * n_max + 2)
        throw InvalidArgument("solver needs moments through order " + std::to_string(2 * n_max + 2) + ", have " +
                              std::to_string(ms.K));
}

[[noreturn]] void exhausted(double estimate, double tol, long bits) {
    const double need = std::isfinite(estimate) ? std::log2(estimate / tol) : static_cast<double>(bits);
    const long required = bits + static_cast<long>(std::ceil(std::max(need, 1.0))) + 16;
    throw PrecisionExhausted(required, estimate,
                             "estimated forward error " + std::to_string(estimate) + " exceeds tolerance; rerun with at least " +
                                 std::to_string(required) + " bits");
}

}  // namespace

RecurrenceCoefficients SymmetricSolution::coefficients() const {
    return RecurrenceCoefficients(std::vector<double>(b_double.size(), 0.0), b_double, Provenance::SolvedFromMoments);
}

SymmetricSolution solve_symmetric_recurrence(const MomentSequence& ms, int n_max, SolverOptions opt) {
    require_moments(ms, n_max);
    const long bits = ms.precision_bits;
    Chebyshev c = chebyshev_algorithm(ms.values, n_max, bits, true);
    SymmetricSolution s;
    s.precision_bits = bits;
    if (opt.estimate_error) {
        long low = 0;
        s.error_estimate = forward_error(ms.values, n_max, bits, true, c, ms.accuracy, low);
        if (!(s.error_estimate <= opt.tolerance)) exhausted(s.error_estimate, opt.tolerance, bits);
    }
    s.b = std::move(c.b);
    for (const auto& v : s.b) s.b_double.push_back(v.to_double());
    return s;
}

NonsymmetricSolution solve_nonsymmetric_recurrence(const MomentSequence& ms, int n_max, SolverOptions opt) {
    require_moments(ms, n_max);
    const long bits = ms.precision_bits;
    Chebyshev c = chebyshev_algorithm(ms.values, n_max, bits, false);
    NonsymmetricSolution s;
    s.precision_bits = bits;
    if (ms.symmetric) {
        for (size_t i = 0; i < c.a.size(); ++i)
            if (mp::abs(c.a[i]) > c.b[i] * opt.symmetry_tolerance)
                throw SymmetryMismatch("moments claim symmetry but a_" + std::to_string(i) + " = " +
                                       c.a[i].to_string(8));
    }
    if (opt.estimate_error) {
        long low = 0;
        s.error_estimate = forward_error(ms.values, n_max, bits, false, c, ms.accuracy, low);
        if (!(s.error_estimate <= opt.tolerance)) exhausted(s.error_estimate, opt.tolerance, bits);
    }
    std::vector<double> a, b;
    for (const auto& v : c.a) a.push_back(v.to_double());
    for (const auto& v : c.b) b.push_back(v.to_double());
    s.coeffs = RecurrenceCoefficients(std::move(a), std::move(b), Provenance::SolvedFromMoments);
    s.a = std::move(c.a);
    s.b = std::move(c.b);
    s.table = std::move(c.table);
    return s;
}

std::vector<mp::Real> walk_sums(const std::vector<mp::Real>& a, const std::vector<mp::Real>& b, int K, long bits) {
    const size_t m = b.size() + 1;
    std::vector<mp::Real> v(m, mp::Real(bits)), w(m, mp::Real(bits));
    v[0] = mp::Real(1.0, bits);
    std::vector<mp::Real> out;
    out.push_back(v[0]);
    for (int k = 1; k <= K; ++k) {
        for (size_t i = 0; i < m; ++i) {
            mp::Real s = i < a.size() ? a[i] * v[i] : mp::Real(bits);
            if (i > 0) s += b[i - 1] * v[i - 1];
            if (i + 1 < m) s += b[i] * v[i + 1];
            w[i] = std::move(s);
        }
        std::swap(v, w);
        out.push_back(v[0]);
    }
    return out;
}

std::vector<double> walk_sums(const std::vector<double>& a, const std::vector<double>& b, int K) {
    const size_t m = b.size() + 1;
    std::vector<double> v(m, 0.0), w(m, 0.0), out;
    v[0] = 1.0;
    out.push_back(1.0);
    for (int k = 1; k <= K; ++k) {
        for (size_t i = 0; i < m; ++i) {
            double s = i < a.size() ? a[i] * v[i] : 0.0;
            if (i > 0) s += b[i - 1] * v[i - 1];
            if (i + 1 < m) s += b[i] * v[i + 1];
            w[i] = s;
        }
        std::swap(v, w);
        out.push_back(v[0]);
    }
    return out;
}

Symmetrization symmetrize_two_sequence(const std::vector<double>& b, const std::vector<double>& c) {
    const size_t n = std::min(b.size(), c.empty() ? size_t{0} : c.size() - 1);
    Symmetrization s;
    s.gamma.push_back(1.0);
    double ratio = 1.0;
    for (size_t j = 0; j < n; ++j) {
        const double p = b[j] * c[j + 1];
        if (!(p > 0)) throw SignViolation(static_cast<int>(j), "b_j c_{j+1} must be positive at j = " + std::to_string(j));
        s.d.push_back(std::sqrt(p));
        ratio *= c[j + 1] / b[j];
        s.gamma.push_back(std::sqrt(ratio));
    }
    return s;
}

bool is_canonical_heisenberg(const std::vector<double>& b, double tol) {
    if (b.empty()) throw InvalidArgument("is_canonical_heisenberg: empty sequence");
    const double b02 = b[0] * b[0];
    for (size_t n = 0; n < b.size(); ++n) {
        const double target = static_cast<double>(n + 1) * b02;
        if (std::abs(b[n] * b[n] - target) > tol * target) return false;
    }
    return true;
}

}  // namespace gosc
