#include "gosc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gosc/errors.hpp"

namespace gosc {

namespace {

// d0^2 of the Jacobi weight (1-x)^a (1+x)^b: 2^(a+b+1) Gamma(a+1) Gamma(b+1) / Gamma(a+b+2).
double jacobi_mass(double a, double b) {
    return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(a + b + 2.0));
}

mp::Real jacobi_mass_mp(double a, double b, long bits) {
    mp::Real ra(a, bits), rb(b, bits);
    mp::Real two(2.0, bits);
    return mp::pow(two, ra + rb + 1.0) * mp::gamma(ra + 1.0) * mp::gamma(rb + 1.0) / mp::gamma(ra + rb + 2.0);
}

// Distances to the family's own endpoints, given distances to the measure's support endpoints.
void family_complements(const FamilySpec& f, double lo, double hi, const mp::Real& x, const mp::Real& dl,
                        const mp::Real& dr, mp::Real& fdl, mp::Real& fdr) {
    fdl = (lo == f.lower()) ? dl : x - f.lower();
    fdr = (hi == f.upper()) ? dr : f.upper() - x;
}

}  // namespace

MeasureSpec MeasureSpec::family(const FamilySpec& f) {
    f.validate();
    MeasureSpec m;
    m.lower = f.lower();
    m.upper = f.upper();
    m.weight = FamilyWeight{f};
    m.normalization = 1.0;
    m.symmetric = f.symmetric();
    return m;
}

MeasureSpec MeasureSpec::tabulated(std::vector<double> x, std::vector<double> w, int order, bool symmetric) {
    MeasureSpec m;
    if (x.empty()) throw InvalidArgument("tabulated weight needs samples");
    m.lower = x.front();
    m.upper = x.back();
    m.weight = TabulatedWeight{std::move(x), std::move(w), order};
    m.symmetric = symmetric;
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::discrete(std::vector<double> atoms, std::vector<double> masses, bool symmetric) {
    MeasureSpec m;
    if (atoms.empty()) throw InvalidArgument("discrete measure needs atoms");
    m.lower = *std::min_element(atoms.begin(), atoms.end());
    m.upper = *std::max_element(atoms.begin(), atoms.end());
    m.weight = DiscreteWeight{std::move(atoms), std::move(masses)};
    m.symmetric = symmetric;
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::custom(double lower, double upper, MpDensity mpd, DoubleDensity dbl, bool symmetric,
                                std::optional<double> normalization) {
    MeasureSpec m;
    m.lower = lower;
    m.upper = upper;
    m.weight = CustomWeight{std::move(mpd), std::move(dbl), "custom"};
    m.symmetric = symmetric;
    m.normalization = normalization;
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::restricted(double lo, double hi, double scale) const {
    if (!(lo < hi) || lo < lower || hi > upper) throw InvalidArgument("restriction outside support");
    if (!(scale > 0)) throw InvalidArgument("restriction scale must be positive");
    MeasureSpec m = *this;
    m.lower = lo;
    m.upper = hi;
    m.symmetric = false;
    if (auto* d = std::get_if<DiscreteWeight>(&m.weight)) {
        DiscreteWeight r;
        for (size_t i = 0; i < d->atoms.size(); ++i) {
            if (d->atoms[i] >= lo && d->atoms[i] <= hi) {
                r.atoms.push_back(d->atoms[i]);
                r.masses.push_back(d->masses[i] * scale);
            }
        }
        if (r.atoms.empty()) throw InvalidArgument("restriction contains no atoms");
        m.weight = r;
        m.normalization = 1.0;
        return m;
    }
    m.normalization = normalization.value_or(1.0) * scale;
    return m;
}

std::string MeasureSpec::describe() const {
    std::ostringstream os;
    if (auto* f = std::get_if<FamilyWeight>(&weight)) os << "family " << f->family.label();
    else if (std::holds_alternative<TabulatedWeight>(weight)) os << "tabulated";
    else if (std::holds_alternative<DiscreteWeight>(weight)) os << "discrete";
    else os << std::get<CustomWeight>(weight).name;
    os << " on [" << lower << ", " << upper << "]";
    return os.str();
}

void MeasureSpec::validate() const {
    if (!(lower < upper) && !is_discrete()) throw InvalidArgument("support must satisfy lower < upper");
    if (normalization && !(*normalization > 0)) throw InvalidArgument("normalization must be positive");
    if (auto* t = std::get_if<TabulatedWeight>(&weight)) {
        if (t->x.size() != t->w.size()) throw InvalidArgument("tabulated x and w differ in length");
        if (t->order < 1) throw InvalidArgument("interpolation order must be at least 1");
        if (t->x.size() < static_cast<size_t>(t->order) + 1)
            throw InvalidArgument("not enough samples for the interpolation order");
        for (size_t i = 0; i < t->x.size(); ++i) {
            if (!std::isfinite(t->x[i]) || !std::isfinite(t->w[i])) throw InvalidArgument("tabulated sample not finite");
            if (t->w[i] < 0) throw InvalidArgument("weight must be nonnegative");
            if (i > 0 && !(t->x[i] > t->x[i - 1])) throw InvalidArgument("tabulated x must increase");
        }
    }
    if (auto* d = std::get_if<DiscreteWeight>(&weight)) {
        if (d->atoms.size() != d->masses.size()) throw InvalidArgument("atoms and masses differ in length");
        for (double mass : d->masses)
            if (!(mass > 0)) throw InvalidArgument("atom masses must be positive");
    }
    if (auto* c = std::get_if<CustomWeight>(&weight)) {
        if (!c->mp && !c->dbl) throw InvalidArgument("custom weight needs a density");
    }
    if (auto* f = std::get_if<FamilyWeight>(&weight)) {
        f->family.validate();
        if (lower < f->family.lower() || upper > f->family.upper())
            throw InvalidArgument("support exceeds the family's support");
    }
}

double tabulated_value(const TabulatedWeight& t, double x) {
    const size_t n = t.x.size();
    if (x < t.x.front() || x > t.x.back()) return 0.0;
    size_t i = static_cast<size_t>(std::upper_bound(t.x.begin(), t.x.end(), x) - t.x.begin());
    i = i == 0 ? 0 : i - 1;
    if (i >= n - 1) i = n - 2;
    const size_t p = static_cast<size_t>(t.order);
    long start = static_cast<long>(i) - static_cast<long>((p - 1) / 2);
    start = std::clamp<long>(start, 0, static_cast<long>(n - 1 - p));
    double sum = 0.0;
    for (size_t j = 0; j <= p; ++j) {
        const size_t jj = static_cast<size_t>(start) + j;
        double l = 1.0;
        for (size_t k = 0; k <= p; ++k) {
            const size_t kk = static_cast<size_t>(start) + k;
            if (k != j) l *= (x - t.x[kk]) / (t.x[jj] - t.x[kk]);
        }
        sum += l * t.w[jj];
    }
    return sum;
}

double family_density(const FamilySpec& f, double x, double dl, double dr) {
    switch (f.tag) {
        case FamilyTag::Hermite: return std::exp(-x * x) / std::sqrt(M_PI);
        case FamilyTag::Legendre: return 0.5;
        case FamilyTag::Gegenbauer:
        case FamilyTag::ChebyshevT:
        case FamilyTag::ChebyshevU:
            return std::pow(dl, f.alpha) * std::pow(dr, f.alpha) / jacobi_mass(f.alpha, f.alpha);
        case FamilyTag::Laguerre:
            return std::pow(dl, f.alpha) * std::exp(-dl - std::lgamma(f.alpha + 1.0));
        case FamilyTag::Jacobi:
            return std::pow(dr, f.alpha) * std::pow(dl, f.beta) / jacobi_mass(f.alpha, f.beta);
    }
    return 0.0;
}

mp::Real family_weight_unnormalized_mp(const FamilySpec& f, const mp::Real& x, const mp::Real& dl,
                                       const mp::Real& dr) {
    const long bits = x.bits();
    switch (f.tag) {
        case FamilyTag::Hermite: return mp::exp(-(x * x));
        case FamilyTag::Legendre: return mp::Real(1.0, bits);
        case FamilyTag::Gegenbauer:
        case FamilyTag::ChebyshevT:
        case FamilyTag::ChebyshevU: {
            mp::Real a(f.alpha, bits);
            return mp::pow(dl * dr, a);
        }
        case FamilyTag::Laguerre: {
            mp::Real a(f.alpha, bits);
            return mp::pow(dl, a) * mp::exp(-dl);
        }
        case FamilyTag::Jacobi: {
            mp::Real a(f.alpha, bits), b(f.beta, bits);
            return mp::pow(dr, a) * mp::pow(dl, b);
        }
    }
    return mp::Real(bits);
}

mp::Real family_mass_mp(const FamilySpec& f, long bits) {
    switch (f.tag) {
        case FamilyTag::Hermite: return mp::sqrt(mp::pi(bits));
        case FamilyTag::Legendre: return mp::Real(2.0, bits);
        case FamilyTag::Gegenbauer:
        case FamilyTag::ChebyshevT:
        case FamilyTag::ChebyshevU: return jacobi_mass_mp(f.alpha, f.alpha, bits);
        case FamilyTag::Laguerre: return mp::gamma(mp::Real(f.alpha + 1.0, bits));
        case FamilyTag::Jacobi: return jacobi_mass_mp(f.alpha, f.beta, bits);
    }
    return mp::Real(1.0, bits);
}

mp::Real family_density_mp(const FamilySpec& f, const mp::Real& x, const mp::Real& dl, const mp::Real& dr) {
    return family_weight_unnormalized_mp(f, x, dl, dr) / family_mass_mp(f, x.bits());
}

double weight_density(const MeasureSpec& m, double x, double dl, double dr) {
    const double scale = m.normalization.value_or(1.0);
    if (x < m.lower || x > m.upper) return 0.0;
    if (auto* f = std::get_if<FamilyWeight>(&m.weight)) {
        const double fdl = (m.lower == f->family.lower()) ? dl : x - f->family.lower();
        const double fdr = (m.upper == f->family.upper()) ? dr : f->family.upper() - x;
        return scale * family_density(f->family, x, fdl, fdr);
    }
    if (auto* t = std::get_if<TabulatedWeight>(&m.weight)) return scale * tabulated_value(*t, x);
    if (auto* c = std::get_if<CustomWeight>(&m.weight)) {
        if (!c->dbl) throw InvalidArgument("custom weight has no double-precision density");
        return scale * c->dbl(x, dl, dr);
    }
    throw InvalidArgument("discrete measures have no density");
}

double weight_density(const MeasureSpec& m, double x) {
    return weight_density(m, x, x - m.lower, m.upper - x);
}

mp::Real weight_density_mp(const MeasureSpec& m, const mp::Real& x, const mp::Real& dl, const mp::Real& dr) {
    const long bits = x.bits();
    mp::Real scale(m.normalization.value_or(1.0), bits);
    if (auto* f = std::get_if<FamilyWeight>(&m.weight)) {
        mp::Real fdl(bits), fdr(bits);
        family_complements(f->family, m.lower, m.upper, x, dl, dr, fdl, fdr);
        return scale * family_density_mp(f->family, x, fdl, fdr);
    }
    if (auto* c = std::get_if<CustomWeight>(&m.weight)) {
        if (!c->mp) throw InvalidArgument("custom weight has no extended-precision density");
        return scale * c->mp(x, dl, dr);
    }
    throw InvalidArgument("extended-precision density available for family and custom weights only");
}

}  // namespace gosc
