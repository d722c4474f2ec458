#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gosc/family_spec.hpp"
#include "gosc/mp.hpp"

namespace gosc {

struct FamilyWeight {
    FamilySpec family;
};

// Samples w_i at increasing x_i; piecewise Lagrange interpolation of the given order
// (order 1 = piecewise linear). Zero outside [x_0, x_last].
struct TabulatedWeight {
    std::vector<double> x;
    std::vector<double> w;
    int order = 3;
};

struct DiscreteWeight {
    std::vector<double> atoms;
    std::vector<double> masses;
};

// Extended-precision density supplied by the caller. The callable receives x and the
// distances dl = x - lower, dr = upper - x, all carried at the working precision, so
// that endpoint factors can be evaluated without cancellation.
using MpDensity = std::function<mp::Real(const mp::Real& x, const mp::Real& dl, const mp::Real& dr)>;
using DoubleDensity = std::function<double(double x, double dl, double dr)>;

struct CustomWeight {
    MpDensity mp;
    DoubleDensity dbl;
    std::string name = "custom";
};

using Weight = std::variant<FamilyWeight, TabulatedWeight, DiscreteWeight, CustomWeight>;

struct MeasureSpec {
    double lower = -1.0;
    double upper = 1.0;
    Weight weight;
    // Positive factor multiplying the weight so that the total mass is one.
    // Unset means "determine from the computed mass".
    std::optional<double> normalization;
    bool symmetric = false;

    static MeasureSpec family(const FamilySpec& f);
    static MeasureSpec tabulated(std::vector<double> x, std::vector<double> w, int order, bool symmetric);
    static MeasureSpec discrete(std::vector<double> atoms, std::vector<double> masses, bool symmetric);
    static MeasureSpec custom(double lower, double upper, MpDensity mp, DoubleDensity dbl, bool symmetric,
                              std::optional<double> normalization = std::nullopt);

    // Restriction of this measure to [lo, hi] with the weight multiplied by `scale`.
    MeasureSpec restricted(double lo, double hi, double scale) const;

    bool is_family() const { return std::holds_alternative<FamilyWeight>(weight); }
    bool is_discrete() const { return std::holds_alternative<DiscreteWeight>(weight); }
    bool is_tabulated() const { return std::holds_alternative<TabulatedWeight>(weight); }
    std::string describe() const;
    void validate() const;
};

// Unnormalized weight times the stored normalization (1 when unset), double precision.
// Not defined for discrete measures.
double weight_density(const MeasureSpec& m, double x);
// Same with endpoint distances supplied by the caller.
double weight_density(const MeasureSpec& m, double x, double dl, double dr);
mp::Real weight_density_mp(const MeasureSpec& m, const mp::Real& x, const mp::Real& dl, const mp::Real& dr);

// Normalized closed-form density of a classical family (total mass one on its support).
double family_density(const FamilySpec& f, double x, double dl, double dr);
mp::Real family_density_mp(const FamilySpec& f, const mp::Real& x, const mp::Real& dl, const mp::Real& dr);

// Unnormalized family weight (e.g. (1-x)^alpha (1+x)^beta) and its total mass.
mp::Real family_weight_unnormalized_mp(const FamilySpec& f, const mp::Real& x, const mp::Real& dl,
                                       const mp::Real& dr);
mp::Real family_mass_mp(const FamilySpec& f, long bits);

// Piecewise Lagrange interpolant of a tabulated weight.
double tabulated_value(const TabulatedWeight& t, double x);

}  // namespace gosc
