#pragma once

#include <string>
#include <vector>

namespace gosc {

enum class FamilyTag { Hermite, Legendre, Gegenbauer, ChebyshevT, ChebyshevU, Laguerre, Jacobi };

struct FamilySpec {
    FamilyTag tag = FamilyTag::Hermite;
    double alpha = 0.0;
    double beta = 0.0;

    static FamilySpec hermite() { return {FamilyTag::Hermite, 0.0, 0.0}; }
    static FamilySpec legendre() { return {FamilyTag::Legendre, 0.0, 0.0}; }
    static FamilySpec gegenbauer(double a) { return {FamilyTag::Gegenbauer, a, 0.0}; }
    static FamilySpec chebyshev_t() { return {FamilyTag::ChebyshevT, -0.5, 0.0}; }
    static FamilySpec chebyshev_u() { return {FamilyTag::ChebyshevU, 0.5, 0.0}; }
    static FamilySpec laguerre(double a) { return {FamilyTag::Laguerre, a, 0.0}; }
    static FamilySpec jacobi(double a, double b) { return {FamilyTag::Jacobi, a, b}; }

    bool symmetric() const { return tag != FamilyTag::Laguerre && tag != FamilyTag::Jacobi; }
    // support endpoints, possibly infinite
    double lower() const;
    double upper() const;

    std::string name() const;     // e.g. "gegenbauer"
    std::string label() const;    // e.g. "gegenbauer(alpha=0.7)"
    void validate() const;        // throws InvalidArgument
};

FamilySpec parse_family(const std::string& name, double alpha, double beta);

// Parameter samples used throughout the acceptance suite.
std::vector<FamilySpec> sample_families();

bool operator==(const FamilySpec& a, const FamilySpec& b);

}  // namespace gosc
