#include "gosc/family_spec.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gosc/errors.hpp"

namespace gosc {

double FamilySpec::lower() const {
    switch (tag) {
        case FamilyTag::Hermite: return -std::numeric_limits<double>::infinity();
        case FamilyTag::Laguerre: return 0.0;
        default: return -1.0;
    }
}

double FamilySpec::upper() const {
    switch (tag) {
        case FamilyTag::Hermite:
        case FamilyTag::Laguerre: return std::numeric_limits<double>::infinity();
        default: return 1.0;
    }
}

std::string FamilySpec::name() const {
    switch (tag) {
        case FamilyTag::Hermite: return "hermite";
        case FamilyTag::Legendre: return "legendre";
        case FamilyTag::Gegenbauer: return "gegenbauer";
        case FamilyTag::ChebyshevT: return "chebyshev-t";
        case FamilyTag::ChebyshevU: return "chebyshev-u";
        case FamilyTag::Laguerre: return "laguerre";
        case FamilyTag::Jacobi: return "jacobi";
    }
    return "unknown";
}

std::string FamilySpec::label() const {
    std::ostringstream os;
    os << name();
    if (tag == FamilyTag::Gegenbauer || tag == FamilyTag::Laguerre) os << "(alpha=" << alpha << ")";
    if (tag == FamilyTag::Jacobi) os << "(alpha=" << alpha << ",beta=" << beta << ")";
    return os.str();
}

void FamilySpec::validate() const {
    auto bad = [&](const char* what) { throw InvalidArgument(label() + ": " + what); };
    if (!std::isfinite(alpha) || !std::isfinite(beta)) bad("parameters must be finite");
    switch (tag) {
        case FamilyTag::Gegenbauer:
        case FamilyTag::Laguerre:
            if (alpha <= -1.0) bad("alpha must exceed -1");
            break;
        case FamilyTag::Jacobi:
            if (alpha <= -1.0 || beta <= -1.0) bad("alpha and beta must exceed -1");
            break;
        default:
            break;
    }
}

FamilySpec parse_family(const std::string& name, double alpha, double beta) {
    FamilySpec f;
    if (name == "hermite") f = FamilySpec::hermite();
    else if (name == "legendre") f = FamilySpec::legendre();
    else if (name == "gegenbauer") f = FamilySpec::gegenbauer(alpha);
    else if (name == "chebyshev-t" || name == "chebyshev") f = FamilySpec::chebyshev_t();
    else if (name == "chebyshev-u") f = FamilySpec::chebyshev_u();
    else if (name == "laguerre") f = FamilySpec::laguerre(alpha);
    else if (name == "jacobi") f = FamilySpec::jacobi(alpha, beta);
    else throw InvalidArgument("unknown family: " + name);
    f.validate();
    return f;
}

std::vector<FamilySpec> sample_families() {
    return {FamilySpec::hermite(),        FamilySpec::legendre(),       FamilySpec::gegenbauer(-0.4),
            FamilySpec::gegenbauer(0.7),  FamilySpec::gegenbauer(2.0),  FamilySpec::chebyshev_t(),
            FamilySpec::chebyshev_u(),    FamilySpec::laguerre(0.0),    FamilySpec::laguerre(0.5),
            FamilySpec::laguerre(2.0),    FamilySpec::jacobi(0.5, 1.5), FamilySpec::jacobi(1.0, 0.0)};
}

bool operator==(const FamilySpec& a, const FamilySpec& b) {
    return a.tag == b.tag && a.alpha == b.alpha && a.beta == b.beta;
}

}  // namespace gosc
