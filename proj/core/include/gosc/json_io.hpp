#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gosc/families.hpp"
#include "gosc/measure.hpp"
#include "gosc/moments.hpp"
#include "gosc/recurrence.hpp"
#include "gosc/report.hpp"
#include "gosc/splitting.hpp"

namespace gosc {

inline constexpr const char* kReportSchemaVersion = "1.0";

using ConfigValue = std::variant<std::string, double, long long, bool>;
using ConfigMap = std::map<std::string, ConfigValue>;

// {version, config, items: [{id, paper_ref, residual, tolerance, pass, kind, note}], summary}
std::string report_to_json(const VerificationReport& r, const ConfigMap& config);
std::string report_to_csv(const VerificationReport& r);

// Decimal strings, when supplied, carry the extended-precision values of a solved table.
struct DecimalColumns {
    std::vector<std::string> a, b;
};
std::string coefficients_to_json(const RecurrenceCoefficients& c, const ConfigMap& config,
                                 const DecimalColumns* decimals = nullptr);
std::string coefficients_to_csv(const RecurrenceCoefficients& c);

std::string moments_to_json(const MomentSequence& m, const ConfigMap& config);
std::string moments_to_csv(const MomentSequence& m);

std::string catalog_to_json(const std::vector<CatalogEntry>& catalog, const ConfigMap& config);

std::string split_to_json(const HalfLineSystems& h, const VerificationReport& r, const ConfigMap& config);

// {"type": "family", "family": name, "alpha": a, "beta": b}
// {"type": "tabulated", "x": [...], "w": [...], "order": 3, "symmetric": false}
// {"type": "discrete", "atoms": [...], "masses": [...], "symmetric": false}
// Throws InvalidArgument on malformed input.
MeasureSpec measure_from_json(const std::string& text);

// {"moments": [m_0, m_1, ...] as numbers or decimal strings, "symmetric": false}
MomentSequence moments_from_json(const std::string& text, long precision_bits);

}  // namespace gosc
