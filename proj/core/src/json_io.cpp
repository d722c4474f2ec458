#include "gosc/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "gosc/errors.hpp"

namespace gosc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json num(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

ordered_json config_json(const ConfigMap& config) {
    ordered_json c = ordered_json::object();
    for (const auto& [k, v] : config) std::visit([&c, &k = k](const auto& x) { c[k] = x; }, v);
    return c;
}

ordered_json doubles(const std::vector<double>& v) {
    ordered_json a = ordered_json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

ordered_json coeff_block(const RecurrenceCoefficients& c) {
    ordered_json o;
    o["n_max"] = c.n_max;
    o["provenance"] = to_string(c.provenance);
    o["a"] = doubles(c.a);
    o["b"] = doubles(c.b);
    return o;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json item_json(const VerificationItem& it) {
    ordered_json o;
    o["id"] = it.id;
    o["paper_ref"] = it.paper_ref;
    o["residual"] = num(it.residual);
    o["tolerance"] = num(it.tolerance);
    o["pass"] = it.pass;
    o["kind"] = to_string(it.kind);
    if (it.compare == Compare::Exceeds) o["compare"] = "exceeds";
    if (!it.note.empty()) o["note"] = it.note;
    if (!it.failures.empty()) {
        ordered_json f = ordered_json::array();
        for (const FailureLocation& l : it.failures) {
            ordered_json e{{"row", l.row}, {"col", l.col}, {"value", num(l.value)}};
            if (!l.note.empty()) e["note"] = l.note;
            f.push_back(e);
        }
        o["failures"] = f;
    }
    return o;
}

ordered_json report_block(const VerificationReport& r) {
    ordered_json items = ordered_json::array();
    for (const VerificationItem& it : r.items) items.push_back(item_json(it));
    ordered_json o;
    o["name"] = r.name;
    o["items"] = items;
    o["summary"] = {{"pass", r.ok()}, {"failures", r.failures()}, {"items", r.items.size()}};
    return o;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

template <class T>
T required(const json& j, const char* key) {
    if (!j.contains(key)) throw InvalidArgument(std::string("measure file: missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("measure file: bad field '") + key + "': " + e.what());
    }
}

json parse(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string(what) + ": " + e.what());
    }
}

}  // namespace

std::string report_to_json(const VerificationReport& r, const ConfigMap& config) {
    ordered_json j;
    j["version"] = kReportSchemaVersion;
    j["config"] = config_json(config);
    const ordered_json b = report_block(r);
    j["name"] = b["name"];
    j["items"] = b["items"];
    j["summary"] = b["summary"];
    return dump(j);
}

std::string report_to_csv(const VerificationReport& r) {
    std::ostringstream os;
    os << "id,paper_ref,kind,residual,tolerance,pass\n";
    for (const VerificationItem& it : r.items)
        os << it.id << ',' << it.paper_ref << ',' << to_string(it.kind) << ',' << g17(it.residual) << ','
           << g17(it.tolerance) << ',' << (it.pass ? "true" : "false") << '\n';
    return os.str();
}

std::string coefficients_to_json(const RecurrenceCoefficients& c, const ConfigMap& config, const DecimalColumns* dec) {
    ordered_json j;
    j["version"] = kReportSchemaVersion;
    j["config"] = config_json(config);
    ordered_json b = coeff_block(c);
    for (auto it = b.begin(); it != b.end(); ++it) j[it.key()] = it.value();
    if (dec) {
        j["a_decimal"] = dec->a;
        j["b_decimal"] = dec->b;
    }
    return dump(j);
}

std::string coefficients_to_csv(const RecurrenceCoefficients& c) {
    std::ostringstream os;
    os << "n,a,b\n";
    for (size_t n = 0; n < c.size(); ++n) os << n << ',' << g17(c.a[n]) << ',' << g17(c.b[n]) << '\n';
    return os.str();
}

std::string moments_to_json(const MomentSequence& m, const ConfigMap& config) {
    ordered_json j;
    j["version"] = kReportSchemaVersion;
    j["config"] = config_json(config);
    j["K"] = m.K;
    j["precision_bits"] = m.precision_bits;
    j["accuracy"] = num(m.accuracy);
    j["symmetric"] = m.symmetric;
    ordered_json v = ordered_json::array();
    for (const mp::Real& x : m.values) v.push_back(x.to_string());
    j["moments"] = v;
    return dump(j);
}

std::string moments_to_csv(const MomentSequence& m) {
    std::ostringstream os;
    os << "k,moment\n";
    for (size_t k = 0; k < m.values.size(); ++k) os << k << ',' << m.values[k].to_string() << '\n';
    return os.str();
}

std::string catalog_to_json(const std::vector<CatalogEntry>& catalog, const ConfigMap& config) {
    ordered_json j;
    j["version"] = kReportSchemaVersion;
    j["config"] = config_json(config);
    ordered_json fams = ordered_json::array();
    for (const CatalogEntry& e : catalog) {
        ordered_json o;
        o["family"] = e.family.name();
        o["label"] = e.family.label();
        o["alpha"] = e.family.alpha;
        o["beta"] = e.family.beta;
        o["coefficients"] = coeff_block(e.coeffs);
        o["levels"] = doubles(e.levels);
        o["levels_printed"] = doubles(e.levels_printed);
        ordered_json f = ordered_json::object();
        for (const auto& [id, topic] : e.formulas) f[id] = topic;
        o["formulas"] = f;
        o["validated_n_max"] = e.validated_n_max;
        o["parameter_range"] = {e.parameter_lo, e.parameter_hi};
        fams.push_back(o);
    }
    j["families"] = fams;
    return dump(j);
}

std::string split_to_json(const HalfLineSystems& h, const VerificationReport& r, const ConfigMap& config) {
    ordered_json j;
    j["version"] = kReportSchemaVersion;
    j["config"] = config_json(config);
    j["precision_bits"] = h.precision_bits;
    j["plus"] = coeff_block(h.plus);
    j["minus"] = coeff_block(h.minus);
    j["minus_reflected"] = coeff_block(h.minus_reflected);
    j["diagonal_mismatch"] = num(h.diagonal_mismatch);
    j["b_mismatch"] = num(h.b_mismatch);
    const ordered_json b = report_block(r);
    j["items"] = b["items"];
    j["summary"] = b["summary"];
    return dump(j);
}

MeasureSpec measure_from_json(const std::string& text) {
    const json j = parse(text, "measure file");
    if (!j.is_object()) throw InvalidArgument("measure file: expected an object");
    const std::string type = required<std::string>(j, "type");
    const bool sym = j.value("symmetric", false);
    if (type == "family") {
        const FamilySpec f =
            parse_family(required<std::string>(j, "family"), j.value("alpha", 0.0), j.value("beta", 0.0));
        return MeasureSpec::family(f);
    }
    if (type == "tabulated")
        return MeasureSpec::tabulated(required<std::vector<double>>(j, "x"), required<std::vector<double>>(j, "w"),
                                      j.value("order", 3), sym);
    if (type == "discrete")
        return MeasureSpec::discrete(required<std::vector<double>>(j, "atoms"),
                                     required<std::vector<double>>(j, "masses"), sym);
    throw InvalidArgument("measure file: unknown type '" + type + "'");
}

MomentSequence moments_from_json(const std::string& text, long bits) {
    const json j = parse(text, "moments file");
    const json arr = j.is_array() ? j : (j.contains("moments") ? j.at("moments") : json());
    if (!arr.is_array() || arr.empty()) throw InvalidArgument("moments file: expected a non-empty 'moments' array");
    MomentSequence ms;
    ms.precision_bits = bits;
    ms.symmetric = j.is_object() && j.value("symmetric", false);
    double acc = std::ldexp(1.0, static_cast<int>(-bits));
    for (const json& v : arr) {
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            int digits = 0;
            bool seen = false;
            for (char ch : s) {
                if (ch == 'e' || ch == 'E') break;
                if (ch >= '1' && ch <= '9') seen = true;
                if (seen && ch >= '0' && ch <= '9') ++digits;
            }
            try {
                ms.values.emplace_back(s, bits);
            } catch (const std::invalid_argument&) {
                throw InvalidArgument("moments file: '" + s + "' is not a decimal number");
            }
            if (digits > 0) acc = std::max(acc, std::pow(10.0, -digits));
        } else if (v.is_number()) {
            ms.values.emplace_back(v.get<double>(), bits);
            acc = std::max(acc, 0x1p-53);
        } else {
            throw InvalidArgument("moments file: entries must be numbers or decimal strings");
        }
        if (!ms.values.back().is_finite()) throw InvalidArgument("moments file: non-finite moment");
    }
    if (!(ms.values[0] > 0)) throw InvalidArgument("moments file: m_0 must be positive");
    const mp::Real m0 = ms.values[0];
    for (mp::Real& v : ms.values) v /= m0;
    ms.K = static_cast<int>(ms.values.size()) - 1;
    ms.accuracy = acc;
    return ms;
}

}  // namespace gosc
