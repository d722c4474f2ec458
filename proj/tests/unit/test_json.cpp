#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "json.hpp"

#include "gosc/errors.hpp"
#include "gosc/families.hpp"
#include "gosc/json_io.hpp"

using namespace gosc;
using nlohmann::json;

TEST(Json, ReportSchema) {
    VerificationReport r;
    r.name = "demo";
    r.add("a.check", "topic/a", 1e-14, 1e-12);
    r.add("b.info", "topic/b", std::numeric_limits<double>::infinity(), 1e-12, ItemKind::Informational);
    r.add("c.control", "topic/c", 2.0, 0.5, ItemKind::Check, Compare::Exceeds, "negative control");
    const json j = json::parse(report_to_json(r, {{"family", std::string("hermite")}, {"dim", 64LL}}));
    EXPECT_EQ(j["version"], kReportSchemaVersion);
    EXPECT_EQ(j["config"]["family"], "hermite");
    EXPECT_EQ(j["config"]["dim"], 64);
    ASSERT_EQ(j["items"].size(), 3u);
    EXPECT_EQ(j["items"][0]["id"], "a.check");
    EXPECT_EQ(j["items"][0]["pass"], true);
    EXPECT_EQ(j["items"][1]["residual"], "inf");
    EXPECT_EQ(j["items"][1]["kind"], to_string(ItemKind::Informational));
    EXPECT_EQ(j["items"][2]["compare"], "exceeds");
    EXPECT_EQ(j["items"][2]["note"], "negative control");
    EXPECT_EQ(j["summary"]["pass"], true);
    EXPECT_EQ(j["summary"]["items"], 3);
}

TEST(Json, ReportCsv) {
    VerificationReport r;
    r.add("x", "t", 0.5, 1.0);
    EXPECT_EQ(report_to_csv(r), "id,paper_ref,kind,residual,tolerance,pass\nx,t," + to_string(ItemKind::Check) + ",0.5,1,true\n");
}

TEST(Json, CoefficientsRoundTrip) {
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::laguerre(0.5), 5);
    const json j = json::parse(coefficients_to_json(c, {}));
    ASSERT_EQ(j["b"].size(), 6u);
    for (size_t n = 0; n < 6; ++n) {
        EXPECT_EQ(j["a"][n].get<double>(), c.a[n]);
        EXPECT_EQ(j["b"][n].get<double>(), c.b[n]);
    }
    EXPECT_EQ(coefficients_to_csv(c).rfind("n,a,b\n0,1.5,", 0), 0u);
}

TEST(Json, MeasureParsing) {
    const MeasureSpec f = measure_from_json(R"({"type": "family", "family": "gegenbauer", "alpha": 0.7})");
    ASSERT_TRUE(f.is_family());
    EXPECT_EQ(std::get<FamilyWeight>(f.weight).family, FamilySpec::gegenbauer(0.7));
    const MeasureSpec t = measure_from_json(R"({"type": "tabulated", "x": [0, 0.5, 1], "w": [1, 1, 1], "order": 1})");
    EXPECT_TRUE(t.is_tabulated());
    const MeasureSpec d = measure_from_json(R"({"type": "discrete", "atoms": [-1, 1], "masses": [0.5, 0.5], "symmetric": true})");
    EXPECT_TRUE(d.is_discrete());
    EXPECT_TRUE(d.symmetric);
}

TEST(Json, MalformedMeasures) {
    EXPECT_THROW(measure_from_json("{"), InvalidArgument);
    EXPECT_THROW(measure_from_json("[]"), InvalidArgument);
    EXPECT_THROW(measure_from_json(R"({"type": "cloud"})"), InvalidArgument);
    EXPECT_THROW(measure_from_json(R"({"type": "tabulated", "x": [0, 1]})"), InvalidArgument);
    EXPECT_THROW(measure_from_json(R"({"type": "discrete", "atoms": "x", "masses": [1]})"), InvalidArgument);
    EXPECT_THROW(measure_from_json(R"({"type": "family", "family": "nope"})"), InvalidArgument);
}

TEST(Json, MomentsParsing) {
    const MomentSequence m = moments_from_json(R"({"moments": [2, 0, "1.0", 0, 1.5], "symmetric": true})", 128);
    EXPECT_EQ(m.K, 4);
    EXPECT_TRUE(m.symmetric);
    EXPECT_DOUBLE_EQ(m.values[0].to_double(), 1.0);
    EXPECT_DOUBLE_EQ(m.values[2].to_double(), 0.5);
    EXPECT_DOUBLE_EQ(m.values[4].to_double(), 0.75);
    EXPECT_EQ(moments_from_json("[1, 0.5]", 64).K, 1);
    EXPECT_THROW(moments_from_json(R"({"moments": []})", 64), InvalidArgument);
    EXPECT_THROW(moments_from_json(R"({"moments": [0, 1]})", 64), InvalidArgument);
    EXPECT_THROW(moments_from_json(R"({"moments": [1, true]})", 64), InvalidArgument);
    EXPECT_THROW(moments_from_json(R"({"moments": [1, "abc"]})", 64), InvalidArgument);
}

TEST(Json, MomentsOutputIsDecimal) {
    const MomentSequence m = compute_moments(measure_for(FamilySpec::legendre()), 4, 128);
    const json j = json::parse(moments_to_json(m, {}));
    ASSERT_EQ(j["moments"].size(), 5u);
    EXPECT_TRUE(j["moments"][2].is_string());
    EXPECT_NEAR(std::stod(j["moments"][2].get<std::string>()), 1.0 / 3.0, 1e-15);
}
