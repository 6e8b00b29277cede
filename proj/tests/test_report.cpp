#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "qnk/report.hpp"

using qnk::Int;
using qnk::Json;
using qnk::Rat;
using qnk::ReportRow;

TEST_CASE("row serialization") {
    const ReportRow row{"A_tilde", {{"r", 2}, {"d", 1}, {"j", 1}}, "4"};
    const Json j = qnk::row_to_json(row);
    CHECK(j["quantity"] == "A_tilde");
    CHECK(j["params"]["r"] == 2);
    CHECK(j["params"]["d"] == 1);
    CHECK(j["value"] == "4");

    CHECK(qnk::params_compact(row.params) == "r=2 d=1 j=1");
    CHECK(qnk::params_compact(row.params, ';') == "r=2;d=1;j=1");

    const std::vector<ReportRow> rows{row};
    CHECK(qnk::rows_to_csv(rows) == "quantity,params,value\nA_tilde,r=2;d=1;j=1,4\n");
}

TEST_CASE("large values survive the string round trip") {
    const Int big = qnk::binomial(200, 100);
    const ReportRow row{"p", {{"j", 0}}, qnk::int_string(big)};
    const Json j = qnk::row_to_json(row);
    CHECK(Int(j["value"].get<std::string>()) == big);
    const Int odd = 2 * big + 1;
    CHECK(qnk::to_string(Rat(odd, 2)) == qnk::int_string(odd) + "/2");
    CHECK(qnk::parse_rational(qnk::to_string(Rat(big, 3))) == Rat(big, 3));
    CHECK(qnk::parse_rational(qnk::to_string(Rat(big, 2))) == Rat(big, 2));
}

TEST_CASE("verify check serialization") {
    const qnk::VerifyCheck check{"four_way", {{"r", 1}, {"d", 0}, {"j", 0}}, "1", "1", true};
    const Json j = qnk::check_to_json(check);
    CHECK(j["name"] == "four_way");
    CHECK(j["lhs"] == "1");
    CHECK(j["rhs"] == "1");
    CHECK(j["pass"] == true);

    const std::vector<qnk::VerifyCheck> checks{check};
    CHECK(qnk::checks_to_csv(checks) ==
          "name,params,lhs,rhs,pass\nfour_way,r=1;d=0;j=0,1,1,true\n");
}

TEST_CASE("trace export carries the pinned fields") {
    qnk::SODOptions options;
    options.record_trace = true;
    options.surface = qnk::SurfaceInvariants::k3();
    const qnk::BaseClass w{1, 0, 0, Rat(-5, 2)};
    const auto result = qnk::run(w, 1, 2, options);
    const Json doc = qnk::trace_to_json(result, options.surface);

    REQUIRE(doc.contains("seed"));
    CHECK(doc["seed"]["w0"] == 1);
    CHECK(doc["seed"]["h_dot_c1"] == 0);
    CHECK(doc["seed"]["c1_sq"] == 0);
    CHECK(doc["seed"]["ch2_num"] == -5);
    CHECK(doc["seed"]["ch2_den"] == 2);
    CHECK(doc["seed"]["d"] == 1);

    CHECK(doc["surface"]["kind"] == "k3");
    CHECK(doc["surface"]["euler"] == 24);

    REQUIRE(doc.contains("steps"));
    REQUIRE(!doc["steps"].empty());
    for (const auto& step : doc["steps"]) {
        REQUIRE(step.contains("parent_id"));
        REQUIRE(step.contains("rule"));
        REQUIRE(step.contains("children"));
        for (const auto& child : step["children"]) {
            REQUIRE(child.contains("id"));
            REQUIRE(child.contains("k"));
            REQUIRE(child["multiplicity"].is_string());
        }
    }

    REQUIRE(doc.contains("terminal"));
    REQUIRE(!doc["terminal"].empty());
    CHECK(doc["terminal"][0]["j"] == 0);
    CHECK(doc["terminal"][0]["multiplicity"] == "1");
}

TEST_CASE("trace export is deterministic") {
    qnk::SODOptions options;
    options.record_trace = true;
    const qnk::BaseClass w{2, 1, 1, Rat(0)};
    const Json a = qnk::trace_to_json(qnk::run(w, 1, 3, options));
    const Json b = qnk::trace_to_json(qnk::run(w, 1, 3, options));
    CHECK(a.dump() == b.dump());
}
