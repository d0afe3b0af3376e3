#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kirwan/worksheet.hpp"

#include <fstream>
#include <sstream>

using namespace kirwan;

namespace {
std::string ws_path(const std::string& name) {
    return std::string(KIRWAN_WORKSHEET_DIR) + "/" + name;
}
} // namespace

TEST_CASE("minimal literal worksheet") {
    Worksheet w = parse_worksheet(
        "meta truncation 4\n"
        "step s literal\n"
        "  expr \"1/(1-t^2)\"\n"
        "end\n");
    Report r = evaluate_worksheet(w);
    REQUIRE(r.steps.size() == 1);
    const TruncatedSeries& v = r.steps[0].value;
    CHECK(v.coeffs() == std::vector<Rat>{Rat(1), Rat(0), Rat(1), Rat(0), Rat(1)});
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_worksheet("step s frobnicate\nend\n"),
                         doctest::Contains("unknown step kind"), std::invalid_argument);
    // undefined reference is a parse error naming the reference
    try {
        parse_worksheet(
            "step a duality\n  of missing\n  dim 2\nend\n");
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("missing") != std::string::npos);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    // malformed expression reported with position info at evaluation
    Worksheet w = parse_worksheet("step s literal\n  expr \"1//2\"\nend\n");
    CHECK_THROWS_WITH_AS(evaluate_worksheet(w), doctest::Contains("column"),
                         std::invalid_argument);
    // input-provenance literals need a note
    CHECK_THROWS_WITH_AS(parse_worksheet("step s literal\n  expr \"1\"\n  source input\nend\n"),
                         doctest::Contains("needs a note"), std::invalid_argument);
}

TEST_CASE("shipped ledger structure") {
    Worksheet w = load_worksheet(ws_path("cubic4fold.ws"));
    int equivariant = 0, blowup = 0, sum = 0, duality = 0, blowdown = 0, semismall = 0,
        combine = 0, pbundle = 0;
    for (const auto& st : w.steps) {
        if (st.kind == "equivariant_ss") ++equivariant;
        if (st.kind == "blowup") ++blowup;
        if (st.kind == "sum") ++sum;
        if (st.kind == "duality") ++duality;
        if (st.kind == "blowdown") ++blowdown;
        if (st.kind == "semismall") ++semismall;
        if (st.kind == "combine") ++combine;
        if (st.kind == "pbundle") ++pbundle;
    }
    CHECK(equivariant == 1);
    CHECK(blowup == 8);
    CHECK(sum == 1);
    CHECK(duality >= 1);
    CHECK(blowdown == 6);
    CHECK(semismall == 1);
    CHECK(pbundle == 1);
    CHECK(combine >= 1);
    // every input-provenance step documents itself
    for (const auto& st : w.steps)
        if (st.provenance == WorksheetStep::Provenance::Input) CHECK(!st.note.empty());
}

TEST_CASE("round trip through the serializer") {
    for (const char* name : {"planecubic.ws", "cubicsurface.ws", "sextics_crosscheck.ws",
                             "cubic4fold.ws"}) {
        Worksheet w1 = load_worksheet(ws_path(name));
        std::string text = w1.serialize();
        Worksheet w2 = parse_worksheet(text);
        CHECK(w2.serialize() == text);
        REQUIRE(w2.steps.size() == w1.steps.size());
        Report r1 = evaluate_worksheet(w1);
        Report r2 = evaluate_worksheet(w2);
        for (size_t i = 0; i < r1.steps.size(); ++i)
            CHECK(r1.steps[i].value == r2.steps[i].value);
    }
}

TEST_CASE("report determinism") {
    Worksheet w = load_worksheet(ws_path("sextics_crosscheck.ws"));
    Report a = evaluate_worksheet(w);
    Report b = evaluate_worksheet(w);
    REQUIRE(a.steps.size() == b.steps.size());
    for (size_t i = 0; i < a.steps.size(); ++i) {
        CHECK(a.steps[i].value == b.steps[i].value);
        CHECK(a.steps[i].golden == b.steps[i].golden);
        CHECK(a.steps[i].notes == b.steps[i].notes);
    }
    CHECK(a.render_json().find("\"golden\"") != std::string::npos);
}

TEST_CASE("verify_golden exit-code contract") {
    // pass
    Worksheet ok = parse_worksheet(
        "step s literal\n  expr \"1+t^2\"\n  expect even [1, 1]\nend\n");
    std::string diag;
    CHECK(verify_golden(ok, &diag) == 0);

    // a perturbed golden fails and names the first differing degree
    Worksheet bad = parse_worksheet(
        "meta truncation 6\n"
        "step s literal\n  expr \"1/(1-t^2)\"\n  expect even [1, 1, 2, 1]\nend\n");
    CHECK(verify_golden(bad, &diag) == 1);
    CHECK(diag.find("degree 4") != std::string::npos);

    // no goldens at all is an error
    Worksheet none = parse_worksheet("step s literal\n  expr \"1\"\nend\n");
    CHECK(verify_golden(none, &diag) == 2);
}

TEST_CASE("shipped worksheets verify clean") {
    for (const char* name : {"planecubic.ws", "cubicsurface.ws", "sextics_crosscheck.ws",
                             "cubic4fold.ws"}) {
        Worksheet w = load_worksheet(ws_path(name));
        std::string diag;
        int rc = verify_golden(w, &diag);
        INFO(name, ": ", diag);
        CHECK(rc == 0);
    }
}

TEST_CASE("the automatic plane-cubic value matches its closed form") {
    Worksheet w = load_worksheet(ws_path("planecubic.ws"));
    Report r = evaluate_worksheet(w);
    const StepReport* autov = r.find("ss_auto");
    const StepReport* closed = r.find("closed_form");
    REQUIRE(autov);
    REQUIRE(closed);
    CHECK(autov->value == closed->value);
}
