#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qska/errors.hpp"
#include "qska/identities.hpp"
#include "qska/qop.hpp"

#include "json.hpp"

#include <map>
#include <set>
#include <string>

using namespace qska;
using namespace qska::identities;

namespace {

const std::map<std::string, Status>& expected_statuses() {
    // The documented verification outcome: most relations verify exactly;
    // three carry printed scalar factors that differ from the computed ones
    // (proportionality holds, both values are reported); one printed
    // equation fails outright and its residual witness is kept.
    static const std::map<std::string, Status> overrides = {
        {"AW3_PARAMS", Status::kFlagged},
        {"B_EXPR", Status::kFlagged},
        {"APPENDIX_01", Status::kFlagged},
        {"X_CLEARED", Status::kFail},
    };
    return overrides;
}

} // namespace

TEST_CASE("registry is complete and ordered") {
    const auto& ids = all_ids();
    CHECK(ids.size() == 42);
    std::set<std::string> unique(ids.begin(), ids.end());
    CHECK(unique.size() == ids.size());
    for (const auto& id : ids) CHECK(is_registered(id));
    CHECK_FALSE(is_registered("NOT_A_CASE"));
    // spot-check canonical positions
    CHECK(ids.front() == "UQ_REL");
    CHECK(ids.back() == "REP_FINITE");
}

TEST_CASE("unknown ids throw") {
    CHECK_THROWS_AS(run_one("NOT_A_CASE"), UnknownIdentity);
    CHECK_THROWS_AS(run_suite({"FACT1", "NOT_A_CASE"}), UnknownIdentity);
}

TEST_CASE("subset run returns entries in registry order") {
    Report r = run_suite({"FACT2", "FACT1"}); // request order is irrelevant
    REQUIRE(r.results.size() == 2);
    CHECK(r.results[0].id == "FACT1");
    CHECK(r.results[1].id == "FACT2");
    CHECK(r.results[0].status == Status::kPass);
    CHECK(r.results[1].status == Status::kPass);
    CHECK(r.exit_code() == 0);
}

TEST_CASE("exit codes reflect the worst status") {
    CHECK(run_suite({"UQ_REL"}).exit_code() == 0);
    CHECK(run_suite({"APPENDIX_01"}).exit_code() == 3);  // flagged only
    CHECK(run_suite({"X_CLEARED"}).exit_code() == 1);    // failure
    CHECK(run_suite({"APPENDIX_01", "X_CLEARED"}).exit_code() == 1);
}

TEST_CASE("flagged entries carry both the printed and the computed scalar") {
    Entry e = run_one("B_EXPR");
    REQUIRE(e.status == Status::kFlagged);
    auto w = nlohmann::json::parse(e.witness);
    REQUIRE(w.contains("printed"));
    REQUIRE(w.contains("computed"));
    CHECK(w["printed"].get<std::string>() != w["computed"].get<std::string>());

    // AW3_PARAMS flags two scalar factors; both sub-witnesses are recorded
    Entry aw = run_one("AW3_PARAMS");
    REQUIRE(aw.status == Status::kFlagged);
    auto aww = nlohmann::json::parse(aw.witness);
    REQUIRE(aww.is_array());
    CHECK(aww.size() == 2);
    for (const auto& part : aww) {
        CHECK(part.contains("printed"));
        CHECK(part.contains("computed"));
    }
}

TEST_CASE("failing entry carries a parseable nonzero residual witness") {
    Entry e = run_one("X_CLEARED");
    REQUIRE(e.status == Status::kFail);
    auto w = nlohmann::json::parse(e.witness);
    REQUIRE(w.contains("relation"));
    REQUIRE(w.contains("residual"));
    // the residual deserializes to a nonzero operator: adding it back to the
    // deficient side is what restored equality during witness construction
    QOp residual = QOp::from_json(w["residual"].dump());
    CHECK(!residual.is_zero());
}

TEST_CASE("timings stay zero unless requested") {
    Entry plain = run_one("FACT1");
    CHECK(plain.ms == 0);
    Options opt;
    opt.timings = true;
    Entry timed = run_one("FACT1", opt);
    CHECK(timed.ms >= 0); // recorded (possibly sub-millisecond)
}

TEST_CASE("fast mode changes probing, never the verdict") {
    Options fast;
    fast.fast = true;
    fast.seed = 5;
    for (const char* id : {"FACT1", "APPENDIX_01", "X_CLEARED"}) {
        Entry a = run_one(id);
        Entry b = run_one(id, fast);
        CHECK(a.status == b.status);
    }
}

TEST_CASE("suite determinism: identical seeds give byte-identical reports") {
    Options opt;
    opt.seed = 42;
    std::vector<std::string> ids = {"UQ_REL", "SKA3_REL", "AW3_PARAMS", "X_CLEARED",
                                    "APPENDIX_01", "QHAW_RK"};
    Report a = run_suite(ids, opt, "subset");
    Report b = run_suite(ids, opt, "subset");
    CHECK(a.json() == b.json());
    CHECK(a.text() == b.text());
}

TEST_CASE("report json carries suite metadata") {
    Options opt;
    opt.seed = 7;
    Report r = run_suite({"GAMMA"}, opt, "demo");
    auto doc = nlohmann::json::parse(r.json());
    CHECK(doc["suite"].get<std::string>() == "demo");
    CHECK(doc["seed"].get<std::uint64_t>() == 7);
    REQUIRE(doc["results"].size() == 1);
    CHECK(doc["results"][0]["id"].get<std::string>() == "GAMMA");
    CHECK(doc["results"][0]["status"].get<std::string>() == "pass");
    CHECK(doc["results"][0]["witness"].get<std::string>().empty());
    CHECK(doc["results"][0]["ms"].get<std::int64_t>() == 0);
}

TEST_CASE("full suite reproduces the documented outcome") {
    Options opt;
    opt.seed = 42;
    Report r = run_all(opt);
    REQUIRE(r.results.size() == all_ids().size());
    const auto& overrides = expected_statuses();
    for (const auto& e : r.results) {
        auto it = overrides.find(e.id);
        Status want = it == overrides.end() ? Status::kPass : it->second;
        CHECK_MESSAGE(e.status == want, "unexpected status for ", e.id, ": got ",
                      status_name(e.status));
        if (e.status == Status::kPass)
            CHECK(e.witness.empty());
        else
            CHECK(!e.witness.empty());
    }
    CHECK(r.exit_code() == 1);
}
