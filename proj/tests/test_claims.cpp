#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <set>

#include "treelie/claims.hpp"
#include "treelie/errors.hpp"

using namespace treelie;

namespace {

const ClaimResult& find(const SuiteReport& r, const std::string& id) {
    for (const auto& c : r.claims)
        if (c.id == id) return c;
    throw std::runtime_error("missing " + id);
}

}  // namespace

TEST(Registry, StableAndUnique) {
    const auto& reg = claim_registry();
    ASSERT_FALSE(reg.empty());
    std::set<std::string> ids;
    for (const auto& c : reg) {
        EXPECT_TRUE(ids.insert(c.id).second) << c.id;
        EXPECT_FALSE(c.anchor.empty()) << c.id;
        EXPECT_TRUE(c.mode == "fast" || c.mode == "full") << c.id;
    }
    EXPECT_TRUE(ids.count("L3.4"));
    EXPECT_TRUE(ids.count("P2.2-odd"));
    auto j = nlohmann::json::parse(claims_json());
    ASSERT_EQ(j.size(), reg.size());
    EXPECT_EQ(j[0]["id"], reg[0].id);
}

TEST(Config, LoadAndValidate) {
    ClaimConfig c;
    c.load("# comment\ngenus = 7\nsupport = 1..5\nmode = full\nseed = 7\nbudget = 2\ntrace-sign = +1\n");
    EXPECT_EQ(c.genus, 7);
    EXPECT_EQ(c.support, support_range(1, 5));
    EXPECT_EQ(c.mode, "full");
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.budget_ms, 2000);
    EXPECT_NO_THROW(c.validate());
    EXPECT_THROW(c.load("colour = red\n"), ConfigError);
    EXPECT_THROW(c.load("genus\n"), ConfigError);
    EXPECT_THROW(c.load("genus = x\n"), ConfigError);
    EXPECT_THROW(c.load("trace-sign = -1\n"), ConfigError);
    ClaimConfig bad;
    bad.genus = 3;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad.settle();
    EXPECT_EQ(bad.support, support_range(1, 3));
    EXPECT_NO_THROW(bad.validate());
}

TEST(Suite, EveryClaimOnce) {
    ClaimConfig c;
    SuiteReport r = run_suite("L3.4", c);
    ASSERT_EQ(r.claims.size(), claim_registry().size());
    EXPECT_EQ(find(r, "L3.4").status, ClaimStatus::Verified);
    EXPECT_EQ(find(r, "L3.4-member").status, ClaimStatus::Skipped);
    EXPECT_EQ(find(r, "L3.2").status, ClaimStatus::Skipped);
    EXPECT_EQ(r.exit_code(), 0);
    EXPECT_THROW(run_suite("no-such-suite", c), ArgumentError);
    EXPECT_FALSE(suite_exists("no-such-suite"));
    EXPECT_TRUE(suite_exists("core-relations"));
}

TEST(Suite, OutOfHypothesisDoesNotFail) {
    ClaimConfig c;
    c.genus = 4;
    c.settle();
    SuiteReport r = run_suite("L4.2", c);
    EXPECT_EQ(find(r, "L4.2").status, ClaimStatus::OutOfHypothesis);
    EXPECT_EQ(r.exit_code(), 0);
}

TEST(Suite, BudgetGivesPartialReport) {
    ClaimConfig c;
    c.mode = "full";
    c.budget_ms = 1;
    SuiteReport r = run_suite("P4.4", c);
    EXPECT_TRUE(r.budget_exhausted);
    EXPECT_EQ(r.exit_code(), 4);
    EXPECT_EQ(find(r, "P4.4-A").status, ClaimStatus::Skipped);
}

TEST(Suite, JsonIsDeterministic) {
    ClaimConfig c;
    c.seed = 7;
    std::string x = report_json(run_suite("core-relations", c));
    c.jobs = 3;
    std::string y = report_json(run_suite("core-relations", c));
    EXPECT_EQ(x, y);
    auto j = nlohmann::json::parse(x);
    EXPECT_EQ(j["schema"], kSchemaVersion);
    EXPECT_EQ(j["config"]["seed"], "7");
    EXPECT_TRUE(j["claims"][0]["witness"].is_string());
    EXPECT_FALSE(j["claims"][0].contains("wall_ms"));
    c.seed = 8;
    std::string z = report_json(run_suite("R-random", c));
    EXPECT_NE(z.find("seed 8"), std::string::npos);
}

TEST(Cache, PersistsBetweenRuns) {
    auto dir = std::filesystem::temp_directory_path() / "treelie-cache-test";
    std::filesystem::remove_all(dir);
    auto build = [] {
        Lattice l;
        l.insert(SparseVector{{3, Integer(2)}});
        return l;
    };
    {
        LatticeCache c(dir.string());
        EXPECT_EQ(c.get("k", build).digest(), build().digest());
        EXPECT_EQ(c.get("k", build).digest(), build().digest());
        EXPECT_EQ(c.computed(), 1u);
    }
    {
        LatticeCache c(dir.string());
        EXPECT_EQ(c.get("k", build).digest(), build().digest());
        EXPECT_EQ(c.computed(), 0u);
    }
    std::filesystem::remove_all(dir);
}

TEST(Cache, ErrorsAreNotCached) {
    LatticeCache c;
    int calls = 0;
    auto failing = [&]() -> Lattice {
        ++calls;
        throw BudgetExceeded("budget exhausted");
    };
    EXPECT_THROW(c.get("x", failing), BudgetExceeded);
    EXPECT_THROW(c.get("x", failing), BudgetExceeded);
    EXPECT_EQ(calls, 2);
}
