#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "treelie/johnson.hpp"
#include "treelie/lattice.hpp"

namespace treelie {

inline constexpr const char* kSchemaVersion = "treelie-report/1";
inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

enum class ClaimStatus { Verified, Failed, OutOfHypothesis, Skipped };
std::string to_string(ClaimStatus s);

struct ClaimConfig {
    int genus = 6;
    std::vector<int> support = {1, 2, 3, 4, 5, 6};
    std::string mode = "fast";  // fast runs fast claims; full runs both
    int jobs = 1;
    std::int64_t budget_ms = 0;  // 0 means unlimited
    std::uint64_t seed = kDefaultSeed;
    int max_degree = kDefaultMaxDegree;
    std::string cache_dir;  // empty: memory only
    bool timings = false;   // wall times in JSON (breaks byte-identical reports)
    bool support_set = false;  // false: support follows genus, capped at 1..6

    /// key=value lines (genus, support, mode, jobs, budget, seed, max-degree,
    /// cache-dir, bracket-sign, trace-sign). Sign flags only accept their
    /// frozen value +1. '#' starts a comment. Throws ConfigError.
    void load(const std::string& text);
    void validate() const;
    /// Applies the default support 1..min(genus, 6) unless one was given.
    void settle();
};

/// Lattices shared between claims, optionally persisted as files named by
/// the FNV-1a hash of the key. Each key is computed at most once per run.
class LatticeCache {
public:
    explicit LatticeCache(std::string dir = {});
    Lattice get(const std::string& key, const std::function<Lattice()>& build);
    std::size_t computed() const { return computed_; }

private:
    struct Slot {
        std::once_flag once;
        Lattice value;
        std::exception_ptr error;
    };
    std::string dir_;
    std::mutex m_;
    std::map<std::string, std::shared_ptr<Slot>> slots_;
    std::size_t computed_ = 0;
};

struct ClaimContext {
    const ClaimConfig& config;
    LatticeCache& cache;
    std::int64_t deadline_ms = 0;  // steady-clock ms; 0 means none

    SpanOptions span_options() const;  // throws BudgetExceeded past the deadline
    Lattice recipe(const BracketRecipe& r);
    Lattice recipes(const std::string& name, const std::vector<BracketRecipe>& rs);
    Lattice sector(int a_count);  // sector of Im τ_3 over the support
};

struct ClaimOutcome {
    bool holds = false;
    std::string detail;
    std::string witness;  // digest of the objects compared
};

struct Claim {
    std::string id;
    std::string group;
    std::string anchor;      // where the statement lives, in our own words
    std::string mode;        // "fast" or "full"
    int min_genus = 1;       // hypothesis on g (support size for full claims)
    std::function<ClaimOutcome(ClaimContext&)> run;
};

/// Stable-ordered registry; ids are unique.
const std::vector<Claim>& claim_registry();

struct ClaimResult {
    std::string id;
    ClaimStatus status = ClaimStatus::Skipped;
    std::string mode;
    std::string detail;
    std::string witness;
    std::int64_t wall_ms = 0;
};

struct SuiteReport {
    std::string suite;
    ClaimConfig config;
    std::vector<ClaimResult> claims;  // one per registered claim
    bool budget_exhausted = false;

    bool failed() const;
    int exit_code() const;  // 0, 1 on failure, 4 on budget
};

/// True if `suite` names "all", a group, or a claim id.
bool suite_exists(const std::string& suite);

/// Runs the selected claims (by suite and mode); every other registered claim
/// is reported as skipped. Throws ArgumentError for an unknown suite.
SuiteReport run_suite(const std::string& suite, const ClaimConfig& config);

std::string report_json(const SuiteReport& r);
std::string report_text(const SuiteReport& r);
std::string claims_json();

}  // namespace treelie
