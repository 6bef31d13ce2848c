#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Registry and verifier for the algebraic identities the engine is built
// around: every registered case constructs its two sides from the catalog
// and decides exact equality (operator, scalar, or matrix), with residual
// witnesses on failure.  A case whose printed scalar factor disagrees with
// the mechanically computed one — while proportionality holds — reports
// status "flagged" and carries both values.

namespace qska::identities {

enum class Status { kPass, kFail, kFlagged };

const char* status_name(Status s);  // "pass" / "fail" / "flagged"

struct Entry {
    std::string id;
    Status status = Status::kPass;
    std::string witness;  // "" on pass; compact JSON otherwise
    std::int64_t ms = 0;  // 0 unless Options::timings
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Entry> results;

    std::string json() const;  // {"suite":…,"seed":…,"results":[…]}
    std::string text() const;  // one aligned line per entry
    int exit_code() const;     // 0 all pass, 1 any fail, 3 flagged only
};

struct Options {
    std::uint64_t seed = 0;
    int jobs = 1;
    // Verify at a few seeded rational specializations of the free parameters
    // before the symbolic run; a sound specialized counterexample is
    // reported immediately.  A passing status always comes from the
    // symbolic run.
    bool fast = false;
    // Record wall time per entry.  Off by default so reports for a given
    // seed are byte-identical across runs.
    bool timings = false;
};

// Registered identity ids, in canonical (report) order.
const std::vector<std::string>& all_ids();
bool is_registered(const std::string& id);

// Runs the listed identities (throws UnknownIdentity for unregistered ids).
// The report lists results in registry order regardless of scheduling.
Report run_suite(const std::vector<std::string>& ids, const Options& opt = {},
                 const std::string& suite_label = "");
Report run_all(const Options& opt = {});
Entry run_one(const std::string& id, const Options& opt = {});

}  // namespace qska::identities
