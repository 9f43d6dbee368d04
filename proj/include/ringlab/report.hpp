#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace ringlab {

/// Seconds since the epoch, for report stamps.
std::int64_t current_timestamp();

/// Outcome of one named check inside a suite.
struct Check {
    std::string name;
    std::string status;     // "pass" | "fail" | "skipped"
    nlohmann::json detail;  // counterexample or skip reason; omitted when null
};

/**
 * Machine-readable outcome of a verification suite or counting run.
 * Serializes to {suite, spec, k, mode, seed, checks:[...], counts:{...}}
 * with checks sorted by name, so reports are byte-stable across runs.
 */
struct Report {
    std::string suite;
    std::string spec;
    int k = 1;
    std::string mode = "exhaustive";  // "exhaustive" | "sampled" | "auto"
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    nlohmann::json counts = nlohmann::json::object();

    void add_pass(const std::string& name) { checks.push_back({name, "pass", nullptr}); }
    void add_fail(const std::string& name, nlohmann::json counterexample = nullptr) {
        checks.push_back({name, "fail", std::move(counterexample)});
    }
    void add_skip(const std::string& name, const std::string& reason) {
        checks.push_back({name, "skipped", nlohmann::json{{"reason", reason}}});
    }
    void add(const std::string& name, bool ok, nlohmann::json counterexample = nullptr) {
        if (ok)
            add_pass(name);
        else
            add_fail(name, std::move(counterexample));
    }

    bool passed() const;
    /// Merge another report's checks under a "prefix/" namespace; counts are
    /// merged under counts[prefix].
    void absorb(const std::string& prefix, const Report& sub);
    nlohmann::json to_json(bool with_timestamp = true) const;
};

}  // namespace ringlab
