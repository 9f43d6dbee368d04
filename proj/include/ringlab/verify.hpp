#pragma once

#include <string>
#include <vector>

#include "ringlab/report.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

/// One verification run: which ring, how many nilpotent generators, and the
/// sampling knobs shared by every suite.
struct RunConfig {
    std::string spec;
    std::size_t k = 1;
    std::uint64_t seed = 0;
    Budget budget;
    std::string mode = "auto";  // "auto" | "exhaustive" | "sampled"
    std::string cache_dir;      // empty disables the ring table cache
};

/// Names accepted by run_suite, in canonical order.
const std::vector<std::string>& suite_names();

/// Runs one named suite. Unknown names raise UnsupportedSuite; structural
/// preconditions escape as their own types (NotAChainRing, CharIsP,
/// NotCommutative, BudgetExceeded) so callers can tell "does not apply"
/// from "failed".
Report run_suite(const std::string& suite, const RunConfig& cfg);

/// Runs every suite. Suites whose preconditions do not hold for this ring
/// come back as a single skipped check carrying the reason.
std::vector<Report> run_all(const RunConfig& cfg);

}  // namespace ringlab
