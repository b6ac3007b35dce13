#ifndef CACHESEL_SELECTOR_HPP
#define CACHESEL_SELECTOR_HPP

#include "cachesel/budget.hpp"
#include "cachesel/design_space.hpp"
#include "cachesel/shared_sim.hpp"

#include <chrono>
#include <memory>
#include <string>

namespace cachesel {

struct LevelTally {
    uint32_t simulated = 0; // configurations with exact counts
    uint32_t excluded = 0;  // configurations abandoned by level exclusion
};

// Everything a selection run produced, including the intermediate
// simulation results needed to reselect under a tighter deadline without
// re-simulating.
struct SelectionReport {
    HierarchyConfig chosen;
    PerfBudget budget;
    AccessCounts counts;
    uint64_t amt_ns = 0;
    LevelTally private_tally;
    LevelTally shared_tally;

    std::shared_ptr<const PrivateSimResult> private_result;
    PrivateSelection private_choice;
    uint64_t secondary_hash = 0;
    uint64_t secondary_length = 0;
    std::shared_ptr<const SharedSimResult> shared_result;

    TimingParams params;
    Deadline deadline;
    uint64_t trace_hash = 0;
    uint32_t processor_count = 0;
    DesignSpace private_space;
    DesignSpace shared_space;

    bool private_sim_reused = false; // true when served from a cached result
    bool shared_sim_reused = false;
    std::chrono::nanoseconds duration{0};
};

// Semantic equality of two runs: same hierarchy, counts, time and budgets.
// Wall clock, tallies and reuse markers are ignored.
bool same_outcome(const SelectionReport& a, const SelectionReport& b);

// The full selection pipeline: predict budgets, evaluate the private level
// in one pass, pick the private configuration, emit the secondary trace,
// evaluate the shared level in one pass, pick the shared configuration.
// Throws InfeasibleDeadline / NoFeasiblePrivate / NoFeasibleShared, naming
// the failing stage.
SelectionReport select_hierarchy(const Trace& trace, const DesignSpace& private_space,
                                 const DesignSpace& shared_space, uint32_t processor_count,
                                 const TimingParams& params, Deadline deadline,
                                 const BudgetPredictor& predictor = nullptr);

// Re-runs only the selection arithmetic against the cached simulation
// results for a deadline at or below the original. The private level is
// never re-simulated: every configuration a tighter deadline can need has
// exact cached counts. The shared level is re-simulated only when the
// private choice changes (over a freshly emitted secondary trace).
// Throws RequiresFullRun when the new deadline exceeds the original and
// StaleCache when the trace does not match the report.
SelectionReport reselect(const SelectionReport& report, const Trace& trace,
                         Deadline new_deadline);

// Versioned session file so reselection works across CLI invocations.
void save_session(const SelectionReport& report, const std::string& path);
SelectionReport load_session(const std::string& path);

} // namespace cachesel

#endif
