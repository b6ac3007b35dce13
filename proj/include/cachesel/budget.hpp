#ifndef CACHESEL_BUDGET_HPP
#define CACHESEL_BUDGET_HPP

#include "cachesel/timing.hpp"
#include "cachesel/trace.hpp"

#include <functional>

namespace cachesel {

// Miss budgets derived before any cache simulation. tas_limit and
// tam_limit are safe upper bounds: a hierarchy whose shared-level or
// memory access count exceeds them cannot meet the deadline, because the
// remaining terms of the time model are non-negative.
struct PerfBudget {
    uint64_t tap_observed = 0;
    uint64_t tas_limit = 0;
    uint64_t tam_limit = 0;
};

// tap_observed = count_tap(trace); slack = wcdmot - tap*tp;
// tas_limit = floor(slack/ts); tam_limit = floor(slack/tm).
// Throws InfeasibleDeadline when slack < 0 (even an always-hitting
// hierarchy misses the deadline).
PerfBudget predict_budgets(uint64_t tap_observed, const TimingParams& params,
                           Deadline deadline);
PerfBudget predict_budgets(const Trace& trace, const TimingParams& params,
                           Deadline deadline);

// Hook for plugging a tighter predictor into the selection pipeline
// without touching the simulators. Any replacement must keep the safety
// property: never report a limit below a count that some feasible
// hierarchy actually produces.
using BudgetPredictor =
    std::function<PerfBudget(const Trace&, const TimingParams&, Deadline)>;

} // namespace cachesel

#endif
