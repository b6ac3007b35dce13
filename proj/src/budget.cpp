#include "cachesel/budget.hpp"

#include "cachesel/errors.hpp"

namespace cachesel {

PerfBudget predict_budgets(uint64_t tap_observed, const TimingParams& params,
                           Deadline deadline) {
    params.validate();
    unsigned __int128 private_time = (unsigned __int128)tap_observed * params.tp_ns;
    if (private_time > deadline.wcdmot_ns)
        throw Error(Errc::InfeasibleDeadline,
                    "private-level time alone (" + std::to_string(tap_observed) +
                        " accesses) exceeds the deadline");
    uint64_t slack = deadline.wcdmot_ns - static_cast<uint64_t>(private_time);
    return PerfBudget{tap_observed, slack / params.ts_ns, slack / params.tm_ns};
}

PerfBudget predict_budgets(const Trace& trace, const TimingParams& params,
                           Deadline deadline) {
    return predict_budgets(count_tap(trace), params, deadline);
}

} // namespace cachesel
