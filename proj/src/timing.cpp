#include "cachesel/timing.hpp"

#include "cachesel/errors.hpp"

namespace cachesel {

namespace {
using u128 = unsigned __int128;

uint64_t checked_narrow(u128 v, const char* what) {
    if (v > u128(UINT64_MAX))
        throw Error(Errc::InvalidSpec, std::string(what) + " overflows 64-bit nanoseconds");
    return static_cast<uint64_t>(v);
}
} // namespace

void TimingParams::validate() const {
    if (tp_ns == 0 || tp_ns > ts_ns || ts_ns > tm_ns)
        throw Error(Errc::InvalidSpec, "timing params must satisfy 0 < tp <= ts <= tm");
}

void AccessCounts::validate() const {
    if (tam > tas)
        throw Error(Errc::InvalidSpec,
                    "memory accesses cannot exceed shared-level accesses");
}

uint64_t amt_ns(const AccessCounts& counts, const TimingParams& params) {
    u128 total = u128(counts.tap) * params.tp_ns + u128(counts.tas) * params.ts_ns +
                 u128(counts.tam) * params.tm_ns;
    return checked_narrow(total, "memory operation time");
}

bool feasible(const AccessCounts& counts, const TimingParams& params, Deadline deadline) {
    return amt_ns(counts, params) <= deadline.wcdmot_ns;
}

std::optional<uint64_t> max_tam(uint64_t tap, uint64_t tas, const TimingParams& params,
                                Deadline deadline) {
    u128 used = u128(tap) * params.tp_ns + u128(tas) * params.ts_ns;
    if (used > deadline.wcdmot_ns)
        return std::nullopt;
    return checked_narrow((deadline.wcdmot_ns - used) / params.tm_ns, "memory budget");
}

} // namespace cachesel
