#ifndef CACHESEL_TIMING_HPP
#define CACHESEL_TIMING_HPP

#include <cstdint>
#include <optional>

namespace cachesel {

// Per-access service times in integer nanoseconds. All arithmetic on the
// data-memory-operation time is exact; no floats anywhere in feasibility
// decisions.
struct TimingParams {
    uint64_t tp_ns = 1;  // sequential private-level access
    uint64_t ts_ns = 4;  // sequential shared-level access
    uint64_t tm_ns = 15; // main-memory access

    void validate() const;
};

// Observed access volumes of one hierarchy on one trace:
//   tap — distinct access cycles served at the private level,
//   tas — sequentialized private misses served at the shared level,
//   tam — shared misses served by main memory.
struct AccessCounts {
    uint64_t tap = 0;
    uint64_t tas = 0;
    uint64_t tam = 0;

    void validate() const;

    bool operator==(const AccessCounts& o) const {
        return tap == o.tap && tas == o.tas && tam == o.tam;
    }
};

struct Deadline {
    uint64_t wcdmot_ns = 0; // worst-case data memory operation time budget
};

// Modeled data memory operation time: tap*tp + tas*ts + tam*tm.
uint64_t amt_ns(const AccessCounts& counts, const TimingParams& params);

bool feasible(const AccessCounts& counts, const TimingParams& params, Deadline deadline);

// Largest memory-access count that still meets the deadline given tap and
// tas, i.e. floor((wcdmot - tap*tp - tas*ts) / tm); absent when the first
// two terms already exceed the budget.
std::optional<uint64_t> max_tam(uint64_t tap, uint64_t tas, const TimingParams& params,
                                Deadline deadline);

} // namespace cachesel

#endif
