#ifndef CACHESEL_PRIVATE_SIM_HPP
#define CACHESEL_PRIVATE_SIM_HPP

#include "cachesel/budget.hpp"
#include "cachesel/design_space.hpp"
#include "cachesel/timing.hpp"
#include "cachesel/trace.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cachesel {

// Miss counts of one private-level configuration across all processors.
// When `excluded` is set the counts froze at exclusion time and are lower
// bounds; otherwise they are exact.
struct PrivateConfigResult {
    CacheConfig config;
    std::vector<uint64_t> per_processor_misses;
    uint64_t total_misses = 0; // the configuration's shared-level access count
    bool excluded = false;
};

struct PrivateSimResult {
    std::vector<PrivateConfigResult> configs; // enumerate(space) order
    uint64_t tap_observed = 0;
    uint64_t trace_hash = 0;
    uint32_t processor_count = 0;
    DesignSpace space;
    std::optional<uint64_t> miss_limit; // exclusion threshold used, if any
    uint64_t records_consumed = 0;      // single-pass accounting

    const PrivateConfigResult* find(const CacheConfig& config) const;
};

// Evaluates every configuration of `space` as the private level over one
// read of the trace: per-record FIFO hit/miss per (config, processor) with
// write-invalidate coherence between processors, excluding whole set-size
// tiers once even their best associativity option has missed more than
// `miss_limit` times.
PrivateSimResult simulate_private(const Trace& trace, const DesignSpace& space,
                                  uint32_t processor_count,
                                  std::optional<uint64_t> miss_limit);

// Total simulate_private invocations so far; lets callers prove that a
// cached-result path ran zero fresh private-level simulations.
uint64_t private_sim_run_count();

struct PrivateSelection {
    CacheConfig config;
    uint64_t memory_budget = 0; // the chosen configuration's miss limit for the shared level
};

// Picks the private configuration whose observed miss count leaves the
// largest memory-access budget under the deadline; ties fall to the
// smallest capacity, then the smallest associativity. Configurations with
// no budget at all (private + shared terms already over the deadline) or a
// budget above the predicted limit are discarded.
PrivateSelection select_private(const PrivateSimResult& result, const PerfBudget& budget,
                                const TimingParams& params, Deadline deadline);

// The shared-level access stream: one entry per private miss, ordered by
// (cycle, processor).
struct SecondaryAccess {
    uint64_t cycle = 0;
    uint32_t processor = 0;
    uint64_t block = 0;

    bool operator==(const SecondaryAccess& o) const {
        return cycle == o.cycle && processor == o.processor && block == o.block;
    }
};

struct SecondaryTrace {
    std::vector<SecondaryAccess> accesses;
    CacheConfig source_config; // the private configuration that produced it
    uint64_t trace_hash = 0;

    uint64_t hash() const;
};

// Re-simulates only `chosen` (reads and writes alike allocate) and emits
// one shared-level access per private miss. Length equals the chosen
// configuration's total miss count from simulate_private.
SecondaryTrace emit_secondary_trace(const Trace& trace, const CacheConfig& chosen,
                                    uint32_t processor_count);

} // namespace cachesel

#endif
