#ifndef CACHESEL_SHARED_SIM_HPP
#define CACHESEL_SHARED_SIM_HPP

#include "cachesel/design_space.hpp"
#include "cachesel/private_sim.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cachesel {

struct SharedConfigResult {
    CacheConfig config;
    uint64_t misses = 0; // the configuration's memory access count
    bool excluded = false;
};

struct SharedSimResult {
    std::vector<SharedConfigResult> configs; // enumerate(space) order
    CacheConfig source_config;               // private config behind the secondary trace
    uint64_t secondary_hash = 0;
    uint64_t trace_hash = 0;
    DesignSpace space;
    std::optional<uint64_t> miss_limit;
    uint64_t records_consumed = 0;

    const SharedConfigResult* find(const CacheConfig& config) const;
};

// Evaluates every shared configuration over one read of the secondary
// trace. Same single-pass engine as the private level with a processor
// count of one: a single cache, no coherence. Set-size tiers whose best
// associativity option exceeds `miss_limit` misses are excluded.
SharedSimResult simulate_shared(const SecondaryTrace& secondary, const DesignSpace& space,
                                std::optional<uint64_t> miss_limit);

uint64_t shared_sim_run_count();

// Among non-excluded configurations within the memory-access budget,
// returns the one with the most misses (least capacity wasted); ties fall
// to the smallest capacity, then the smallest associativity.
CacheConfig select_shared(const SharedSimResult& result, uint64_t tam_limit);

} // namespace cachesel

#endif
