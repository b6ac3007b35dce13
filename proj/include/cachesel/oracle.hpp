#ifndef CACHESEL_ORACLE_HPP
#define CACHESEL_ORACLE_HPP

#include "cachesel/design_space.hpp"
#include "cachesel/private_sim.hpp"
#include "cachesel/timing.hpp"
#include "cachesel/trace.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cachesel {
namespace oracle {

// Reference simulators: one configuration at a time, no shortcuts, no
// shared state with the single-pass engine. They define the semantics the
// fast path is tested against.

struct OracleOptions {
    // Enforce strict inclusion: a shared-cache eviction also drops the
    // block from every private cache. Off by default; the layered
    // selection model simulates the private level independent of shared
    // contents, and the on mode exists to measure how far that departs
    // from strictly-inclusive hardware.
    bool back_invalidate = false;
};

// P coherent FIFO caches of one configuration; returns per-processor miss
// counts. Write-invalidate: a write drops every other processor's copy.
std::vector<uint64_t> simulate_private_only(const Trace& trace, const CacheConfig& config,
                                            uint32_t processor_count);

// One FIFO cache over a block stream; returns the miss count.
uint64_t simulate_shared_only(const SecondaryTrace& secondary, const CacheConfig& config);

// Full two-level run: tap = distinct cycles, tas = private misses
// (sequentialized per cycle in processor order), tam = shared misses.
AccessCounts simulate_hierarchy(const Trace& trace, const HierarchyConfig& hierarchy,
                                const OracleOptions& options = {});

// Exact counts for every (private, shared) pair of the two spaces.
struct SweepEntry {
    CacheConfig private_config;
    CacheConfig shared_config;
    AccessCounts counts;
};

struct SweepMatrix {
    std::vector<SweepEntry> entries; // private-major, enumerate() order each
    size_t private_count = 0;
    size_t shared_count = 0;
    uint64_t tap = 0;

    const SweepEntry& at(size_t private_idx, size_t shared_idx) const {
        return entries[private_idx * shared_count + shared_idx];
    }
};

// Simulates every pair, fanning pairs across `threads` workers (0 =
// hardware concurrency). Results are independent of evaluation order.
// Selection always runs with back-invalidation off; the on mode is for
// measuring the layered model against strictly-inclusive hardware.
SweepMatrix sweep(const Trace& trace, const DesignSpace& private_space,
                  const DesignSpace& shared_space, uint32_t processor_count,
                  const OracleOptions& options = {}, unsigned threads = 0);

// Minimum-capacity hierarchy among pairs meeting the deadline; ties fall
// to smaller shared capacity, then smaller private capacity, then smaller
// associativities. Absent when nothing qualifies.
std::optional<HierarchyConfig> select_from_sweep(const SweepMatrix& matrix,
                                                 uint32_t processor_count,
                                                 const TimingParams& params,
                                                 Deadline deadline);

std::optional<HierarchyConfig> exhaustive_select(const Trace& trace,
                                                 const DesignSpace& private_space,
                                                 const DesignSpace& shared_space,
                                                 uint32_t processor_count,
                                                 const TimingParams& params,
                                                 Deadline deadline, unsigned threads = 0);

} // namespace oracle
} // namespace cachesel

#endif
