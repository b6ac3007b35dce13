#include "cachesel/shared_sim.hpp"

#include "cachesel/errors.hpp"
#include "cachesel/sim_engine.hpp"

#include <atomic>

namespace cachesel {

namespace {
std::atomic<uint64_t> g_shared_sim_runs{0};
} // namespace

uint64_t shared_sim_run_count() { return g_shared_sim_runs.load(); }

const SharedConfigResult* SharedSimResult::find(const CacheConfig& config) const {
    for (const SharedConfigResult& r : configs)
        if (r.config == config)
            return &r;
    return nullptr;
}

SharedSimResult simulate_shared(const SecondaryTrace& secondary, const DesignSpace& space,
                                std::optional<uint64_t> miss_limit) {
    space.validate();
    if (space.block_bytes != secondary.source_config.block_bytes)
        throw Error(Errc::InvalidSpec,
                    "shared space block size differs from the secondary trace's");
    g_shared_sim_runs.fetch_add(1);

    MultiConfigFifoSim sim(space, 1, miss_limit);
    SharedSimResult result;
    result.source_config = secondary.source_config;
    result.secondary_hash = secondary.hash();
    result.trace_hash = secondary.trace_hash;
    result.space = space;
    result.miss_limit = miss_limit;

    for (const SecondaryAccess& acc : secondary.accesses) {
        ++result.records_consumed;
        sim.access(0, acc.block, false);
    }

    for (size_t li = 0; li < sim.level_count(); ++li) {
        for (size_t ai = 0; ai < sim.assoc_count(); ++ai) {
            SharedConfigResult cfg;
            cfg.config = CacheConfig{space.set_sizes[li], space.assocs[ai],
                                     space.block_bytes, Replacement::Fifo};
            cfg.excluded = sim.level_excluded(li);
            cfg.misses = sim.total_misses(li, ai);
            result.configs.push_back(cfg);
        }
    }
    return result;
}

CacheConfig select_shared(const SharedSimResult& result, uint64_t tam_limit) {
    const SharedConfigResult* best = nullptr;
    for (const SharedConfigResult& cfg : result.configs) {
        if (cfg.excluded || cfg.misses > tam_limit)
            continue;
        if (!best || cfg.misses > best->misses ||
            (cfg.misses == best->misses &&
             (cfg.config.capacity_bytes() < best->config.capacity_bytes() ||
              (cfg.config.capacity_bytes() == best->config.capacity_bytes() &&
               cfg.config.assoc < best->config.assoc))))
            best = &cfg;
    }
    if (!best)
        throw Error(Errc::NoFeasibleShared,
                    "no shared configuration stays within the memory-access budget");
    return best->config;
}

} // namespace cachesel
