#include "cachesel/private_sim.hpp"

#include "cachesel/errors.hpp"
#include "cachesel/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>

namespace cachesel {

namespace {
std::atomic<uint64_t> g_private_sim_runs{0};
} // namespace

uint64_t private_sim_run_count() { return g_private_sim_runs.load(); }

const PrivateConfigResult* PrivateSimResult::find(const CacheConfig& config) const {
    for (const PrivateConfigResult& r : configs)
        if (r.config == config)
            return &r;
    return nullptr;
}

PrivateSimResult simulate_private(const Trace& trace, const DesignSpace& space,
                                  uint32_t processor_count,
                                  std::optional<uint64_t> miss_limit) {
    space.validate();
    if (processor_count != trace.processor_count)
        throw Error(Errc::ProcessorMismatch,
                    "simulation requested for " + std::to_string(processor_count) +
                        " processors but trace declares " +
                        std::to_string(trace.processor_count));
    g_private_sim_runs.fetch_add(1);

    MultiConfigFifoSim sim(space, processor_count, miss_limit);
    PrivateSimResult result;
    result.processor_count = processor_count;
    result.space = space;
    result.miss_limit = miss_limit;
    result.trace_hash = trace_hash(trace);

    uint64_t last_cycle = 0;
    bool first = true;
    const uint32_t block_bytes = space.block_bytes;
    for (const AccessRecord& rec : trace.records) {
        ++result.records_consumed;
        if (first || rec.cycle != last_cycle)
            ++result.tap_observed;
        last_cycle = rec.cycle;
        first = false;
        sim.access(rec.processor, block_of(rec.address, block_bytes), rec.op == Op::Write);
    }

    for (size_t li = 0; li < sim.level_count(); ++li) {
        for (size_t ai = 0; ai < sim.assoc_count(); ++ai) {
            PrivateConfigResult cfg;
            cfg.config = CacheConfig{space.set_sizes[li], space.assocs[ai],
                                     space.block_bytes, Replacement::Fifo};
            cfg.excluded = sim.level_excluded(li);
            cfg.per_processor_misses.resize(processor_count);
            for (uint32_t p = 0; p < processor_count; ++p)
                cfg.per_processor_misses[p] = sim.misses(li, ai, p);
            cfg.total_misses = sim.total_misses(li, ai);
            result.configs.push_back(std::move(cfg));
        }
    }
    return result;
}

PrivateSelection select_private(const PrivateSimResult& result, const PerfBudget& budget,
                                const TimingParams& params, Deadline deadline) {
    const PrivateConfigResult* best = nullptr;
    uint64_t best_budget = 0;
    for (const PrivateConfigResult& cfg : result.configs) {
        if (cfg.excluded)
            continue;
        std::optional<uint64_t> mem_budget =
            max_tam(result.tap_observed, cfg.total_misses, params, deadline);
        if (!mem_budget || *mem_budget > budget.tam_limit)
            continue;
        if (!best || *mem_budget > best_budget ||
            (*mem_budget == best_budget &&
             (cfg.config.capacity_bytes() < best->config.capacity_bytes() ||
              (cfg.config.capacity_bytes() == best->config.capacity_bytes() &&
               cfg.config.assoc < best->config.assoc)))) {
            best = &cfg;
            best_budget = *mem_budget;
        }
    }
    if (!best)
        throw Error(Errc::NoFeasiblePrivate,
                    "no private-level configuration leaves any memory-access budget");
    return PrivateSelection{best->config, best_budget};
}

uint64_t SecondaryTrace::hash() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (i * 8)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(trace_hash);
    mix(source_config.sets);
    mix(source_config.assoc);
    mix(source_config.block_bytes);
    for (const SecondaryAccess& a : accesses) {
        mix(a.cycle);
        mix(a.processor);
        mix(a.block);
    }
    return h;
}

SecondaryTrace emit_secondary_trace(const Trace& trace, const CacheConfig& chosen,
                                    uint32_t processor_count) {
    chosen.validate();
    if (processor_count != trace.processor_count)
        throw Error(Errc::ProcessorMismatch,
                    "secondary trace requested for " + std::to_string(processor_count) +
                        " processors but trace declares " +
                        std::to_string(trace.processor_count));

    SecondaryTrace out;
    out.source_config = chosen;
    out.trace_hash = trace_hash(trace);

    // Plain per-configuration simulation, deliberately separate from the
    // multi-configuration engine: its output length must reproduce that
    // engine's miss count for `chosen`, which the tests cross-check.
    const uint32_t sets = chosen.sets;
    std::vector<std::vector<std::vector<uint64_t>>> queues(
        processor_count, std::vector<std::vector<uint64_t>>(sets));

    auto contains = [](const std::vector<uint64_t>& q, uint64_t b) {
        return std::find(q.begin(), q.end(), b) != q.end();
    };

    for (const AccessRecord& rec : trace.records) {
        uint64_t block = block_of(rec.address, chosen.block_bytes);
        uint32_t set = static_cast<uint32_t>(block & (sets - 1));
        std::vector<uint64_t>& own = queues[rec.processor][set];
        if (!contains(own, block)) {
            out.accesses.push_back(SecondaryAccess{rec.cycle, rec.processor, block});
            if (own.size() == chosen.assoc)
                own.erase(own.begin());
            own.push_back(block);
        }
        if (rec.op == Op::Write) {
            for (uint32_t other = 0; other < processor_count; ++other) {
                if (other == rec.processor)
                    continue;
                std::vector<uint64_t>& q = queues[other][set];
                auto it = std::find(q.begin(), q.end(), block);
                if (it != q.end())
                    q.erase(it);
            }
        }
    }

    // Misses of parallel same-cycle accesses are sequentialized in
    // processor-id order, not trace record order.
    std::sort(out.accesses.begin(), out.accesses.end(),
              [](const SecondaryAccess& a, const SecondaryAccess& b) {
                  return a.cycle != b.cycle ? a.cycle < b.cycle : a.processor < b.processor;
              });
    return out;
}

} // namespace cachesel
