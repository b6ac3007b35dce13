#include "cachesel/oracle.hpp"

#include "cachesel/errors.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace cachesel {
namespace oracle {

namespace {

// Straightforward FIFO set: newest at the back, evict from the front.
class FifoCache {
public:
    FifoCache(uint32_t sets, uint32_t assoc) : sets_(sets), assoc_(assoc), queues_(sets) {}

    bool contains(uint64_t block) const {
        const auto& q = queues_[block & (sets_ - 1)];
        return std::find(q.begin(), q.end(), block) != q.end();
    }

    // Inserts a missing block; returns the evicted block if the set was full.
    std::optional<uint64_t> insert(uint64_t block) {
        auto& q = queues_[block & (sets_ - 1)];
        std::optional<uint64_t> victim;
        if (q.size() == assoc_) {
            victim = q.front();
            q.erase(q.begin());
        }
        q.push_back(block);
        return victim;
    }

    void erase(uint64_t block) {
        auto& q = queues_[block & (sets_ - 1)];
        auto it = std::find(q.begin(), q.end(), block);
        if (it != q.end())
            q.erase(it);
    }

private:
    uint32_t sets_;
    uint32_t assoc_;
    std::vector<std::vector<uint64_t>> queues_;
};

} // namespace

std::vector<uint64_t> simulate_private_only(const Trace& trace, const CacheConfig& config,
                                            uint32_t processor_count) {
    config.validate();
    if (processor_count != trace.processor_count)
        throw Error(Errc::ProcessorMismatch, "processor count does not match the trace");

    std::vector<FifoCache> caches(processor_count, FifoCache(config.sets, config.assoc));
    std::vector<uint64_t> misses(processor_count, 0);
    for (const AccessRecord& rec : trace.records) {
        uint64_t block = block_of(rec.address, config.block_bytes);
        if (!caches[rec.processor].contains(block)) {
            ++misses[rec.processor];
            caches[rec.processor].insert(block);
        }
        if (rec.op == Op::Write)
            for (uint32_t other = 0; other < processor_count; ++other)
                if (other != rec.processor)
                    caches[other].erase(block);
    }
    return misses;
}

uint64_t simulate_shared_only(const SecondaryTrace& secondary, const CacheConfig& config) {
    config.validate();
    FifoCache cache(config.sets, config.assoc);
    uint64_t misses = 0;
    for (const SecondaryAccess& acc : secondary.accesses) {
        if (!cache.contains(acc.block)) {
            ++misses;
            cache.insert(acc.block);
        }
    }
    return misses;
}

AccessCounts simulate_hierarchy(const Trace& trace, const HierarchyConfig& hierarchy,
                                const OracleOptions& options) {
    hierarchy.validate();
    if (hierarchy.processor_count != trace.processor_count)
        throw Error(Errc::ProcessorMismatch, "processor count does not match the trace");

    const uint32_t procs = hierarchy.processor_count;
    std::vector<FifoCache> privates(
        procs, FifoCache(hierarchy.private_cache.sets, hierarchy.private_cache.assoc));
    FifoCache shared(hierarchy.shared_cache.sets, hierarchy.shared_cache.assoc);

    AccessCounts counts;
    struct Miss {
        uint32_t processor;
        uint64_t block;
    };
    std::vector<Miss> cycle_misses;

    auto flush_cycle = [&]() {
        // Parallel same-cycle misses reach the shared cache sequentialized
        // in processor order.
        std::sort(cycle_misses.begin(), cycle_misses.end(),
                  [](const Miss& a, const Miss& b) { return a.processor < b.processor; });
        for (const Miss& m : cycle_misses) {
            ++counts.tas;
            if (!shared.contains(m.block)) {
                ++counts.tam;
                std::optional<uint64_t> victim = shared.insert(m.block);
                if (victim && options.back_invalidate)
                    for (uint32_t p = 0; p < procs; ++p)
                        privates[p].erase(*victim);
            }
        }
        cycle_misses.clear();
    };

    uint64_t current_cycle = 0;
    bool first = true;
    for (const AccessRecord& rec : trace.records) {
        if (!first && rec.cycle != current_cycle)
            flush_cycle();
        if (first || rec.cycle != current_cycle)
            ++counts.tap;
        current_cycle = rec.cycle;
        first = false;

        uint64_t block = block_of(rec.address, hierarchy.private_cache.block_bytes);
        if (!privates[rec.processor].contains(block)) {
            cycle_misses.push_back(Miss{rec.processor, block});
            privates[rec.processor].insert(block);
        }
        if (rec.op == Op::Write)
            for (uint32_t other = 0; other < procs; ++other)
                if (other != rec.processor)
                    privates[other].erase(block);
    }
    flush_cycle();
    return counts;
}

SweepMatrix sweep(const Trace& trace, const DesignSpace& private_space,
                  const DesignSpace& shared_space, uint32_t processor_count,
                  const OracleOptions& options, unsigned threads) {
    std::vector<CacheConfig> privates = enumerate(private_space);
    std::vector<CacheConfig> shareds = enumerate(shared_space);

    SweepMatrix matrix;
    matrix.private_count = privates.size();
    matrix.shared_count = shareds.size();
    matrix.tap = count_tap(trace);
    matrix.entries.resize(privates.size() * shareds.size());

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, matrix.entries.size() ? matrix.entries.size() : 1);

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t idx = next.fetch_add(1);
            if (idx >= matrix.entries.size())
                return;
            const CacheConfig& p = privates[idx / shareds.size()];
            const CacheConfig& s = shareds[idx % shareds.size()];
            HierarchyConfig h{p, s, processor_count};
            matrix.entries[idx] = SweepEntry{p, s, simulate_hierarchy(trace, h, options)};
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    return matrix;
}

std::optional<HierarchyConfig> select_from_sweep(const SweepMatrix& matrix,
                                                 uint32_t processor_count,
                                                 const TimingParams& params,
                                                 Deadline deadline) {
    const SweepEntry* best = nullptr;
    uint64_t best_capacity = 0;
    auto better = [&](const SweepEntry& e) {
        HierarchyConfig h{e.private_config, e.shared_config, processor_count};
        uint64_t cap = h.capacity_bytes();
        if (!best || cap < best_capacity)
            return true;
        if (cap > best_capacity)
            return false;
        auto key = [](const SweepEntry& x) {
            return std::tuple(x.shared_config.capacity_bytes(),
                              x.private_config.capacity_bytes(), x.shared_config.assoc,
                              x.private_config.assoc);
        };
        return key(e) < key(*best);
    };
    for (const SweepEntry& e : matrix.entries) {
        if (!feasible(e.counts, params, deadline))
            continue;
        if (better(e)) {
            best = &e;
            best_capacity =
                HierarchyConfig{e.private_config, e.shared_config, processor_count}
                    .capacity_bytes();
        }
    }
    if (!best)
        return std::nullopt;
    return HierarchyConfig{best->private_config, best->shared_config, processor_count};
}

std::optional<HierarchyConfig> exhaustive_select(const Trace& trace,
                                                 const DesignSpace& private_space,
                                                 const DesignSpace& shared_space,
                                                 uint32_t processor_count,
                                                 const TimingParams& params,
                                                 Deadline deadline, unsigned threads) {
    SweepMatrix matrix =
        sweep(trace, private_space, shared_space, processor_count, OracleOptions{}, threads);
    return select_from_sweep(matrix, processor_count, params, deadline);
}

} // namespace oracle
} // namespace cachesel
