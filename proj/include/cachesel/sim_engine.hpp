#ifndef CACHESEL_SIM_ENGINE_HPP
#define CACHESEL_SIM_ENGINE_HPP

#include "cachesel/design_space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cachesel {

// Block-presence index for the single-pass engine. Entries are bucketed by
// block id modulo the largest set size (the same mapping cache sets use)
// and kept sorted within each bucket for binary search. Each entry carries
// one presence bit per (set-size level, processor, associativity option):
// the bit is set exactly while the block sits in the corresponding FIFO
// queue of the simulation tree.
class LookupTable {
public:
    struct Entry {
        uint64_t block;
        uint64_t bit_base; // offset of this entry's first word in the pool
    };

    LookupTable(uint32_t bucket_count, uint32_t bits_per_entry);

    // Returns the entry for `block`, inserting a zero-bit entry if absent.
    // `created` reports whether the insert happened.
    Entry& find_or_insert(uint64_t block, bool& created);
    // Returns nullptr when the block has never been seen.
    const Entry* find(uint64_t block) const;
    Entry* find(uint64_t block);

    bool test(const Entry& e, uint32_t bit) const {
        return (pool_[e.bit_base + bit / 64] >> (bit % 64)) & 1;
    }
    void set(const Entry& e, uint32_t bit) { pool_[e.bit_base + bit / 64] |= 1ull << (bit % 64); }
    void clear(const Entry& e, uint32_t bit) {
        pool_[e.bit_base + bit / 64] &= ~(1ull << (bit % 64));
    }

    size_t entry_count() const { return entry_count_; }

    template <typename Fn> void for_each_entry(Fn&& fn) const {
        for (const auto& bucket : buckets_)
            for (const Entry& e : bucket)
                fn(e);
    }

private:
    std::vector<std::vector<Entry>> buckets_;
    std::vector<uint64_t> pool_;
    uint32_t bucket_mask_;
    uint32_t words_per_entry_;
    size_t entry_count_ = 0;
};

// Simulates every (S, A) configuration of one design space over a single
// read of a block-access stream, maintaining per-configuration FIFO state
// per processor with write-invalidate coherence between processors.
//
// One tree level per set size. A level whose best associativity option has
// already missed more than `miss_limit` times in total is excluded: its
// state and counts freeze and later accesses skip it. Frozen counts are
// lower bounds on the true counts.
//
// A shared (single) cache is the same machine with processor_count == 1;
// the invalidation step then has no peers to touch.
class MultiConfigFifoSim {
public:
    MultiConfigFifoSim(const DesignSpace& space, uint32_t processor_count,
                       std::optional<uint64_t> miss_limit);

    void access(uint32_t processor, uint64_t block, bool is_write);

    size_t level_count() const { return levels_.size(); }
    size_t assoc_count() const { return assocs_.size(); }
    bool level_excluded(size_t level) const { return levels_[level].excluded; }
    uint64_t misses(size_t level, size_t assoc_idx, uint32_t proc) const {
        return levels_[level].counts[assoc_idx * procs_ + proc];
    }
    uint64_t total_misses(size_t level, size_t assoc_idx) const {
        return levels_[level].totals[assoc_idx];
    }

    // Cross-checks every presence bit against queue membership in both
    // directions (excluded levels froze both sides together, so they are
    // checked too). Throws std::logic_error on any inconsistency.
    void audit() const;

private:
    struct WayState {
        uint32_t assoc;
        std::vector<uint64_t> slots; // sets * procs * assoc
        std::vector<uint8_t> head;   // sets * procs
        std::vector<uint8_t> len;    // sets * procs
    };
    struct Level {
        uint32_t sets;
        bool excluded = false;
        std::vector<WayState> ways;   // one per associativity option
        std::vector<uint64_t> counts; // [assoc_idx * procs + proc]
        std::vector<uint64_t> totals; // [assoc_idx]
    };

    uint32_t bit_index(size_t level, uint32_t proc, size_t assoc_idx) const {
        return static_cast<uint32_t>((level * procs_ + proc) * assocs_.size() + assoc_idx);
    }

    void enqueue(Level& lvl, size_t level_idx, size_t assoc_idx, uint32_t set,
                 uint32_t proc, uint64_t block);
    void remove_block(Level& lvl, size_t assoc_idx, uint32_t set, uint32_t proc,
                      uint64_t block);
    void apply_exclusions();

    std::vector<Level> levels_;
    std::vector<uint32_t> assocs_;
    uint32_t procs_;
    std::optional<uint64_t> limit_;
    LookupTable table_;
};

} // namespace cachesel

#endif
