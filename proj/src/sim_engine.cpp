#include "cachesel/sim_engine.hpp"

#include "cachesel/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cachesel {

LookupTable::LookupTable(uint32_t bucket_count, uint32_t bits_per_entry)
    : buckets_(bucket_count),
      bucket_mask_(bucket_count - 1),
      words_per_entry_((bits_per_entry + 63) / 64) {}

LookupTable::Entry& LookupTable::find_or_insert(uint64_t block, bool& created) {
    auto& bucket = buckets_[block & bucket_mask_];
    auto it = std::lower_bound(bucket.begin(), bucket.end(), block,
                               [](const Entry& e, uint64_t b) { return e.block < b; });
    if (it != bucket.end() && it->block == block) {
        created = false;
        return *it;
    }
    created = true;
    uint64_t base = pool_.size();
    pool_.resize(base + words_per_entry_, 0);
    ++entry_count_;
    return *bucket.insert(it, Entry{block, base});
}

const LookupTable::Entry* LookupTable::find(uint64_t block) const {
    const auto& bucket = buckets_[block & bucket_mask_];
    auto it = std::lower_bound(bucket.begin(), bucket.end(), block,
                               [](const Entry& e, uint64_t b) { return e.block < b; });
    if (it != bucket.end() && it->block == block)
        return &*it;
    return nullptr;
}

LookupTable::Entry* LookupTable::find(uint64_t block) {
    return const_cast<Entry*>(static_cast<const LookupTable*>(this)->find(block));
}

MultiConfigFifoSim::MultiConfigFifoSim(const DesignSpace& space, uint32_t processor_count,
                                       std::optional<uint64_t> miss_limit)
    : assocs_(space.assocs),
      procs_(processor_count),
      limit_(miss_limit),
      table_(space.max_sets(),
             static_cast<uint32_t>(space.set_sizes.size() * processor_count *
                                   space.assocs.size())) {
    space.validate();
    if (processor_count < 1)
        throw Error(Errc::InvalidSpec, "simulation needs at least one processor");
    levels_.reserve(space.set_sizes.size());
    for (uint32_t sets : space.set_sizes) {
        Level lvl;
        lvl.sets = sets;
        lvl.counts.assign(assocs_.size() * procs_, 0);
        lvl.totals.assign(assocs_.size(), 0);
        lvl.ways.reserve(assocs_.size());
        for (uint32_t a : assocs_) {
            WayState ws;
            ws.assoc = a;
            ws.slots.assign(size_t(sets) * procs_ * a, 0);
            ws.head.assign(size_t(sets) * procs_, 0);
            ws.len.assign(size_t(sets) * procs_, 0);
            lvl.ways.push_back(std::move(ws));
        }
        levels_.push_back(std::move(lvl));
    }
}

void MultiConfigFifoSim::enqueue(Level& lvl, size_t level_idx, size_t assoc_idx,
                                 uint32_t set, uint32_t proc, uint64_t block) {
    WayState& ws = lvl.ways[assoc_idx];
    size_t queue = size_t(set) * procs_ + proc;
    size_t base = queue * ws.assoc;
    uint8_t& head = ws.head[queue];
    uint8_t& len = ws.len[queue];
    if (len == ws.assoc) { // evict the oldest resident
        uint64_t victim = ws.slots[base + head];
        LookupTable::Entry* ve = table_.find(victim);
        table_.clear(*ve, bit_index(level_idx, proc, assoc_idx));
        head = static_cast<uint8_t>((head + 1) % ws.assoc);
        --len;
    }
    ws.slots[base + (head + len) % ws.assoc] = block;
    ++len;
}

void MultiConfigFifoSim::remove_block(Level& lvl, size_t assoc_idx, uint32_t set,
                                      uint32_t proc, uint64_t block) {
    WayState& ws = lvl.ways[assoc_idx];
    size_t queue = size_t(set) * procs_ + proc;
    size_t base = queue * ws.assoc;
    uint8_t head = ws.head[queue];
    uint8_t& len = ws.len[queue];
    for (uint8_t i = 0; i < len; ++i) {
        if (ws.slots[base + (head + i) % ws.assoc] == block) {
            // Compact toward the head; remaining blocks keep relative order.
            for (uint8_t j = i; j + 1 < len; ++j)
                ws.slots[base + (head + j) % ws.assoc] =
                    ws.slots[base + (head + j + 1) % ws.assoc];
            --len;
            return;
        }
    }
    throw std::logic_error("invalidation target not present in queue");
}

void MultiConfigFifoSim::access(uint32_t processor, uint64_t block, bool is_write) {
    bool created = false;
    LookupTable::Entry& entry = table_.find_or_insert(block, created);

    bool any_miss = false;
    for (size_t li = 0; li < levels_.size(); ++li) {
        Level& lvl = levels_[li];
        if (lvl.excluded)
            continue;
        uint32_t set = static_cast<uint32_t>(block & (lvl.sets - 1));
        for (size_t ai = 0; ai < assocs_.size(); ++ai) {
            uint32_t bit = bit_index(li, processor, ai);
            if (!table_.test(entry, bit)) {
                ++lvl.counts[ai * procs_ + processor];
                ++lvl.totals[ai];
                any_miss = true;
                enqueue(lvl, li, ai, set, processor, block);
                table_.set(entry, bit);
            }
        }
        if (is_write && !created) {
            // Write-invalidate: drop every other processor's copy; the
            // writer's own copy stays valid.
            for (uint32_t other = 0; other < procs_; ++other) {
                if (other == processor)
                    continue;
                for (size_t ai = 0; ai < assocs_.size(); ++ai) {
                    uint32_t bit = bit_index(li, other, ai);
                    if (table_.test(entry, bit)) {
                        remove_block(lvl, ai, set, other, block);
                        table_.clear(entry, bit);
                    }
                }
            }
        }
    }
    if (any_miss && limit_)
        apply_exclusions();
}

void MultiConfigFifoSim::apply_exclusions() {
    for (Level& lvl : levels_) {
        if (lvl.excluded)
            continue;
        uint64_t best = lvl.totals[0];
        for (size_t ai = 1; ai < lvl.totals.size(); ++ai)
            best = std::min(best, lvl.totals[ai]);
        if (best > *limit_)
            lvl.excluded = true;
    }
}

void MultiConfigFifoSim::audit() const {
    // Queue -> bit: every queued block has its presence bit set, appears
    // once, and maps to the set holding it.
    for (size_t li = 0; li < levels_.size(); ++li) {
        const Level& lvl = levels_[li];
        for (size_t ai = 0; ai < lvl.ways.size(); ++ai) {
            const WayState& ws = lvl.ways[ai];
            for (uint32_t set = 0; set < lvl.sets; ++set) {
                for (uint32_t proc = 0; proc < procs_; ++proc) {
                    size_t queue = size_t(set) * procs_ + proc;
                    size_t base = queue * ws.assoc;
                    uint8_t len = ws.len[queue];
                    if (len > ws.assoc)
                        throw std::logic_error("queue length exceeds associativity");
                    for (uint8_t i = 0; i < len; ++i) {
                        uint64_t block = ws.slots[base + (ws.head[queue] + i) % ws.assoc];
                        if ((block & (lvl.sets - 1)) != set)
                            throw std::logic_error("queued block maps to a different set");
                        for (uint8_t j = 0; j < i; ++j)
                            if (ws.slots[base + (ws.head[queue] + j) % ws.assoc] == block)
                                throw std::logic_error("block queued twice");
                        const LookupTable::Entry* e = table_.find(block);
                        if (!e || !table_.test(*e, bit_index(li, proc, ai)))
                            throw std::logic_error("queued block lacks its presence bit");
                    }
                }
            }
        }
    }
    // Bit -> queue: every set presence bit corresponds to a queued block.
    table_.for_each_entry([&](const LookupTable::Entry& e) {
        for (size_t li = 0; li < levels_.size(); ++li) {
            const Level& lvl = levels_[li];
            uint32_t set = static_cast<uint32_t>(e.block & (lvl.sets - 1));
            for (uint32_t proc = 0; proc < procs_; ++proc) {
                for (size_t ai = 0; ai < assocs_.size(); ++ai) {
                    if (!table_.test(e, bit_index(li, proc, ai)))
                        continue;
                    const WayState& ws = lvl.ways[ai];
                    size_t queue = size_t(set) * procs_ + proc;
                    size_t base = queue * ws.assoc;
                    bool found = false;
                    for (uint8_t i = 0; i < ws.len[queue] && !found; ++i)
                        found = ws.slots[base + (ws.head[queue] + i) % ws.assoc] == e.block;
                    if (!found)
                        throw std::logic_error("presence bit set without a queued block");
                }
            }
        }
    });
}

} // namespace cachesel
