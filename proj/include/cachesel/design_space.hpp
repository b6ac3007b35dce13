#ifndef CACHESEL_DESIGN_SPACE_HPP
#define CACHESEL_DESIGN_SPACE_HPP

#include <cstdint>
#include <vector>

namespace cachesel {

enum class Replacement { Fifo };

constexpr bool is_pow2(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

// One set-associative cache configuration: S sets x A ways of B-byte blocks.
struct CacheConfig {
    uint32_t sets = 1;        // power of two
    uint32_t assoc = 1;       // >= 1
    uint32_t block_bytes = 4; // power of two
    Replacement replacement = Replacement::Fifo;

    uint64_t capacity_bytes() const {
        return uint64_t(sets) * assoc * block_bytes;
    }

    bool operator==(const CacheConfig& o) const {
        return sets == o.sets && assoc == o.assoc && block_bytes == o.block_bytes &&
               replacement == o.replacement;
    }
    bool operator!=(const CacheConfig& o) const { return !(*this == o); }

    void validate() const;
};

// The grid searched at one hierarchy level: all (S, A) pairs with a single
// fixed block size. Lists are strictly increasing.
struct DesignSpace {
    std::vector<uint32_t> set_sizes;
    std::vector<uint32_t> assocs;
    uint32_t block_bytes = 4;

    void validate() const;
    size_t config_count() const { return set_sizes.size() * assocs.size(); }
    uint32_t max_sets() const { return set_sizes.empty() ? 1 : set_sizes.back(); }

    // Grid used throughout unless overridden: S = 1..16384, A = 1,2,4,8,16,
    // B = 4 bytes (75 configurations).
    static DesignSpace default_space();

    bool operator==(const DesignSpace& o) const {
        return set_sizes == o.set_sizes && assocs == o.assocs && block_bytes == o.block_bytes;
    }
};

// Cartesian product set_sizes x assocs, ordered by (S ascending, A ascending).
std::vector<CacheConfig> enumerate(const DesignSpace& space);

// A two-level hierarchy: P identical private caches above one shared cache.
// Both levels share the block size. No capacity relation between levels is
// required; a shared cache smaller than the private level is legal.
struct HierarchyConfig {
    CacheConfig private_cache;
    CacheConfig shared_cache;
    uint32_t processor_count = 1;

    void validate() const;

    // P private copies plus the shared cache, exact sum.
    uint64_t capacity_bytes() const {
        return uint64_t(processor_count) * private_cache.capacity_bytes() +
               shared_cache.capacity_bytes();
    }

    bool operator==(const HierarchyConfig& o) const {
        return private_cache == o.private_cache && shared_cache == o.shared_cache &&
               processor_count == o.processor_count;
    }
};

} // namespace cachesel

#endif
