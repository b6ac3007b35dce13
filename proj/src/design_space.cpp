#include "cachesel/design_space.hpp"

#include "cachesel/errors.hpp"

namespace cachesel {

void CacheConfig::validate() const {
    if (!is_pow2(sets))
        throw Error(Errc::InvalidSpec, "cache set count must be a power of two");
    if (assoc < 1)
        throw Error(Errc::InvalidSpec, "associativity must be >= 1");
    if (!is_pow2(block_bytes))
        throw Error(Errc::InvalidBlockSize, "block size must be a power of two");
}

void DesignSpace::validate() const {
    if (set_sizes.empty() || assocs.empty())
        throw Error(Errc::EmptySpace, "design space has no configurations");
    if (!is_pow2(block_bytes))
        throw Error(Errc::InvalidBlockSize, "block size must be a power of two");
    for (size_t i = 0; i < set_sizes.size(); ++i) {
        if (!is_pow2(set_sizes[i]))
            throw Error(Errc::InvalidSpec, "set sizes must be powers of two");
        if (i > 0 && set_sizes[i] <= set_sizes[i - 1])
            throw Error(Errc::InvalidSpec, "set sizes must be strictly increasing");
    }
    for (size_t i = 0; i < assocs.size(); ++i) {
        if (assocs[i] < 1)
            throw Error(Errc::InvalidSpec, "associativities must be >= 1");
        if (i > 0 && assocs[i] <= assocs[i - 1])
            throw Error(Errc::InvalidSpec, "associativities must be strictly increasing");
    }
}

DesignSpace DesignSpace::default_space() {
    DesignSpace space;
    for (uint32_t s = 1; s <= 16384; s *= 2)
        space.set_sizes.push_back(s);
    space.assocs = {1, 2, 4, 8, 16};
    space.block_bytes = 4;
    return space;
}

std::vector<CacheConfig> enumerate(const DesignSpace& space) {
    space.validate();
    std::vector<CacheConfig> configs;
    configs.reserve(space.config_count());
    for (uint32_t s : space.set_sizes)
        for (uint32_t a : space.assocs)
            configs.push_back(CacheConfig{s, a, space.block_bytes, Replacement::Fifo});
    return configs;
}

void HierarchyConfig::validate() const {
    private_cache.validate();
    shared_cache.validate();
    if (private_cache.block_bytes != shared_cache.block_bytes)
        throw Error(Errc::InvalidSpec, "block size must match across hierarchy levels");
    if (processor_count < 1)
        throw Error(Errc::InvalidSpec, "processor count must be >= 1");
}

} // namespace cachesel
