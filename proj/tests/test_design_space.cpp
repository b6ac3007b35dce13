#include "cachesel/design_space.hpp"
#include "cachesel/errors.hpp"

#include <doctest.h>

#include <set>

using namespace cachesel;

TEST_CASE("default space enumerates 75 configurations") {
    auto configs = enumerate(DesignSpace::default_space());
    CHECK(configs.size() == 75);
    CHECK(configs.front().sets == 1);
    CHECK(configs.front().assoc == 1);
    CHECK(configs.back().sets == 16384);
    CHECK(configs.back().assoc == 16);
}

TEST_CASE("singleton space enumerates exactly one configuration") {
    DesignSpace space{{8}, {2}, 4};
    auto configs = enumerate(space);
    REQUIRE(configs.size() == 1);
    CHECK(configs[0] == CacheConfig{8, 2, 4, Replacement::Fifo});
}

TEST_CASE("nine set sizes by five associativities yields 45 configurations") {
    DesignSpace space;
    for (uint32_t s = 1; s <= 256; s *= 2)
        space.set_sizes.push_back(s);
    space.assocs = {1, 2, 4, 8, 16};
    space.block_bytes = 4;
    CHECK(space.set_sizes.size() * space.assocs.size() == 45);
    CHECK(enumerate(space).size() == 45);
}

TEST_CASE("enumeration order is (sets ascending, assoc ascending) with no duplicates") {
    DesignSpace space{{1, 4, 16}, {1, 2, 8}, 4};
    auto configs = enumerate(space);
    REQUIRE(configs.size() == 9);
    std::set<std::pair<uint32_t, uint32_t>> seen;
    for (size_t i = 0; i < configs.size(); ++i) {
        CHECK(seen.insert({configs[i].sets, configs[i].assoc}).second);
        if (i > 0) {
            bool ordered = configs[i - 1].sets < configs[i].sets ||
                           (configs[i - 1].sets == configs[i].sets &&
                            configs[i - 1].assoc < configs[i].assoc);
            CHECK(ordered);
        }
    }
}

TEST_CASE("capacity is sets * assoc * block") {
    CHECK(CacheConfig{8, 16, 4}.capacity_bytes() == 512);
    CHECK(CacheConfig{1, 1, 4}.capacity_bytes() == 4);
    CHECK(CacheConfig{8, 2, 4}.capacity_bytes() == 64);
}

TEST_CASE("capacity is strictly monotone in each parameter") {
    CacheConfig base{8, 2, 4};
    for (uint32_t s = 1; s <= 64; s *= 2)
        for (uint32_t a = 1; a <= 16; a *= 2)
            for (uint32_t b = 1; b <= 16; b *= 2) {
                CacheConfig c{s, a, b};
                CHECK(CacheConfig{s * 2, a, b}.capacity_bytes() > c.capacity_bytes());
                CHECK(CacheConfig{s, a + 1, b}.capacity_bytes() > c.capacity_bytes());
                CHECK(CacheConfig{s, a, b * 2}.capacity_bytes() > c.capacity_bytes());
            }
    (void)base;
}

TEST_CASE("hierarchy capacity is the exact sum over private copies plus shared") {
    HierarchyConfig h{CacheConfig{8, 2, 4}, CacheConfig{1, 2, 4}, 6};
    CHECK(h.capacity_bytes() == 392); // 6*64 + 8
    HierarchyConfig unit{CacheConfig{1, 1, 4}, CacheConfig{1, 1, 4}, 1};
    CHECK(unit.capacity_bytes() == 8);
    HierarchyConfig two{CacheConfig{1, 1, 4}, CacheConfig{1, 1, 4}, 2};
    CHECK(two.capacity_bytes() == 2 * 4 + 4);
}

TEST_CASE("space validation rejects malformed grids") {
    CHECK_THROWS_AS(DesignSpace({}, {1}, 4).validate(), Error);
    CHECK_THROWS_AS(DesignSpace({1, 2}, {}, 4).validate(), Error);
    CHECK_THROWS_AS(DesignSpace({3}, {1}, 4).validate(), Error);       // not a power of two
    CHECK_THROWS_AS(DesignSpace({4, 2}, {1}, 4).validate(), Error);    // not increasing
    CHECK_THROWS_AS(DesignSpace({1, 2}, {2, 2}, 4).validate(), Error); // duplicate assoc
    CHECK_THROWS_AS(DesignSpace({1, 2}, {1, 2}, 3).validate(), Error); // bad block
    CHECK_NOTHROW(DesignSpace({1, 2}, {1, 3}, 4).validate()); // assoc need not be pow2
}

TEST_CASE("hierarchy validation requires one block size across levels") {
    HierarchyConfig h{CacheConfig{8, 2, 4}, CacheConfig{1, 2, 8}, 2};
    CHECK_THROWS_AS(h.validate(), Error);
}
