#include "cachesel/oracle.hpp"
#include "cachesel/errors.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace cachesel;

namespace {
const TimingParams kDefault{1, 4, 15};
}

TEST_CASE("reference private simulator reproduces the hand-run examples") {
    // 0,1,2,0 in a single 2-way set: FIFO evicts 0 on the third access.
    Trace seq;
    seq.processor_count = 1;
    uint64_t cycle = 0;
    for (uint64_t b : {0, 1, 2, 0})
        seq.records.push_back({++cycle, 0, Op::Read, b * 4});
    auto misses = oracle::simulate_private_only(seq, CacheConfig{1, 2, 4}, 1);
    CHECK(misses[0] == 4);

    Trace coherence;
    coherence.processor_count = 2;
    coherence.records = {{1, 0, Op::Read, 0},
                         {2, 1, Op::Read, 0},
                         {3, 0, Op::Write, 0},
                         {4, 1, Op::Read, 0}};
    auto shared_miss = oracle::simulate_private_only(coherence, CacheConfig{1, 1, 4}, 2);
    CHECK(shared_miss[0] == 1);
    CHECK(shared_miss[1] == 2);

    Trace empty;
    empty.processor_count = 3;
    auto zeros = oracle::simulate_private_only(empty, CacheConfig{2, 2, 4}, 3);
    CHECK(zeros == std::vector<uint64_t>{0, 0, 0});

    // Repeated reads of one block cold-miss once per touching processor.
    Trace repeated;
    repeated.processor_count = 2;
    for (uint64_t c = 1; c <= 10; ++c) {
        repeated.records.push_back({c, 0, Op::Read, 0});
        repeated.records.push_back({c, 1, Op::Read, 0});
    }
    for (uint32_t a : {1u, 2u, 4u}) {
        auto counts = oracle::simulate_private_only(repeated, CacheConfig{1, a, 4}, 2);
        CHECK(counts == std::vector<uint64_t>{1, 1});
    }
}

TEST_CASE("hierarchy counts for the two-block ping-pong") {
    Trace t;
    t.processor_count = 1;
    t.records = {{1, 0, Op::Read, 0}, {2, 0, Op::Read, 4}, {3, 0, Op::Read, 0}};
    HierarchyConfig h{CacheConfig{1, 1, 4}, CacheConfig{1, 2, 4}, 1};
    AccessCounts counts = oracle::simulate_hierarchy(t, h);
    CHECK(counts.tap == 3);
    CHECK(counts.tas == 3); // one-block private misses every time
    CHECK(counts.tam == 2); // two-way shared holds both blocks
    CHECK(oracle::simulate_hierarchy(Trace{{}, 1},
                                     HierarchyConfig{CacheConfig{1, 1, 4},
                                                     CacheConfig{1, 1, 4}, 1}) ==
          AccessCounts{0, 0, 0});
}

TEST_CASE("layered hierarchy equals private-only plus shared-only") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        uint32_t procs = 1 + seed % 4;
        Trace t = test_helpers::make_random_trace(seed, 600, procs, 48, 0.35);
        HierarchyConfig h{CacheConfig{uint32_t(1) << (seed % 4), 1 + uint32_t(seed % 3), 4},
                          CacheConfig{uint32_t(1) << ((seed + 1) % 4),
                                      1 + uint32_t((seed + 1) % 3), 4},
                          procs};
        AccessCounts full = oracle::simulate_hierarchy(t, h);

        auto private_misses = oracle::simulate_private_only(t, h.private_cache, procs);
        uint64_t tas = 0;
        for (uint64_t m : private_misses)
            tas += m;
        SecondaryTrace sec = emit_secondary_trace(t, h.private_cache, procs);
        CHECK(full.tap == count_tap(t));
        CHECK(full.tas == tas);
        CHECK(full.tam == oracle::simulate_shared_only(sec, h.shared_cache));
        CHECK(full.tam <= full.tas);
        CHECK(full.tas <= t.records.size());
    }
}

TEST_CASE("back-invalidation can only add private misses") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        Trace t = test_helpers::make_random_trace(seed, 500, 2, 64, 0.3);
        HierarchyConfig h{CacheConfig{2, 2, 4}, CacheConfig{1, 2, 4}, 2};
        AccessCounts layered = oracle::simulate_hierarchy(t, h, {false});
        AccessCounts strict = oracle::simulate_hierarchy(t, h, {true});
        CHECK(strict.tap == layered.tap);
        CHECK(strict.tas >= layered.tas);
    }
}

TEST_CASE("oracle runs are deterministic and thread count does not matter") {
    Trace t = test_helpers::make_random_trace(3, 400, 2, 32, 0.3);
    DesignSpace space{{1, 2, 4}, {1, 2}, 4};
    auto a = oracle::sweep(t, space, space, 2, {}, 1);
    auto b = oracle::sweep(t, space, space, 2, {}, 2);
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t i = 0; i < a.entries.size(); ++i)
        CHECK(a.entries[i].counts == b.entries[i].counts);
}

TEST_CASE("exhaustive selection returns the smallest feasible hierarchy") {
    DesignSpace space{{1, 2, 4}, {1, 2}, 4};
    Trace t = test_helpers::make_random_trace(9, 400, 2, 40, 0.3);

    // Everything feasible: the unit hierarchy wins (P*4 + 4 bytes).
    auto huge = oracle::exhaustive_select(t, space, space, 2, kDefault,
                                          Deadline{uint64_t(1) << 60});
    REQUIRE(huge.has_value());
    CHECK(huge->capacity_bytes() == 2 * 4 + 4);

    // Below the private floor: nothing feasible.
    auto none = oracle::exhaustive_select(t, space, space, 2, kDefault,
                                          Deadline{count_tap(t) - 1});
    CHECK(!none.has_value());

    // Sanity at a binding deadline: the returned pair is feasible and no
    // feasible pair is smaller.
    auto matrix = oracle::sweep(t, space, space, 2);
    std::vector<uint64_t> times;
    for (const auto& e : matrix.entries)
        times.push_back(amt_ns(e.counts, kDefault));
    std::sort(times.begin(), times.end());
    Deadline mid{times[times.size() / 3]};
    auto picked = oracle::select_from_sweep(matrix, 2, kDefault, mid);
    REQUIRE(picked.has_value());
    for (const auto& e : matrix.entries) {
        if (!feasible(e.counts, kDefault, mid))
            continue;
        HierarchyConfig h{e.private_config, e.shared_config, 2};
        CHECK(picked->capacity_bytes() <= h.capacity_bytes());
        if (h == *picked)
            CHECK(feasible(e.counts, kDefault, mid));
    }
}
