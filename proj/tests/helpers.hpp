#ifndef CACHESEL_TESTS_HELPERS_HPP
#define CACHESEL_TESTS_HELPERS_HPP

#include "cachesel/trace.hpp"

#include <random>

namespace test_helpers {

// Test-side trace builder, independent of the library's synthetic
// generator: random small-block-space traces with same-cycle groups and
// shuffled intra-cycle processor order.
inline cachesel::Trace make_random_trace(uint64_t seed, size_t records, uint32_t procs,
                                         uint64_t distinct_blocks, double write_fraction,
                                         uint32_t block_bytes = 4) {
    std::mt19937_64 rng(seed);
    cachesel::Trace trace;
    trace.processor_count = procs;
    uint64_t cycle = 0;
    std::vector<uint32_t> issuers;
    while (trace.records.size() < records) {
        ++cycle;
        issuers.clear();
        for (uint32_t p = 0; p < procs; ++p)
            if (rng() % 100 < 60)
                issuers.push_back(p);
        std::shuffle(issuers.begin(), issuers.end(), rng);
        for (uint32_t p : issuers) {
            if (trace.records.size() >= records)
                break;
            cachesel::AccessRecord rec;
            rec.cycle = cycle;
            rec.processor = p;
            rec.op = (rng() % 1000) < uint64_t(write_fraction * 1000) ? cachesel::Op::Write
                                                                      : cachesel::Op::Read;
            rec.address = (rng() % distinct_blocks) * block_bytes + rng() % block_bytes;
            trace.records.push_back(rec);
        }
    }
    return trace;
}

} // namespace test_helpers

#endif
