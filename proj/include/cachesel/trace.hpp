#ifndef CACHESEL_TRACE_HPP
#define CACHESEL_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cachesel {

enum class Op : uint8_t { Read, Write };

// One timestamped data access. Cycles are abstract and non-decreasing in
// record order; several processors may access in the same cycle, but a
// single processor issues at most one access per cycle.
struct AccessRecord {
    uint64_t cycle = 0;
    uint32_t processor = 0;
    Op op = Op::Read;
    uint64_t address = 0;

    bool operator==(const AccessRecord& o) const {
        return cycle == o.cycle && processor == o.processor && op == o.op &&
               address == o.address;
    }
};

struct Trace {
    std::vector<AccessRecord> records;
    uint32_t processor_count = 1;

    void validate() const;

    bool operator==(const Trace& o) const {
        return processor_count == o.processor_count && records == o.records;
    }
};

// Text interchange format:
//   # comment
//   processors <P>
//   <cycle> <proc> <R|W> <0xHEXADDR>
// Fields are separated by single spaces; cycle and proc are decimal.
Trace parse_trace(std::istream& in);
Trace load_trace(const std::string& path);
void render_trace(const Trace& trace, std::ostream& out);
void save_trace(const Trace& trace, const std::string& path);

// Number of distinct cycle values in the trace. Parallel accesses by
// different processors in one cycle count once; this is the sequential
// access count seen by the private level.
uint64_t count_tap(const Trace& trace);

// floor(address / block_bytes); block_bytes must be a power of two.
uint64_t block_of(uint64_t address, uint32_t block_bytes);

// 64-bit FNV-1a over processor count and all records; used to tie cached
// simulation results to the trace they came from.
uint64_t trace_hash(const Trace& trace);

// Synthetic workload: per-processor private regions plus one shared region,
// each split into a small hot pool and a cold uniform remainder. Stands in
// for captured application traces when exercising the toolkit.
struct SyntheticTraceSpec {
    uint32_t processor_count = 1;
    uint64_t record_count = 0;
    uint64_t address_space_bytes = 65536;
    double shared_fraction = 0.2;   // probability an access targets the shared region
    double write_fraction = 0.3;    // probability an access is a write
    double locality_hot_fraction = 0.6; // probability an access stays in the hot pool
    uint64_t seed = 1;

    void validate() const;
};

// Deterministic for a fixed spec (including seed). Realized write and
// shared fractions are binomial around the requested values; for
// record_count >= 1000 they land within +/-0.05 of the spec with very
// high probability.
Trace generate_synthetic(const SyntheticTraceSpec& spec);

} // namespace cachesel

#endif
