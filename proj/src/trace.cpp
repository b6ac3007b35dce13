#include "cachesel/trace.hpp"

#include "cachesel/design_space.hpp"
#include "cachesel/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace cachesel {

void Trace::validate() const {
    if (processor_count < 1)
        throw Error(Errc::InvalidSpec, "trace must declare at least one processor");
    uint64_t last_cycle = 0;
    // Tracks the last cycle seen per processor; monotone cycles make this
    // enough to detect (cycle, processor) duplicates.
    std::vector<uint64_t> last_proc_cycle(processor_count, UINT64_MAX);
    bool first = true;
    for (const AccessRecord& rec : records) {
        if (rec.processor >= processor_count)
            throw Error(Errc::ProcessorOutOfRange,
                        "processor " + std::to_string(rec.processor) + " >= " +
                            std::to_string(processor_count));
        if (!first && rec.cycle < last_cycle)
            throw Error(Errc::NonMonotonicCycle,
                        "cycle " + std::to_string(rec.cycle) + " after " +
                            std::to_string(last_cycle));
        if (last_proc_cycle[rec.processor] == rec.cycle)
            throw Error(Errc::DuplicateProcessorCycle,
                        "processor " + std::to_string(rec.processor) +
                            " issues twice in cycle " + std::to_string(rec.cycle));
        last_proc_cycle[rec.processor] = rec.cycle;
        last_cycle = rec.cycle;
        first = false;
    }
}

namespace {

[[noreturn]] void malformed(size_t line_no, const std::string& why) {
    throw Error(Errc::MalformedLine, "line " + std::to_string(line_no) + ": " + why);
}

// Splits on single spaces; empty fields (doubled separators) are malformed.
std::vector<std::string_view> split_fields(std::string_view line, size_t line_no) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(' ', start);
        std::string_view field = line.substr(start, pos - start);
        if (field.empty())
            malformed(line_no, "empty field (check for doubled spaces)");
        fields.push_back(field);
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
        if (start == line.size())
            malformed(line_no, "trailing space");
    }
    return fields;
}

uint64_t parse_u64(std::string_view text, int base, size_t line_no, const char* what) {
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (ec != std::errc() || ptr != text.data() + text.size())
        malformed(line_no, std::string("bad ") + what + " '" + std::string(text) + "'");
    return value;
}

} // namespace

Trace parse_trace(std::istream& in) {
    Trace trace;
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    uint64_t last_cycle = 0;
    std::vector<uint64_t> last_proc_cycle;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;

        auto fields = split_fields(line, line_no);
        if (!header_seen) {
            if (fields.size() != 2 || fields[0] != "processors")
                malformed(line_no, "expected 'processors <P>' header");
            uint64_t p = parse_u64(fields[1], 10, line_no, "processor count");
            if (p < 1 || p > UINT32_MAX)
                malformed(line_no, "processor count out of range");
            trace.processor_count = static_cast<uint32_t>(p);
            last_proc_cycle.assign(trace.processor_count, UINT64_MAX);
            header_seen = true;
            continue;
        }

        if (fields.size() != 4)
            malformed(line_no, "expected '<cycle> <proc> <R|W> <0xADDR>'");
        AccessRecord rec;
        rec.cycle = parse_u64(fields[0], 10, line_no, "cycle");
        uint64_t proc = parse_u64(fields[1], 10, line_no, "processor");
        if (fields[2] == "R")
            rec.op = Op::Read;
        else if (fields[2] == "W")
            rec.op = Op::Write;
        else
            malformed(line_no, "op must be R or W");
        std::string_view addr = fields[3];
        if (addr.size() < 3 || addr[0] != '0' || (addr[1] != 'x' && addr[1] != 'X'))
            malformed(line_no, "address must be 0x-prefixed hex");
        rec.address = parse_u64(addr.substr(2), 16, line_no, "address");

        if (proc >= trace.processor_count)
            throw Error(Errc::ProcessorOutOfRange,
                        "line " + std::to_string(line_no) + ": processor " +
                            std::to_string(proc) + " >= " +
                            std::to_string(trace.processor_count));
        rec.processor = static_cast<uint32_t>(proc);
        if (!trace.records.empty() && rec.cycle < last_cycle)
            throw Error(Errc::NonMonotonicCycle,
                        "line " + std::to_string(line_no) + ": cycle " +
                            std::to_string(rec.cycle) + " after " +
                            std::to_string(last_cycle));
        if (last_proc_cycle[rec.processor] == rec.cycle)
            throw Error(Errc::DuplicateProcessorCycle,
                        "line " + std::to_string(line_no) + ": processor " +
                            std::to_string(rec.processor) + " issues twice in cycle " +
                            std::to_string(rec.cycle));
        last_proc_cycle[rec.processor] = rec.cycle;
        last_cycle = rec.cycle;
        trace.records.push_back(rec);
    }
    if (!header_seen)
        throw Error(Errc::MalformedLine, "missing 'processors <P>' header");
    return trace;
}

Trace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::IoError, "cannot open trace file '" + path + "'");
    return parse_trace(in);
}

void render_trace(const Trace& trace, std::ostream& out) {
    out << "processors " << trace.processor_count << '\n';
    char buf[32];
    for (const AccessRecord& rec : trace.records) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), rec.address, 16);
        (void)ec;
        std::string_view hex(buf, end - buf);
        out << rec.cycle << ' ' << rec.processor << ' '
            << (rec.op == Op::Write ? 'W' : 'R') << " 0x";
        for (char c : hex)
            out << static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        out << '\n';
    }
}

void save_trace(const Trace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::IoError, "cannot write trace file '" + path + "'");
    render_trace(trace, out);
    if (!out)
        throw Error(Errc::IoError, "failed writing trace file '" + path + "'");
}

uint64_t count_tap(const Trace& trace) {
    uint64_t distinct = 0;
    uint64_t last = 0;
    bool first = true;
    for (const AccessRecord& rec : trace.records) {
        if (first || rec.cycle != last)
            ++distinct;
        last = rec.cycle;
        first = false;
    }
    return distinct;
}

uint64_t block_of(uint64_t address, uint32_t block_bytes) {
    if (!is_pow2(block_bytes))
        throw Error(Errc::InvalidBlockSize,
                    "block size " + std::to_string(block_bytes) + " is not a power of two");
    unsigned shift = 0;
    while ((uint32_t(1) << shift) != block_bytes)
        ++shift;
    return address >> shift;
}

uint64_t trace_hash(const Trace& trace) {
    uint64_t h = 1469598103934665603ull; // FNV offset basis
    auto mix = [&h](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (i * 8)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(trace.processor_count);
    for (const AccessRecord& rec : trace.records) {
        mix(rec.cycle);
        mix(rec.processor);
        mix(rec.op == Op::Write ? 1 : 0);
        mix(rec.address);
    }
    return h;
}

void SyntheticTraceSpec::validate() const {
    if (processor_count < 1)
        throw Error(Errc::InvalidSpec, "processor_count must be >= 1");
    auto check_fraction = [](double f, const char* name) {
        if (!(f >= 0.0 && f <= 1.0))
            throw Error(Errc::InvalidSpec, std::string(name) + " must be in [0,1]");
    };
    check_fraction(shared_fraction, "shared_fraction");
    check_fraction(write_fraction, "write_fraction");
    check_fraction(locality_hot_fraction, "locality_hot_fraction");
    // Need room for one shared region plus P private regions of at least
    // one 4-byte word each.
    if (address_space_bytes / 4 < 4 ||
        (address_space_bytes - address_space_bytes / 4) / processor_count < 4)
        throw Error(Errc::InvalidSpec, "address space too small for the region layout");
}

namespace {

// Bernoulli via threshold on a raw 64-bit draw; avoids distribution
// objects so output is identical across standard libraries.
class SynthRng {
public:
    explicit SynthRng(uint64_t seed) : gen_(seed) {}

    bool chance(double p) {
        if (p >= 1.0)
            return true;
        if (p <= 0.0)
            return false;
        return gen_() < static_cast<uint64_t>(p * 18446744073709551616.0);
    }

    uint64_t below(uint64_t n) { // uniform in [0, n)
        return static_cast<uint64_t>((static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace

Trace generate_synthetic(const SyntheticTraceSpec& spec) {
    spec.validate();
    Trace trace;
    trace.processor_count = spec.processor_count;
    trace.records.reserve(spec.record_count);

    const uint64_t shared_bytes = spec.address_space_bytes / 4;
    const uint64_t private_bytes =
        (spec.address_space_bytes - shared_bytes) / spec.processor_count;
    const double issue_probability = 0.6;

    SynthRng rng(spec.seed);

    auto pick_address = [&](uint64_t base, uint64_t region_bytes) {
        uint64_t words = region_bytes / 4;
        uint64_t hot_words = std::max<uint64_t>(1, words / 8);
        uint64_t word = rng.chance(spec.locality_hot_fraction)
                            ? rng.below(hot_words)
                            : rng.below(words);
        return base + word * 4;
    };

    std::vector<uint32_t> issuers;
    uint64_t cycle = 0;
    while (trace.records.size() < spec.record_count) {
        ++cycle;
        issuers.clear();
        for (uint32_t p = 0; p < spec.processor_count; ++p)
            if (rng.chance(issue_probability))
                issuers.push_back(p);
        // Emit in shuffled order so same-cycle record order is unrelated to
        // processor ids; downstream sequentialization must not rely on it.
        for (size_t i = issuers.size(); i > 1; --i)
            std::swap(issuers[i - 1], issuers[rng.below(i)]);
        for (uint32_t p : issuers) {
            if (trace.records.size() >= spec.record_count)
                break;
            AccessRecord rec;
            rec.cycle = cycle;
            rec.processor = p;
            rec.op = rng.chance(spec.write_fraction) ? Op::Write : Op::Read;
            if (rng.chance(spec.shared_fraction))
                rec.address = pick_address(0, shared_bytes);
            else
                rec.address = pick_address(shared_bytes + uint64_t(p) * private_bytes,
                                           private_bytes);
            trace.records.push_back(rec);
        }
    }
    return trace;
}

} // namespace cachesel
