#include "cachesel/reporting.hpp"

#include <json.hpp>

#include <ostream>

namespace cachesel {

namespace {

const char* stage_marker(bool reused) { return reused ? "cached" : "simulated"; }

void write_table(const SelectionReport& r, std::ostream& out) {
    auto line = [&out](const char* label, const CacheConfig& c) {
        out << label << " (" << c.sets << "x" << c.assoc << "), block " << c.block_bytes
            << " B, capacity " << c.capacity_bytes() << " B\n";
    };
    out << "selected hierarchy (" << r.processor_count << " processors)\n";
    line("  private, per processor:", r.chosen.private_cache);
    line("  shared:                ", r.chosen.shared_cache);
    out << "  total capacity:         " << r.chosen.capacity_bytes() << " B\n";
    out << "counts: tap " << r.counts.tap << ", tas " << r.counts.tas << ", tam "
        << r.counts.tam << "\n";
    out << "time: amt " << r.amt_ns << " ns, deadline " << r.deadline.wcdmot_ns
        << " ns\n";
    out << "stages: private " << stage_marker(r.private_sim_reused) << " ("
        << r.private_tally.simulated << " simulated, " << r.private_tally.excluded
        << " excluded), shared " << stage_marker(r.shared_sim_reused) << " ("
        << r.shared_tally.simulated << " simulated, " << r.shared_tally.excluded
        << " excluded)\n";
    out << "wall clock: "
        << std::chrono::duration_cast<std::chrono::microseconds>(r.duration).count()
        << " us\n";
}

void write_csv(const SelectionReport& r, std::ostream& out) {
    out << "private_sets,private_assoc,shared_sets,shared_assoc,block,processors,"
           "tap,tas,tam,amt_ns,wcdmot_ns,capacity_bytes\n";
    out << r.chosen.private_cache.sets << ',' << r.chosen.private_cache.assoc << ','
        << r.chosen.shared_cache.sets << ',' << r.chosen.shared_cache.assoc << ','
        << r.chosen.private_cache.block_bytes << ',' << r.processor_count << ','
        << r.counts.tap << ',' << r.counts.tas << ',' << r.counts.tam << ',' << r.amt_ns
        << ',' << r.deadline.wcdmot_ns << ',' << r.chosen.capacity_bytes() << '\n';
}

void write_json(const SelectionReport& r, std::ostream& out) {
    nlohmann::json j;
    j["schema"] = "cachesel-report-v1";
    j["processor_count"] = r.processor_count;
    j["private"] = {{"sets", r.chosen.private_cache.sets},
                    {"assoc", r.chosen.private_cache.assoc},
                    {"block_bytes", r.chosen.private_cache.block_bytes},
                    {"capacity_bytes", r.chosen.private_cache.capacity_bytes()}};
    j["shared"] = {{"sets", r.chosen.shared_cache.sets},
                   {"assoc", r.chosen.shared_cache.assoc},
                   {"block_bytes", r.chosen.shared_cache.block_bytes},
                   {"capacity_bytes", r.chosen.shared_cache.capacity_bytes()}};
    j["hierarchy_capacity_bytes"] = r.chosen.capacity_bytes();
    j["counts"] = {{"tap", r.counts.tap}, {"tas", r.counts.tas}, {"tam", r.counts.tam}};
    j["amt_ns"] = r.amt_ns;
    j["wcdmot_ns"] = r.deadline.wcdmot_ns;
    j["budget"] = {{"tap_observed", r.budget.tap_observed},
                   {"tas_limit", r.budget.tas_limit},
                   {"tam_limit", r.budget.tam_limit}};
    j["stages"] = {{"private", stage_marker(r.private_sim_reused)},
                   {"shared", stage_marker(r.shared_sim_reused)}};
    j["tallies"] = {{"private",
                     {{"simulated", r.private_tally.simulated},
                      {"excluded", r.private_tally.excluded}}},
                    {"shared",
                     {{"simulated", r.shared_tally.simulated},
                      {"excluded", r.shared_tally.excluded}}}};
    out << j.dump(2) << '\n';
}

} // namespace

void write_report(const SelectionReport& report, ReportFormat format, std::ostream& out) {
    switch (format) {
    case ReportFormat::Table: write_table(report, out); break;
    case ReportFormat::Csv: write_csv(report, out); break;
    case ReportFormat::Json: write_json(report, out); break;
    }
}

void write_private_csv(const PrivateSimResult& result, std::ostream& out) {
    out << "sets,assoc,proc,misses,excluded\n";
    for (const PrivateConfigResult& cfg : result.configs)
        for (uint32_t p = 0; p < result.processor_count; ++p)
            out << cfg.config.sets << ',' << cfg.config.assoc << ',' << p << ','
                << cfg.per_processor_misses[p] << ',' << (cfg.excluded ? 1 : 0) << '\n';
}

void write_shared_csv(const SharedSimResult& result, std::ostream& out) {
    out << "sets,assoc,misses,excluded\n";
    for (const SharedConfigResult& cfg : result.configs)
        out << cfg.config.sets << ',' << cfg.config.assoc << ',' << cfg.misses << ','
            << (cfg.excluded ? 1 : 0) << '\n';
}

void write_sweep_csv(const oracle::SweepMatrix& matrix, const TimingParams& params,
                     Deadline deadline, std::ostream& out) {
    out << "p_sets,p_assoc,s_sets,s_assoc,tap,tas,tam,amt_ns,feasible\n";
    for (const oracle::SweepEntry& e : matrix.entries) {
        uint64_t time = amt_ns(e.counts, params);
        out << e.private_config.sets << ',' << e.private_config.assoc << ','
            << e.shared_config.sets << ',' << e.shared_config.assoc << ','
            << e.counts.tap << ',' << e.counts.tas << ',' << e.counts.tam << ',' << time
            << ',' << (time <= deadline.wcdmot_ns ? 1 : 0) << '\n';
    }
}

void write_budget(const PerfBudget& budget, std::ostream& out) {
    out << "budget: tap " << budget.tap_observed << ", tas limit " << budget.tas_limit
        << ", tam limit " << budget.tam_limit << '\n';
}

} // namespace cachesel
