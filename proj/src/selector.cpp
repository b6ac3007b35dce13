#include "cachesel/selector.hpp"

#include "cachesel/errors.hpp"

#include <json.hpp>

#include <fstream>

namespace cachesel {

namespace {

constexpr const char* kSessionSchema = "cachesel-session-v1";

LevelTally tally_private(const PrivateSimResult& result) {
    LevelTally t;
    for (const PrivateConfigResult& c : result.configs)
        c.excluded ? ++t.excluded : ++t.simulated;
    return t;
}

LevelTally tally_shared(const SharedSimResult& result) {
    LevelTally t;
    for (const SharedConfigResult& c : result.configs)
        c.excluded ? ++t.excluded : ++t.simulated;
    return t;
}

} // namespace

bool same_outcome(const SelectionReport& a, const SelectionReport& b) {
    return a.chosen == b.chosen && a.counts == b.counts && a.amt_ns == b.amt_ns &&
           a.budget.tap_observed == b.budget.tap_observed &&
           a.budget.tas_limit == b.budget.tas_limit &&
           a.budget.tam_limit == b.budget.tam_limit;
}

SelectionReport select_hierarchy(const Trace& trace, const DesignSpace& private_space,
                                 const DesignSpace& shared_space, uint32_t processor_count,
                                 const TimingParams& params, Deadline deadline,
                                 const BudgetPredictor& predictor) {
    auto start = std::chrono::steady_clock::now();
    params.validate();
    if (private_space.block_bytes != shared_space.block_bytes)
        throw Error(Errc::InvalidSpec, "block size must match across hierarchy levels");

    SelectionReport report;
    report.params = params;
    report.deadline = deadline;
    report.processor_count = processor_count;
    report.private_space = private_space;
    report.shared_space = shared_space;
    report.trace_hash = trace_hash(trace);

    report.budget = predictor ? predictor(trace, params, deadline)
                              : predict_budgets(trace, params, deadline);

    auto private_result = std::make_shared<PrivateSimResult>(simulate_private(
        trace, private_space, processor_count, report.budget.tas_limit));
    report.private_result = private_result;
    report.private_tally = tally_private(*private_result);

    report.private_choice =
        select_private(*private_result, report.budget, params, deadline);

    SecondaryTrace secondary =
        emit_secondary_trace(trace, report.private_choice.config, processor_count);
    report.secondary_hash = secondary.hash();
    report.secondary_length = secondary.accesses.size();

    auto shared_result = std::make_shared<SharedSimResult>(
        simulate_shared(secondary, shared_space, report.private_choice.memory_budget));
    report.shared_result = shared_result;
    report.shared_tally = tally_shared(*shared_result);

    CacheConfig shared_choice =
        select_shared(*shared_result, report.private_choice.memory_budget);

    report.chosen =
        HierarchyConfig{report.private_choice.config, shared_choice, processor_count};
    report.counts.tap = private_result->tap_observed;
    report.counts.tas = private_result->find(report.private_choice.config)->total_misses;
    report.counts.tam = shared_result->find(shared_choice)->misses;
    report.amt_ns = amt_ns(report.counts, params);
    report.duration = std::chrono::steady_clock::now() - start;
    return report;
}

SelectionReport reselect(const SelectionReport& report, const Trace& trace,
                         Deadline new_deadline) {
    auto start = std::chrono::steady_clock::now();
    if (new_deadline.wcdmot_ns > report.deadline.wcdmot_ns)
        throw Error(Errc::RequiresFullRun,
                    "deadline loosened beyond the cached run; cached exclusions no "
                    "longer cover the space");
    if (trace_hash(trace) != report.trace_hash)
        throw Error(Errc::StaleCache, "trace does not match the cached session");
    if (!report.private_result || !report.shared_result)
        throw Error(Errc::StaleCache, "cached session lacks simulation results");

    SelectionReport out;
    out.params = report.params;
    out.deadline = new_deadline;
    out.processor_count = report.processor_count;
    out.private_space = report.private_space;
    out.shared_space = report.shared_space;
    out.trace_hash = report.trace_hash;

    out.budget =
        predict_budgets(report.budget.tap_observed, report.params, new_deadline);

    out.private_result = report.private_result;
    out.private_tally = report.private_tally;
    out.private_sim_reused = true;
    out.private_choice =
        select_private(*out.private_result, out.budget, out.params, new_deadline);

    CacheConfig shared_choice;
    if (out.private_choice.config == report.private_choice.config) {
        // Budgets only tightened: a shared configuration excluded under the
        // old limit cannot qualify under the new one, so the cached counts
        // decide the selection exactly.
        out.shared_result = report.shared_result;
        out.shared_tally = report.shared_tally;
        out.shared_sim_reused = true;
        out.secondary_hash = report.secondary_hash;
        out.secondary_length = report.secondary_length;
        shared_choice = select_shared(*out.shared_result, out.private_choice.memory_budget);
    } else {
        SecondaryTrace secondary = emit_secondary_trace(trace, out.private_choice.config,
                                                        out.processor_count);
        out.secondary_hash = secondary.hash();
        out.secondary_length = secondary.accesses.size();
        auto shared_result = std::make_shared<SharedSimResult>(simulate_shared(
            secondary, out.shared_space, out.private_choice.memory_budget));
        out.shared_result = shared_result;
        out.shared_tally = tally_shared(*shared_result);
        shared_choice = select_shared(*shared_result, out.private_choice.memory_budget);
    }

    out.chosen =
        HierarchyConfig{out.private_choice.config, shared_choice, out.processor_count};
    out.counts.tap = out.private_result->tap_observed;
    out.counts.tas = out.private_result->find(out.private_choice.config)->total_misses;
    out.counts.tam = out.shared_result->find(shared_choice)->misses;
    out.amt_ns = amt_ns(out.counts, out.params);
    out.duration = std::chrono::steady_clock::now() - start;
    return out;
}

namespace {

using nlohmann::json;

json space_to_json(const DesignSpace& space) {
    return json{{"set_sizes", space.set_sizes},
                {"assocs", space.assocs},
                {"block_bytes", space.block_bytes}};
}

DesignSpace space_from_json(const json& j) {
    DesignSpace space;
    space.set_sizes = j.at("set_sizes").get<std::vector<uint32_t>>();
    space.assocs = j.at("assocs").get<std::vector<uint32_t>>();
    space.block_bytes = j.at("block_bytes").get<uint32_t>();
    return space;
}

json config_to_json(const CacheConfig& c) {
    return json{{"sets", c.sets}, {"assoc", c.assoc}, {"block_bytes", c.block_bytes}};
}

CacheConfig config_from_json(const json& j) {
    return CacheConfig{j.at("sets").get<uint32_t>(), j.at("assoc").get<uint32_t>(),
                       j.at("block_bytes").get<uint32_t>(), Replacement::Fifo};
}

} // namespace

void save_session(const SelectionReport& report, const std::string& path) {
    json j;
    j["schema"] = kSessionSchema;
    j["trace_hash"] = report.trace_hash;
    j["processor_count"] = report.processor_count;
    j["params"] = {{"tp_ns", report.params.tp_ns},
                   {"ts_ns", report.params.ts_ns},
                   {"tm_ns", report.params.tm_ns}};
    j["wcdmot_ns"] = report.deadline.wcdmot_ns;
    j["private_space"] = space_to_json(report.private_space);
    j["shared_space"] = space_to_json(report.shared_space);
    j["tap"] = report.budget.tap_observed;
    j["tas_limit"] = report.budget.tas_limit;
    j["tam_limit"] = report.budget.tam_limit;

    json pconfigs = json::array();
    for (const PrivateConfigResult& c : report.private_result->configs)
        pconfigs.push_back(json{{"sets", c.config.sets},
                                {"assoc", c.config.assoc},
                                {"per_proc", c.per_processor_misses},
                                {"total", c.total_misses},
                                {"excluded", c.excluded}});
    j["private_configs"] = std::move(pconfigs);
    if (report.private_result->miss_limit)
        j["private_miss_limit"] = *report.private_result->miss_limit;

    j["private_choice"] = {{"sets", report.private_choice.config.sets},
                           {"assoc", report.private_choice.config.assoc},
                           {"memory_budget", report.private_choice.memory_budget}};
    j["secondary_hash"] = report.secondary_hash;
    j["secondary_length"] = report.secondary_length;

    json sconfigs = json::array();
    for (const SharedConfigResult& c : report.shared_result->configs)
        sconfigs.push_back(json{{"sets", c.config.sets},
                                {"assoc", c.config.assoc},
                                {"misses", c.misses},
                                {"excluded", c.excluded}});
    j["shared_configs"] = std::move(sconfigs);
    if (report.shared_result->miss_limit)
        j["shared_miss_limit"] = *report.shared_result->miss_limit;

    j["chosen"] = {{"private", config_to_json(report.chosen.private_cache)},
                   {"shared", config_to_json(report.chosen.shared_cache)}};
    j["counts"] = {{"tap", report.counts.tap},
                   {"tas", report.counts.tas},
                   {"tam", report.counts.tam}};
    j["amt_ns"] = report.amt_ns;

    std::ofstream out(path);
    if (!out)
        throw Error(Errc::IoError, "cannot write session file '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out)
        throw Error(Errc::IoError, "failed writing session file '" + path + "'");
}

SelectionReport load_session(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::IoError, "cannot open session file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(Errc::StaleCache, "unreadable session file: " + std::string(e.what()));
    }

    try {
        if (j.at("schema").get<std::string>() != kSessionSchema)
            throw Error(Errc::StaleCache,
                        "unsupported session schema '" +
                            j.at("schema").get<std::string>() + "'");

        SelectionReport report;
        report.trace_hash = j.at("trace_hash").get<uint64_t>();
        report.processor_count = j.at("processor_count").get<uint32_t>();
        report.params.tp_ns = j.at("params").at("tp_ns").get<uint64_t>();
        report.params.ts_ns = j.at("params").at("ts_ns").get<uint64_t>();
        report.params.tm_ns = j.at("params").at("tm_ns").get<uint64_t>();
        report.deadline.wcdmot_ns = j.at("wcdmot_ns").get<uint64_t>();
        report.private_space = space_from_json(j.at("private_space"));
        report.shared_space = space_from_json(j.at("shared_space"));
        report.budget.tap_observed = j.at("tap").get<uint64_t>();
        report.budget.tas_limit = j.at("tas_limit").get<uint64_t>();
        report.budget.tam_limit = j.at("tam_limit").get<uint64_t>();

        auto private_result = std::make_shared<PrivateSimResult>();
        private_result->tap_observed = report.budget.tap_observed;
        private_result->trace_hash = report.trace_hash;
        private_result->processor_count = report.processor_count;
        private_result->space = report.private_space;
        if (j.contains("private_miss_limit"))
            private_result->miss_limit = j.at("private_miss_limit").get<uint64_t>();
        for (const json& c : j.at("private_configs")) {
            PrivateConfigResult r;
            r.config = CacheConfig{c.at("sets").get<uint32_t>(),
                                   c.at("assoc").get<uint32_t>(),
                                   report.private_space.block_bytes, Replacement::Fifo};
            r.per_processor_misses = c.at("per_proc").get<std::vector<uint64_t>>();
            r.total_misses = c.at("total").get<uint64_t>();
            r.excluded = c.at("excluded").get<bool>();
            private_result->configs.push_back(std::move(r));
        }
        report.private_result = private_result;
        report.private_tally = tally_private(*private_result);

        report.private_choice.config =
            CacheConfig{j.at("private_choice").at("sets").get<uint32_t>(),
                        j.at("private_choice").at("assoc").get<uint32_t>(),
                        report.private_space.block_bytes, Replacement::Fifo};
        report.private_choice.memory_budget =
            j.at("private_choice").at("memory_budget").get<uint64_t>();
        report.secondary_hash = j.at("secondary_hash").get<uint64_t>();
        report.secondary_length = j.at("secondary_length").get<uint64_t>();

        auto shared_result = std::make_shared<SharedSimResult>();
        shared_result->source_config = report.private_choice.config;
        shared_result->secondary_hash = report.secondary_hash;
        shared_result->trace_hash = report.trace_hash;
        shared_result->space = report.shared_space;
        if (j.contains("shared_miss_limit"))
            shared_result->miss_limit = j.at("shared_miss_limit").get<uint64_t>();
        for (const json& c : j.at("shared_configs")) {
            SharedConfigResult r;
            r.config = CacheConfig{c.at("sets").get<uint32_t>(),
                                   c.at("assoc").get<uint32_t>(),
                                   report.shared_space.block_bytes, Replacement::Fifo};
            r.misses = c.at("misses").get<uint64_t>();
            r.excluded = c.at("excluded").get<bool>();
            shared_result->configs.push_back(r);
        }
        report.shared_result = shared_result;
        report.shared_tally = tally_shared(*shared_result);

        report.chosen =
            HierarchyConfig{config_from_json(j.at("chosen").at("private")),
                            config_from_json(j.at("chosen").at("shared")),
                            report.processor_count};
        report.counts.tap = j.at("counts").at("tap").get<uint64_t>();
        report.counts.tas = j.at("counts").at("tas").get<uint64_t>();
        report.counts.tam = j.at("counts").at("tam").get<uint64_t>();
        report.amt_ns = j.at("amt_ns").get<uint64_t>();
        return report;
    } catch (const json::exception& e) {
        throw Error(Errc::StaleCache,
                    "session file missing fields: " + std::string(e.what()));
    }
}

} // namespace cachesel
