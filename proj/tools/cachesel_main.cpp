#include "cachesel/cli_parse.hpp"
#include "cachesel/errors.hpp"
#include "cachesel/oracle.hpp"
#include "cachesel/reporting.hpp"
#include "cachesel/selector.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace cachesel;

struct SpaceArgs {
    std::string sets = "1..16384";
    std::string assocs = "1,2,4,8,16";
    uint32_t block = 4;
    std::string private_sets, private_assocs; // per-level overrides
    std::string shared_sets, shared_assocs;

    void add_to(CLI::App& cmd, bool two_level) {
        cmd.add_option("--sets", sets, "set sizes, e.g. 1..16384 or 1,2,4")
            ->capture_default_str();
        cmd.add_option("--assocs", assocs, "associativities, e.g. 1,2,4,8,16")
            ->capture_default_str();
        cmd.add_option("--block", block, "block size in bytes")->capture_default_str();
        if (two_level) {
            cmd.add_option("--private-sets", private_sets, "override sets for the private level");
            cmd.add_option("--private-assocs", private_assocs,
                           "override associativities for the private level");
            cmd.add_option("--shared-sets", shared_sets, "override sets for the shared level");
            cmd.add_option("--shared-assocs", shared_assocs,
                           "override associativities for the shared level");
        }
    }

    DesignSpace private_space() const {
        DesignSpace s;
        s.set_sizes = parse_size_list(private_sets.empty() ? sets : private_sets);
        s.assocs = parse_size_list(private_assocs.empty() ? assocs : private_assocs);
        s.block_bytes = block;
        s.validate();
        return s;
    }

    DesignSpace shared_space() const {
        DesignSpace s;
        s.set_sizes = parse_size_list(shared_sets.empty() ? sets : shared_sets);
        s.assocs = parse_size_list(shared_assocs.empty() ? assocs : shared_assocs);
        s.block_bytes = block;
        s.validate();
        return s;
    }
};

struct TimingArgs {
    TimingParams params;
    std::string wcdmot;

    void add_to(CLI::App& cmd, bool deadline_required) {
        cmd.add_option("--tp", params.tp_ns, "private access time, ns")
            ->capture_default_str();
        cmd.add_option("--ts", params.ts_ns, "shared access time, ns")
            ->capture_default_str();
        cmd.add_option("--tm", params.tm_ns, "memory access time, ns")
            ->capture_default_str();
        auto* opt = cmd.add_option("--wcdmot", wcdmot,
                                   "deadline for all data memory operations "
                                   "(suffix s|ms|us|ns, default ns)");
        if (deadline_required)
            opt->required();
    }

    Deadline deadline() const { return Deadline{parse_duration_ns(wcdmot)}; }
};

Trace load_with_override(const std::string& path, uint32_t processors_override) {
    Trace trace = load_trace(path);
    if (processors_override != 0) {
        trace.processor_count = processors_override;
        trace.validate();
    }
    return trace;
}

// Writes to the path when given, stdout otherwise.
template <typename Fn> void with_output(const std::string& path, Fn&& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::IoError, "cannot write '" + path + "'");
    fn(out);
    if (!out)
        throw Error(Errc::IoError, "failed writing '" + path + "'");
}

ReportFormat parse_format(const std::string& name) {
    if (name == "table")
        return ReportFormat::Table;
    if (name == "csv")
        return ReportFormat::Csv;
    if (name == "json")
        return ReportFormat::Json;
    throw Error(Errc::UsageError, "unknown format '" + name + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"trace-driven selection of two-level data cache hierarchies"};
    app.require_subcommand(1);
    const char* env_config = std::getenv("CACHESEL_CONFIG");
    app.set_config("--config", env_config ? env_config : "",
                   "configuration file (sets = ..., assocs = ..., block = ...)");

    // select
    auto* sel = app.add_subcommand("select", "pick the smallest hierarchy meeting the deadline");
    struct {
        std::string trace, output, session, format = "table";
        uint32_t processors = 0;
        SpaceArgs space;
        TimingArgs timing;
        bool verbose = false;
    } sel_args;
    sel->add_option("--trace", sel_args.trace, "trace file")->required();
    sel->add_option("--processors", sel_args.processors, "override the trace's processor count");
    sel_args.space.add_to(*sel, true);
    sel_args.timing.add_to(*sel, true);
    sel->add_option("--format", sel_args.format, "table|csv|json")->capture_default_str();
    sel->add_option("-o,--output", sel_args.output, "report file (default stdout)");
    sel->add_option("--cache-file", sel_args.session, "save intermediate results for reselect");
    sel->add_flag("--verbose", sel_args.verbose, "print the predicted budgets to stderr");
    sel->callback([&]() {
        Trace trace = load_with_override(sel_args.trace, sel_args.processors);
        SelectionReport report = select_hierarchy(
            trace, sel_args.space.private_space(), sel_args.space.shared_space(),
            trace.processor_count, sel_args.timing.params, sel_args.timing.deadline());
        if (sel_args.verbose)
            write_budget(report.budget, std::cerr);
        if (!sel_args.session.empty())
            save_session(report, sel_args.session);
        with_output(sel_args.output, [&](std::ostream& out) {
            write_report(report, parse_format(sel_args.format), out);
        });
    });

    // reselect
    auto* resel = app.add_subcommand("reselect",
                                     "re-run selection from cached results for a tighter deadline");
    struct {
        std::string trace, output, session, format = "table", wcdmot;
        bool verbose = false;
    } resel_args;
    resel->add_option("--trace", resel_args.trace, "trace file")->required();
    resel->add_option("--cache-file", resel_args.session, "session saved by select")->required();
    resel->add_option("--wcdmot", resel_args.wcdmot, "tightened deadline")->required();
    resel->add_option("--format", resel_args.format, "table|csv|json")->capture_default_str();
    resel->add_option("-o,--output", resel_args.output, "report file (default stdout)");
    resel->add_flag("--verbose", resel_args.verbose, "print the predicted budgets to stderr");
    resel->callback([&]() {
        Trace trace = load_trace(resel_args.trace);
        SelectionReport cached = load_session(resel_args.session);
        SelectionReport report =
            reselect(cached, trace, Deadline{parse_duration_ns(resel_args.wcdmot)});
        if (resel_args.verbose)
            write_budget(report.budget, std::cerr);
        with_output(resel_args.output, [&](std::ostream& out) {
            write_report(report, parse_format(resel_args.format), out);
        });
    });

    // oracle
    auto* orc = app.add_subcommand("oracle",
                                   "brute-force per-pair simulation of the whole space");
    struct {
        std::string trace, output;
        uint32_t processors = 0;
        SpaceArgs space;
        TimingArgs timing;
        bool back_invalidate = false;
        unsigned threads = 0;
    } orc_args;
    orc->add_option("--trace", orc_args.trace, "trace file")->required();
    orc->add_option("--processors", orc_args.processors, "override the trace's processor count");
    orc_args.space.add_to(*orc, true);
    orc_args.timing.add_to(*orc, true);
    orc->add_flag("--back-invalidate", orc_args.back_invalidate,
                  "enforce strict inclusion on shared evictions");
    orc->add_option("--threads", orc_args.threads, "worker threads (0 = all cores)");
    orc->add_option("-o,--output", orc_args.output, "CSV file (default stdout)");
    orc->callback([&]() {
        Trace trace = load_with_override(orc_args.trace, orc_args.processors);
        oracle::OracleOptions options;
        options.back_invalidate = orc_args.back_invalidate;
        oracle::SweepMatrix matrix =
            oracle::sweep(trace, orc_args.space.private_space(), orc_args.space.shared_space(),
                          trace.processor_count, options, orc_args.threads);
        with_output(orc_args.output, [&](std::ostream& out) {
            write_sweep_csv(matrix, orc_args.timing.params, orc_args.timing.deadline(), out);
        });
    });

    // simulate-private
    auto* simp = app.add_subcommand("simulate-private",
                                    "single-pass private-level miss counts per configuration");
    struct {
        std::string trace, output;
        uint32_t processors = 0;
        SpaceArgs space;
        uint64_t tas_limit = 0;
        bool limited = false;
    } simp_args;
    simp->add_option("--trace", simp_args.trace, "trace file")->required();
    simp->add_option("--processors", simp_args.processors, "override the trace's processor count");
    simp_args.space.add_to(*simp, false);
    simp->add_option("--tas-limit", simp_args.tas_limit,
                     "exclude set-size tiers once their best option misses more than this")
        ->each([&](const std::string&) { simp_args.limited = true; });
    simp->add_option("-o,--output", simp_args.output, "CSV file (default stdout)");
    simp->callback([&]() {
        Trace trace = load_with_override(simp_args.trace, simp_args.processors);
        DesignSpace space = simp_args.space.private_space();
        PrivateSimResult result = simulate_private(
            trace, space, trace.processor_count,
            simp_args.limited ? std::optional<uint64_t>(simp_args.tas_limit) : std::nullopt);
        with_output(simp_args.output,
                    [&](std::ostream& out) { write_private_csv(result, out); });
    });

    // simulate-shared
    auto* sims = app.add_subcommand(
        "simulate-shared",
        "single-pass shared-level miss counts over the secondary trace of one private config");
    struct {
        std::string trace, output;
        uint32_t processors = 0;
        SpaceArgs space;
        uint32_t private_sets = 1, private_assoc = 1;
        uint64_t tam_limit = 0;
        bool limited = false;
    } sims_args;
    sims->add_option("--trace", sims_args.trace, "trace file")->required();
    sims->add_option("--processors", sims_args.processors, "override the trace's processor count");
    sims_args.space.add_to(*sims, false);
    sims->add_option("--private-sets", sims_args.private_sets,
                     "private config producing the secondary trace")
        ->required();
    sims->add_option("--private-assoc", sims_args.private_assoc,
                     "private config producing the secondary trace")
        ->required();
    sims->add_option("--tam-limit", sims_args.tam_limit,
                     "exclude set-size tiers once their best option misses more than this")
        ->each([&](const std::string&) { sims_args.limited = true; });
    sims->add_option("-o,--output", sims_args.output, "CSV file (default stdout)");
    sims->callback([&]() {
        Trace trace = load_with_override(sims_args.trace, sims_args.processors);
        DesignSpace space = sims_args.space.shared_space();
        CacheConfig private_config{sims_args.private_sets, sims_args.private_assoc,
                                   space.block_bytes, Replacement::Fifo};
        SecondaryTrace secondary =
            emit_secondary_trace(trace, private_config, trace.processor_count);
        SharedSimResult result = simulate_shared(
            secondary, space,
            sims_args.limited ? std::optional<uint64_t>(sims_args.tam_limit) : std::nullopt);
        with_output(sims_args.output,
                    [&](std::ostream& out) { write_shared_csv(result, out); });
    });

    // gen-trace
    auto* gen = app.add_subcommand("gen-trace", "generate a synthetic multiprocessor trace");
    struct {
        SyntheticTraceSpec spec;
        std::string output;
    } gen_args;
    gen->add_option("--processors", gen_args.spec.processor_count, "processor count")
        ->capture_default_str();
    gen->add_option("--records", gen_args.spec.record_count, "number of accesses")
        ->required();
    gen->add_option("--address-space", gen_args.spec.address_space_bytes,
                    "address space in bytes")
        ->capture_default_str();
    gen->add_option("--shared-fraction", gen_args.spec.shared_fraction,
                    "fraction of accesses to the shared region")
        ->capture_default_str();
    gen->add_option("--write-fraction", gen_args.spec.write_fraction, "fraction of writes")
        ->capture_default_str();
    gen->add_option("--hot-fraction", gen_args.spec.locality_hot_fraction,
                    "fraction of accesses to the hot pool")
        ->capture_default_str();
    gen->add_option("--seed", gen_args.spec.seed, "random seed")->capture_default_str();
    gen->add_option("-o,--output", gen_args.output, "trace file (default stdout)");
    gen->callback([&]() {
        Trace trace = generate_synthetic(gen_args.spec);
        with_output(gen_args.output, [&](std::ostream& out) { render_trace(trace, out); });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help and friends
        std::cerr << "error: UsageError: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cachesel::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_infeasibility() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: InternalError: " << e.what() << '\n';
        return 1;
    }
}
