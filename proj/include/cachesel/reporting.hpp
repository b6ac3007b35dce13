#ifndef CACHESEL_REPORTING_HPP
#define CACHESEL_REPORTING_HPP

#include "cachesel/oracle.hpp"
#include "cachesel/selector.hpp"

#include <iosfwd>

namespace cachesel {

enum class ReportFormat { Table, Csv, Json };

// CSV and JSON are machine surfaces: byte-identical for identical inputs
// (no wall-clock fields). The table includes timing for humans.
void write_report(const SelectionReport& report, ReportFormat format, std::ostream& out);

// CSV schema: sets,assoc,proc,misses,excluded
void write_private_csv(const PrivateSimResult& result, std::ostream& out);

// CSV schema: sets,assoc,misses,excluded
void write_shared_csv(const SharedSimResult& result, std::ostream& out);

// CSV schema: p_sets,p_assoc,s_sets,s_assoc,tap,tas,tam,amt_ns,feasible
void write_sweep_csv(const oracle::SweepMatrix& matrix, const TimingParams& params,
                     Deadline deadline, std::ostream& out);

void write_budget(const PerfBudget& budget, std::ostream& out);

} // namespace cachesel

#endif
