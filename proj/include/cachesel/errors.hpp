#ifndef CACHESEL_ERRORS_HPP
#define CACHESEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cachesel {

// Machine-parseable reason codes. The CLI prints failures as a single
// line "error: <code>: <detail>" and maps codes to exit statuses.
enum class Errc {
    MalformedLine,
    NonMonotonicCycle,
    DuplicateProcessorCycle,
    ProcessorOutOfRange,
    InvalidBlockSize,
    InvalidSpec,
    InfeasibleDeadline,
    EmptySpace,
    ProcessorMismatch,
    NoFeasiblePrivate,
    NoFeasibleShared,
    RequiresFullRun,
    StaleCache,
    IoError,
    UsageError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
          code_(code) {}

    Errc code() const { return code_; }

    // Selection-stage infeasibility is reported distinctly (CLI exit 2)
    // from malformed input or stale state (exit 1).
    bool is_infeasibility() const {
        return code_ == Errc::InfeasibleDeadline || code_ == Errc::NoFeasiblePrivate ||
               code_ == Errc::NoFeasibleShared;
    }

private:
    Errc code_;
};

inline const char* errc_name(Errc code) {
    switch (code) {
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::NonMonotonicCycle: return "NonMonotonicCycle";
    case Errc::DuplicateProcessorCycle: return "DuplicateProcessorCycle";
    case Errc::ProcessorOutOfRange: return "ProcessorOutOfRange";
    case Errc::InvalidBlockSize: return "InvalidBlockSize";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::InfeasibleDeadline: return "InfeasibleDeadline";
    case Errc::EmptySpace: return "EmptySpace";
    case Errc::ProcessorMismatch: return "ProcessorMismatch";
    case Errc::NoFeasiblePrivate: return "NoFeasiblePrivate";
    case Errc::NoFeasibleShared: return "NoFeasibleShared";
    case Errc::RequiresFullRun: return "RequiresFullRun";
    case Errc::StaleCache: return "StaleCache";
    case Errc::IoError: return "IoError";
    case Errc::UsageError: return "UsageError";
    }
    return "UnknownError";
}

} // namespace cachesel

#endif
