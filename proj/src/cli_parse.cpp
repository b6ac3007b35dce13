#include "cachesel/cli_parse.hpp"

#include "cachesel/errors.hpp"

#include <charconv>

namespace cachesel {

namespace {

uint64_t to_u64(std::string_view text, const char* what) {
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw Error(Errc::UsageError,
                    std::string("bad ") + what + " '" + std::string(text) + "'");
    return value;
}

} // namespace

uint64_t parse_duration_ns(const std::string& text) {
    if (text.empty())
        throw Error(Errc::UsageError, "empty duration");

    std::string_view body = text;
    int unit_pow = 0; // powers of ten relative to nanoseconds
    auto ends_with = [&body](std::string_view suffix) {
        return body.size() > suffix.size() &&
               body.substr(body.size() - suffix.size()) == suffix;
    };
    if (ends_with("ns")) {
        body.remove_suffix(2);
    } else if (ends_with("us")) {
        unit_pow = 3;
        body.remove_suffix(2);
    } else if (ends_with("ms")) {
        unit_pow = 6;
        body.remove_suffix(2);
    } else if (ends_with("s")) {
        unit_pow = 9;
        body.remove_suffix(1);
    }

    std::string_view whole = body;
    std::string_view frac;
    size_t dot = body.find('.');
    if (dot != std::string_view::npos) {
        whole = body.substr(0, dot);
        frac = body.substr(dot + 1);
        if (frac.empty())
            throw Error(Errc::UsageError, "bad duration '" + text + "'");
    }
    if (whole.empty() && frac.empty())
        throw Error(Errc::UsageError, "bad duration '" + text + "'");
    if (static_cast<int>(frac.size()) > unit_pow)
        throw Error(Errc::UsageError,
                    "duration '" + text + "' is finer than one nanosecond");

    unsigned __int128 value = whole.empty() ? 0 : to_u64(whole, "duration");
    for (char c : frac) {
        if (c < '0' || c > '9')
            throw Error(Errc::UsageError, "bad duration '" + text + "'");
        value = value * 10 + (c - '0');
    }
    for (int i = 0; i < unit_pow - static_cast<int>(frac.size()); ++i)
        value *= 10;
    if (value > UINT64_MAX)
        throw Error(Errc::UsageError, "duration '" + text + "' overflows");
    return static_cast<uint64_t>(value);
}

std::vector<uint32_t> parse_size_list(const std::string& text) {
    std::vector<uint32_t> values;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string_view token =
            std::string_view(text).substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
        if (token.empty())
            throw Error(Errc::UsageError, "empty entry in size list '" + text + "'");
        size_t dots = token.find("..");
        if (dots != std::string_view::npos) {
            uint64_t lo = to_u64(token.substr(0, dots), "range start");
            uint64_t hi = to_u64(token.substr(dots + 2), "range end");
            if (lo == 0 || hi < lo)
                throw Error(Errc::UsageError, "bad range '" + std::string(token) + "'");
            for (uint64_t v = lo; v <= hi; v *= 2) {
                if (v > UINT32_MAX)
                    throw Error(Errc::UsageError, "size out of range in '" + text + "'");
                values.push_back(static_cast<uint32_t>(v));
            }
        } else {
            uint64_t v = to_u64(token, "size");
            if (v == 0 || v > UINT32_MAX)
                throw Error(Errc::UsageError, "size out of range in '" + text + "'");
            values.push_back(static_cast<uint32_t>(v));
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return values;
}

} // namespace cachesel
