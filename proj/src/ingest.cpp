#include "editwar/ingest.hpp"

#include <charconv>
#include <cstdio>

#include "editwar/error.hpp"
#include "stream_readers.hpp"

namespace editwar {

std::optional<InputFormat> input_format_from_string(std::string_view s) {
    if (s == "mediawiki-xml") return InputFormat::mediawiki_xml;
    if (s == "revlog-jsonl") return InputFormat::revlog_jsonl;
    return std::nullopt;
}

NamespaceFilter NamespaceFilter::all() {
    NamespaceFilter f;
    f.all_ = true;
    return f;
}

void BufferStats::add(std::size_t n) {
    current += n;
    revisions += n;
    if (current > peak) peak = current;
}

void BufferStats::release(std::size_t n) {
    if (n > largest_page) largest_page = n;
    current -= n;
    ++pages;
}

EditorId parse_editor(const std::optional<std::string>& username,
                      const std::optional<std::string>& ip, bool deleted) {
    if (username && ip) {
        throw MalformedInput("contributor has both username '" + *username + "' and ip '" + *ip +
                                 "'",
                             0);
    }
    if (deleted) return EditorId::unknown();
    if (username) return EditorId::registered(*username);
    if (ip) return EditorId::anonymous(*ip);
    return EditorId::unknown();
}

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool read_digits(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    const char* first = s.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    return ec == std::errc{} && ptr == first + len;
}

}  // namespace

std::optional<std::int64_t> parse_iso8601(std::string_view s) {
    int year, month, day, hour, minute, second;
    if (s.size() < 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
        s[13] != ':' || s[16] != ':')
        return std::nullopt;
    if (!read_digits(s, 0, 4, year) || !read_digits(s, 5, 2, month) ||
        !read_digits(s, 8, 2, day) || !read_digits(s, 11, 2, hour) ||
        !read_digits(s, 14, 2, minute) || !read_digits(s, 17, 2, second))
        return std::nullopt;
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60)
        return std::nullopt;

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    }
    std::int64_t offset = 0;
    if (pos == s.size()) {
        // no zone designator: UTC
    } else if (s[pos] == 'Z' && pos + 1 == s.size()) {
        // UTC
    } else if ((s[pos] == '+' || s[pos] == '-') && pos + 6 == s.size() && s[pos + 3] == ':') {
        int oh, om;
        if (!read_digits(s, pos + 1, 2, oh) || !read_digits(s, pos + 4, 2, om)) return std::nullopt;
        offset = (oh * 3600 + om * 60) * (s[pos] == '-' ? -1 : 1);
    } else {
        return std::nullopt;
    }
    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                              static_cast<unsigned>(day));
    return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

std::string format_iso8601(std::int64_t t) {
    std::int64_t days = t / 86400;
    std::int64_t secs = t % 86400;
    if (secs < 0) {
        secs += 86400;
        --days;
    }
    // civil_from_days
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const auto doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    y += m <= 2;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d, static_cast<long long>(secs / 3600),
                  static_cast<long long>(secs / 60 % 60), static_cast<long long>(secs % 60));
    return buf;
}

std::unique_ptr<PageStream> stream_pages(std::istream& source, InputFormat format,
                                         IngestOptions options) {
    switch (format) {
        case InputFormat::mediawiki_xml: return detail::make_xml_stream(source, std::move(options));
        case InputFormat::revlog_jsonl: return detail::make_jsonl_stream(source, std::move(options));
    }
    throw ConfigError("unsupported input format");
}

}  // namespace editwar
