#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "editwar/revision.hpp"

namespace editwar {

enum class InputFormat { mediawiki_xml, revlog_jsonl };

std::optional<InputFormat> input_format_from_string(std::string_view s);

/// Which namespaces to keep. Defaults to articles only.
class NamespaceFilter {
public:
    NamespaceFilter() : namespaces_{0} {}
    explicit NamespaceFilter(std::set<int> namespaces) : namespaces_(std::move(namespaces)) {}
    static NamespaceFilter all();

    bool accepts(int ns) const { return all_ || namespaces_.contains(ns); }

private:
    std::set<int> namespaces_;
    bool all_ = false;
};

struct IngestOptions {
    NamespaceFilter filter;
    // Keep full revision texts on each record (required for tag counting).
    bool retain_text = true;
    // Throw FingerprintUnavailable instead of flagging the revision
    // non-matchable when it has neither text nor a dump hash.
    bool strict_fingerprints = false;
};

/// Counts revisions currently buffered by a reader. `peak` is the high-water
/// mark across the whole stream.
struct BufferStats {
    std::size_t current = 0;
    std::size_t peak = 0;
    std::size_t largest_page = 0;
    std::uint64_t pages = 0;
    std::uint64_t revisions = 0;
    std::uint64_t bytes = 0;

    void add(std::size_t n = 1);
    void release(std::size_t n);
};

/// Pull-style reader yielding one fully ordered PageHistory at a time. At most
/// one page's revisions are held in memory.
class PageStream {
public:
    virtual ~PageStream() = default;

    /// Next page, or nullopt at end of stream. Throws MalformedInput.
    virtual std::optional<PageHistory> next() = 0;

    const BufferStats& stats() const { return stats_; }

protected:
    BufferStats stats_;
};

std::unique_ptr<PageStream> stream_pages(std::istream& source, InputFormat format,
                                         IngestOptions options = {});

/// Parses "2003-11-07T00:43:23Z" style timestamps (a trailing Z or a numeric
/// offset is accepted) into UTC seconds.
std::optional<std::int64_t> parse_iso8601(std::string_view s);
std::string format_iso8601(std::int64_t utc_seconds);

/// Maps the contributor fields of a revision to an editor identity. Throws
/// MalformedInput when both a username and an IP are present.
EditorId parse_editor(const std::optional<std::string>& username,
                      const std::optional<std::string>& ip, bool deleted);

}  // namespace editwar
