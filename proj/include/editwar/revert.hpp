#pragma once

#include <cstdint>
#include <filesystem>
#include <regex>
#include <string>
#include <vector>

#include "editwar/revision.hpp"

namespace editwar {

enum class RevertChannel : std::uint8_t { text_only, comment_only, both };

const char* to_string(RevertChannel channel);

/// One revert: the editor of revision `j_ordinal` undid the work of the editor
/// of revision `i_ordinal`.
struct RevertEvent {
    EditorId reverter;
    EditorId reverted;
    std::size_t j_ordinal = 0;
    std::size_t i_ordinal = 0;
    RevertChannel channel = RevertChannel::text_only;
    std::int64_t timestamp_j = 0;

    bool text_channel() const noexcept { return channel != RevertChannel::comment_only; }

    friend bool operator==(const RevertEvent&, const RevertEvent&) = default;
};

struct RevertSummary {
    std::uint64_t n_both = 0;
    std::uint64_t n_text_only = 0;
    std::uint64_t n_comment_only = 0;

    std::uint64_t n_text() const noexcept { return n_both + n_text_only; }
    std::uint64_t n_comment() const noexcept { return n_both + n_comment_only; }

    friend bool operator==(const RevertSummary&, const RevertSummary&) = default;
};

/// Edit-summary patterns that mark a revision as a revert. Matching is
/// case-insensitive; any pattern matching anywhere in the comment counts.
class CommentPatternSet {
public:
    CommentPatternSet() = default;
    explicit CommentPatternSet(std::vector<std::string> patterns);

    /// One ECMAScript regex per line; blank lines and lines starting with '#'
    /// are ignored. Throws ConfigError on unreadable files or bad patterns.
    static CommentPatternSet load(const std::filesystem::path& file);

    bool matches(const std::string& comment) const;
    bool empty() const noexcept { return sources_.empty(); }
    const std::vector<std::string>& patterns() const noexcept { return sources_; }

private:
    std::vector<std::string> sources_;
    std::regex combined_;
};

/// Identity reverts: revision j restores the text of the nearest earlier
/// revision i-1 with the same fingerprint, with i <= j-1. The editor of
/// revision i is the one reverted. Self-reverts and adjacent duplicates emit
/// nothing.
std::vector<RevertEvent> detect_text_reverts(const PageHistory& history);

/// Revisions whose comment matches `patterns` revert revision j-1.
std::vector<RevertEvent> detect_comment_reverts(const PageHistory& history,
                                                const CommentPatternSet& patterns);

struct MergedReverts {
    std::vector<RevertEvent> events;
    RevertSummary summary;
};

/// Joins both channels on j_ordinal. When both detect a revert at the same
/// revision the text event's editors and i_ordinal are kept.
MergedReverts merge_channels(const std::vector<RevertEvent>& text_events,
                             const std::vector<RevertEvent>& comment_events);

/// Events that feed the controversy metrics (text and both channels).
std::vector<RevertEvent> text_channel_events(const std::vector<RevertEvent>& merged);

}  // namespace editwar
