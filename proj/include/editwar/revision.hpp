#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace editwar {

enum class EditorKind : std::uint8_t { registered, anonymous, unknown };

const char* to_string(EditorKind kind);
std::optional<EditorKind> editor_kind_from_string(std::string_view s);

/// Identity of the author of a revision.
///
/// Registered and anonymous editors compare by name. Unknown (suppressed or
/// missing) contributors carry a process-unique serial so that no two of them
/// ever compare equal, while a single revision's editor still equals itself.
struct EditorId {
    EditorKind kind = EditorKind::unknown;
    std::string name;
    std::uint64_t serial = 0;

    static EditorId registered(std::string name);
    static EditorId anonymous(std::string ip);
    static EditorId unknown();

    /// Stable text form used for tie-breaking and diagnostics, e.g.
    /// "registered:Jamadagni" or "unknown:#17".
    std::string canonical() const;

    friend auto operator<=>(const EditorId&, const EditorId&) = default;
    friend bool operator==(const EditorId&, const EditorId&) = default;
};

struct EditorIdHash {
    std::size_t operator()(const EditorId& e) const noexcept;
};

/// Opaque content digest. Empty means the revision cannot take part in
/// identity-revert matching.
using Fingerprint = std::string;

struct RevisionRecord {
    std::int64_t page_id = 0;
    std::int64_t rev_id = 0;
    std::size_t ordinal = 0;
    std::int64_t timestamp = 0;  // UTC seconds
    EditorId editor;
    std::string comment;
    Fingerprint content_fingerprint;
    std::uint64_t text_bytes = 0;
    // Kept only when the reader retains texts (needed for tag counting).
    std::optional<std::string> text;

    bool matchable() const noexcept { return !content_fingerprint.empty(); }
};

struct PageHistory {
    std::int64_t page_id = 0;
    std::string title;
    int namespace_id = 0;
    std::vector<RevisionRecord> revisions;
};

/// Sorts revisions by (timestamp, rev_id) and renumbers ordinals from zero.
void order_revisions(PageHistory& page);

}  // namespace editwar
