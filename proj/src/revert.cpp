#include "editwar/revert.hpp"

#include <fstream>
#include <unordered_map>

#include "editwar/error.hpp"

namespace editwar {

const char* to_string(RevertChannel channel) {
    switch (channel) {
        case RevertChannel::text_only: return "text_only";
        case RevertChannel::comment_only: return "comment_only";
        case RevertChannel::both: return "both";
    }
    return "text_only";
}

CommentPatternSet::CommentPatternSet(std::vector<std::string> patterns)
    : sources_(std::move(patterns)) {
    constexpr auto flags = std::regex::ECMAScript | std::regex::icase;
    std::string combined;
    for (const auto& p : sources_) {
        try {
            std::regex check(p, flags);
        } catch (const std::regex_error& e) {
            throw ConfigError("bad comment pattern '" + p + "': " + e.what());
        }
        if (!combined.empty()) combined += '|';
        combined += "(?:" + p + ")";
    }
    if (!sources_.empty()) combined_ = std::regex(combined, flags | std::regex::optimize);
}

CommentPatternSet CommentPatternSet::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read comment patterns from " + file.string());
    std::vector<std::string> patterns;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        patterns.push_back(line);
    }
    if (patterns.empty()) throw ConfigError("no comment patterns in " + file.string());
    return CommentPatternSet(std::move(patterns));
}

bool CommentPatternSet::matches(const std::string& comment) const {
    if (comment.empty() || sources_.empty()) return false;
    return std::regex_search(comment, combined_);
}

std::vector<RevertEvent> detect_text_reverts(const PageHistory& history) {
    std::vector<RevertEvent> events;
    // fingerprint -> ordinal of its latest occurrence so far
    std::unordered_map<std::string_view, std::size_t> last_seen;
    const auto& revs = history.revisions;
    for (std::size_t j = 0; j < revs.size(); ++j) {
        const RevisionRecord& rev = revs[j];
        if (!rev.matchable()) continue;
        auto [it, inserted] = last_seen.try_emplace(rev.content_fingerprint, j);
        if (inserted) continue;
        const std::size_t restored = it->second;
        it->second = j;
        if (restored + 1 == j) continue;  // identical re-save
        const std::size_t i = restored + 1;
        if (revs[i].editor == rev.editor) continue;
        events.push_back({rev.editor, revs[i].editor, j, i, RevertChannel::text_only, rev.timestamp});
    }
    return events;
}

std::vector<RevertEvent> detect_comment_reverts(const PageHistory& history,
                                                const CommentPatternSet& patterns) {
    std::vector<RevertEvent> events;
    const auto& revs = history.revisions;
    for (std::size_t j = 1; j < revs.size(); ++j) {
        if (!patterns.matches(revs[j].comment)) continue;
        if (revs[j].editor == revs[j - 1].editor) continue;
        events.push_back({revs[j].editor, revs[j - 1].editor, j, j - 1,
                          RevertChannel::comment_only, revs[j].timestamp});
    }
    return events;
}

MergedReverts merge_channels(const std::vector<RevertEvent>& text_events,
                             const std::vector<RevertEvent>& comment_events) {
    MergedReverts out;
    out.events.reserve(text_events.size() + comment_events.size());
    auto t = text_events.begin();
    auto c = comment_events.begin();
    while (t != text_events.end() || c != comment_events.end()) {
        if (c == comment_events.end() || (t != text_events.end() && t->j_ordinal < c->j_ordinal)) {
            out.events.push_back(*t++);
            out.events.back().channel = RevertChannel::text_only;
            ++out.summary.n_text_only;
        } else if (t == text_events.end() || c->j_ordinal < t->j_ordinal) {
            out.events.push_back(*c++);
            out.events.back().channel = RevertChannel::comment_only;
            ++out.summary.n_comment_only;
        } else {
            out.events.push_back(*t++);
            ++c;
            out.events.back().channel = RevertChannel::both;
            ++out.summary.n_both;
        }
    }
    return out;
}

std::vector<RevertEvent> text_channel_events(const std::vector<RevertEvent>& merged) {
    std::vector<RevertEvent> out;
    out.reserve(merged.size());
    for (const auto& e : merged) {
        if (e.text_channel()) out.push_back(e);
    }
    return out;
}

}  // namespace editwar
