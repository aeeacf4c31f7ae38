#include "editwar/metrics.hpp"

#include <set>
#include <utility>

#include "editwar/error.hpp"

namespace editwar {

EditorStats editor_stats(const PageHistory& history) {
    EditorStats stats;
    for (const auto& rev : history.revisions) ++stats[rev.editor];
    return stats;
}

namespace {

std::int64_t edits_of(const EditorStats& stats, const EditorId& editor) {
    auto it = stats.find(editor);
    if (it == stats.end()) {
        throw UnknownEditor("revert event names editor " + editor.canonical() +
                            " with no edits on the page");
    }
    return it->second;
}

}  // namespace

std::vector<WeightedRevert> weight_reverts(const std::vector<RevertEvent>& events,
                                           const EditorStats& stats) {
    std::vector<WeightedRevert> out;
    out.reserve(events.size());
    for (const auto& e : events) {
        const std::int64_t n_d = edits_of(stats, e.reverted);
        const std::int64_t n_r = edits_of(stats, e.reverter);
        out.push_back({e.reverter, e.reverted, n_d, n_r, std::min(n_d, n_r)});
    }
    return out;
}

std::vector<MutualPairStat> mutual_pairs(const std::vector<RevertEvent>& events,
                                         const EditorStats& stats) {
    // keyed by (canonical a, canonical b) so iteration order is the tie-break order
    std::map<std::pair<std::string, std::string>, MutualPairStat> by_pair;
    for (const auto& e : events) {
        std::string r = e.reverter.canonical();
        std::string d = e.reverted.canonical();
        const bool forward = r < d;
        auto key = forward ? std::pair{r, d} : std::pair{d, r};
        auto [it, inserted] = by_pair.try_emplace(std::move(key));
        MutualPairStat& p = it->second;
        if (inserted) {
            p.editor_a = forward ? e.reverter : e.reverted;
            p.editor_b = forward ? e.reverted : e.reverter;
            p.weight = std::min(edits_of(stats, p.editor_a), edits_of(stats, p.editor_b));
        }
        ++(forward ? p.count_ab : p.count_ba);
    }

    std::vector<MutualPairStat> out;
    for (auto& [key, p] : by_pair) {
        if (!p.mutual()) continue;
        out.push_back(std::move(p));
    }
    return out;
}

MeasureM measure_M(const std::vector<MutualPairStat>& pairs) {
    MeasureM m;
    if (pairs.empty()) return m;

    std::set<EditorId> editors;
    std::size_t top = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& p = pairs[k];
        editors.insert(p.editor_a);
        editors.insert(p.editor_b);
        m.M_r += p.weight;
        if (k == 0) continue;
        const auto& best = pairs[top];
        if (p.weight > best.weight) {
            top = k;
        } else if (p.weight == best.weight) {
            auto key = [](const MutualPairStat& s) {
                return std::pair{s.editor_a.canonical(), s.editor_b.canonical()};
            };
            if (key(p) < key(best)) top = k;
        }
    }
    m.E = static_cast<std::int64_t>(editors.size());
    m.M_i = m.E * m.M_r;
    m.M = m.E * (m.M_r - pairs[top].weight);
    m.censored = top;
    return m;
}

PageAnalysis analyze_page(const PageHistory& history, const CommentPatternSet& patterns,
                          const TagConfig* tags, std::int64_t threshold) {
    PageAnalysis a;
    auto text_events = detect_text_reverts(history);
    auto comment_events = patterns.empty() ? std::vector<RevertEvent>{}
                                           : detect_comment_reverts(history, patterns);
    auto merged = merge_channels(text_events, comment_events);
    a.events = std::move(merged.events);
    a.summary = merged.summary;

    const auto metric_events = text_channel_events(a.events);
    a.stats = editor_stats(history);
    a.weighted = weight_reverts(metric_events, a.stats);
    a.pairs = mutual_pairs(metric_events, a.stats);
    a.measure = measure_M(a.pairs);

    std::set<std::pair<std::string, std::string>> mutual_keys;
    for (const auto& p : a.pairs) mutual_keys.emplace(p.editor_a.canonical(), p.editor_b.canonical());
    std::int64_t n_mutual = 0;
    for (const auto& e : metric_events) {
        auto r = e.reverter.canonical();
        auto d = e.reverted.canonical();
        if (mutual_keys.contains(r < d ? std::pair{r, d} : std::pair{d, r})) ++n_mutual;
    }

    ControversyReport& rep = a.report;
    rep.page_id = history.page_id;
    rep.title = history.title;
    rep.n_edits = static_cast<std::int64_t>(history.revisions.size());
    rep.n_editors = static_cast<std::int64_t>(a.stats.size());
    rep.n_reverts = static_cast<std::int64_t>(metric_events.size());
    rep.n_mutual_reverts = n_mutual;
    rep.E = a.measure.E;
    rep.M_r = a.measure.M_r;
    rep.M_i = a.measure.M_i;
    rep.M = a.measure.M;
    if (tags) {
        try {
            rep.TC = count_tags(history, *tags);
        } catch (const TextsUnavailable&) {
            rep.TC.reset();
        }
    }
    rep.controversial = rep.M > threshold;
    return a;
}

ControversyReport full_report(const PageHistory& history, const CommentPatternSet& patterns,
                              const TagConfig* tags, std::int64_t threshold) {
    return analyze_page(history, patterns, tags, threshold).report;
}

}  // namespace editwar
