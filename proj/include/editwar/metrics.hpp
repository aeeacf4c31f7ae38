#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "editwar/revert.hpp"
#include "editwar/revision.hpp"
#include "editwar/tags.hpp"

namespace editwar {

/// N per editor: total edits by that editor over the page's full history.
using EditorStats = std::map<EditorId, std::int64_t>;

EditorStats editor_stats(const PageHistory& history);

struct WeightedRevert {
    EditorId reverter;
    EditorId reverted;
    std::int64_t n_d = 0;  // N of the reverted editor
    std::int64_t n_r = 0;  // N of the reverter
    std::int64_t weight = 0;
};

/// Throws UnknownEditor if an event names an editor missing from `stats`.
std::vector<WeightedRevert> weight_reverts(const std::vector<RevertEvent>& events,
                                           const EditorStats& stats);

/// Unordered editor pair; `editor_a` has the smaller canonical name.
struct MutualPairStat {
    EditorId editor_a;
    EditorId editor_b;
    std::int64_t count_ab = 0;  // reverts a -> b
    std::int64_t count_ba = 0;  // reverts b -> a
    std::int64_t weight = 0;    // min(N_a, N_b)

    bool mutual() const noexcept { return count_ab > 0 && count_ba > 0; }
};

/// Pairs with at least one revert in each direction, ordered by canonical
/// names.
std::vector<MutualPairStat> mutual_pairs(const std::vector<RevertEvent>& events,
                                         const EditorStats& stats);

struct MeasureM {
    std::int64_t E = 0;
    std::int64_t M_r = 0;  // sum of mutual pair weights
    std::int64_t M_i = 0;  // E * M_r
    std::int64_t M = 0;    // E * (M_r - topmost pair weight)
    // Index into the input of the pair removed by censoring.
    std::optional<std::size_t> censored;

    friend bool operator==(const MeasureM& a, const MeasureM& b) {
        return a.E == b.E && a.M_r == b.M_r && a.M_i == b.M_i && a.M == b.M;
    }
};

/// Aggregates mutual pairs into E, M_r, M_i and M. The single heaviest pair
/// is censored; among equal weights the pair with the lexicographically
/// smallest (editor_a, editor_b) canonical names is the one removed.
MeasureM measure_M(const std::vector<MutualPairStat>& pairs);

struct ControversyReport {
    std::int64_t page_id = 0;
    std::string title;
    std::int64_t n_edits = 0;
    std::int64_t n_editors = 0;
    std::int64_t n_reverts = 0;
    std::int64_t n_mutual_reverts = 0;
    std::int64_t E = 0;
    std::int64_t M_r = 0;
    std::int64_t M_i = 0;
    std::int64_t M = 0;
    std::optional<std::int64_t> TC;  // empty when revision texts were not available
    bool controversial = false;

    friend bool operator==(const ControversyReport&, const ControversyReport&) = default;
};

inline constexpr std::int64_t default_threshold = 1000;

/// Everything computed for one page, for callers that need more than the
/// report row.
struct PageAnalysis {
    ControversyReport report;
    RevertSummary summary;
    std::vector<RevertEvent> events;  // merged, both channels
    EditorStats stats;
    std::vector<WeightedRevert> weighted;  // text-channel events only
    std::vector<MutualPairStat> pairs;
    MeasureM measure;
};

PageAnalysis analyze_page(const PageHistory& history, const CommentPatternSet& patterns,
                          const TagConfig* tags, std::int64_t threshold = default_threshold);

/// Report row for a page. TC is left empty when `tags` is null or the page
/// lacks revision texts.
ControversyReport full_report(const PageHistory& history, const CommentPatternSet& patterns,
                              const TagConfig* tags, std::int64_t threshold = default_threshold);

}  // namespace editwar
