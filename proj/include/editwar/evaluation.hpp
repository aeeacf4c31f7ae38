#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "editwar/metrics.hpp"

namespace editwar {

enum class Label : std::uint8_t { noncontroversial, controversial };

/// Manual labels keyed by page title.
using GroundTruth = std::map<std::string, Label>;

/// Reads "title<TAB>label" lines, label in {c, n}. An optional "title\tlabel"
/// header is skipped. Throws ConfigError on bad or duplicate lines.
GroundTruth load_ground_truth(std::istream& in);
GroundTruth load_ground_truth(const std::filesystem::path& file);

enum class Indicator : std::uint8_t { n_edits, n_reverts, n_mutual_reverts, M_r, M_i, TC, M };

inline constexpr std::array all_indicators = {
    Indicator::n_edits, Indicator::n_reverts, Indicator::n_mutual_reverts, Indicator::M_r,
    Indicator::M_i,     Indicator::TC,        Indicator::M,
};

const char* to_string(Indicator indicator);
std::optional<Indicator> indicator_from_string(std::string_view s);

/// Report field behind an indicator. A missing TC ranks below every present
/// one (-1).
std::int64_t indicator_value(const ControversyReport& report, Indicator indicator);

/// Reports ordered by indicator descending, ties by title ascending.
std::vector<const ControversyReport*> rank(const std::vector<ControversyReport>& reports,
                                           Indicator indicator);

struct PrecisionAtK {
    std::int64_t hits = 0;
    std::int64_t k = 0;
    double precision() const { return k == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(k); }
};

/// Throws InsufficientReports when fewer than k reports are given and
/// UnlabeledTitles when any of the top k has no label.
PrecisionAtK precision_at_k(const std::vector<ControversyReport>& reports, const GroundTruth& truth,
                            Indicator indicator, std::size_t k);

struct SweepRow {
    std::int64_t threshold = 0;
    std::int64_t n = 0;  // sampled noncontroversial
    std::int64_t c = 0;  // sampled controversial
    std::int64_t T = 0;  // reports with M > threshold
    std::int64_t sampled = 0;
    double pct_c = 0.0;  // c / sampled, as a fraction
    std::int64_t C_estimate = 0;
    bool short_sample = false;  // fewer than sample_size reports above threshold
};

/// For each threshold, samples `sample_size` reports with M above it using a
/// PRNG seeded with `seed` (fresh per row) and extrapolates the controversial
/// share to the whole set: C = round(T * c / sampled). Rows whose set is
/// smaller than the sample take all of it and are flagged short_sample.
/// Thresholds must be strictly ascending (ConfigError otherwise); sampled
/// titles missing from `truth` raise UnlabeledTitles.
std::vector<SweepRow> threshold_sweep(const std::vector<ControversyReport>& reports,
                                      const GroundTruth& truth,
                                      const std::vector<std::int64_t>& thresholds,
                                      std::size_t sample_size, std::uint64_t seed);

/// Draws `count` distinct indices from [0, population) with a partial
/// Fisher-Yates shuffle over mt19937_64. Output is identical on every
/// platform for a given seed.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count,
                                        std::uint64_t seed);

struct ScatterRow {
    std::string title;
    std::optional<std::int64_t> TC;
    std::int64_t M = 0;
};

/// (title, TC, M) per report, M descending then title ascending.
std::vector<ScatterRow> scatter_export(const std::vector<ControversyReport>& reports);

}  // namespace editwar
