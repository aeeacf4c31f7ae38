#include "editwar/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>

#include "editwar/error.hpp"

namespace editwar {

GroundTruth load_ground_truth(std::istream& in) {
    GroundTruth truth;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.rfind('\t');
        if (tab == std::string::npos)
            throw ConfigError("truth line " + std::to_string(line_no) + ": expected title<TAB>label");
        std::string title = line.substr(0, tab);
        const std::string label = line.substr(tab + 1);
        if (line_no == 1 && title == "title" && label == "label") continue;
        Label value;
        if (label == "c") {
            value = Label::controversial;
        } else if (label == "n") {
            value = Label::noncontroversial;
        } else {
            throw ConfigError("truth line " + std::to_string(line_no) + ": label must be c or n, got '" +
                              label + "'");
        }
        if (!truth.emplace(std::move(title), value).second)
            throw ConfigError("truth line " + std::to_string(line_no) + ": duplicate title");
    }
    return truth;
}

GroundTruth load_ground_truth(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read ground truth from " + file.string());
    return load_ground_truth(in);
}

const char* to_string(Indicator indicator) {
    switch (indicator) {
        case Indicator::n_edits: return "n_edits";
        case Indicator::n_reverts: return "n_reverts";
        case Indicator::n_mutual_reverts: return "n_mutual_reverts";
        case Indicator::M_r: return "M_r";
        case Indicator::M_i: return "M_i";
        case Indicator::TC: return "TC";
        case Indicator::M: return "M";
    }
    return "M";
}

std::optional<Indicator> indicator_from_string(std::string_view s) {
    for (auto ind : all_indicators) {
        if (s == to_string(ind)) return ind;
    }
    return std::nullopt;
}

std::int64_t indicator_value(const ControversyReport& r, Indicator indicator) {
    switch (indicator) {
        case Indicator::n_edits: return r.n_edits;
        case Indicator::n_reverts: return r.n_reverts;
        case Indicator::n_mutual_reverts: return r.n_mutual_reverts;
        case Indicator::M_r: return r.M_r;
        case Indicator::M_i: return r.M_i;
        case Indicator::TC: return r.TC.value_or(-1);
        case Indicator::M: return r.M;
    }
    return 0;
}

std::vector<const ControversyReport*> rank(const std::vector<ControversyReport>& reports,
                                           Indicator indicator) {
    std::vector<const ControversyReport*> order;
    order.reserve(reports.size());
    for (const auto& r : reports) order.push_back(&r);
    std::sort(order.begin(), order.end(), [indicator](const auto* a, const auto* b) {
        const auto va = indicator_value(*a, indicator);
        const auto vb = indicator_value(*b, indicator);
        if (va != vb) return va > vb;
        return a->title < b->title;
    });
    return order;
}

PrecisionAtK precision_at_k(const std::vector<ControversyReport>& reports, const GroundTruth& truth,
                            Indicator indicator, std::size_t k) {
    if (reports.size() < k) throw InsufficientReports(reports.size(), k);
    const auto order = rank(reports, indicator);
    PrecisionAtK out;
    out.k = static_cast<std::int64_t>(k);
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < k; ++i) {
        auto it = truth.find(order[i]->title);
        if (it == truth.end()) {
            missing.push_back(order[i]->title);
        } else if (it->second == Label::controversial) {
            ++out.hits;
        }
    }
    if (!missing.empty()) throw UnlabeledTitles(std::move(missing));
    return out;
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count,
                                        std::uint64_t seed) {
    count = std::min(count, population);
    std::mt19937_64 engine(seed);
    std::vector<std::size_t> idx(population);
    for (std::size_t i = 0; i < population; ++i) idx[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        // uniform in [0, range) by rejection; std::uniform_int_distribution
        // is implementation-defined
        const std::uint64_t range = population - i;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % range;
        std::uint64_t draw;
        do {
            draw = engine();
        } while (draw >= limit);
        std::swap(idx[i], idx[i + draw % range]);
    }
    idx.resize(count);
    return idx;
}

std::vector<SweepRow> threshold_sweep(const std::vector<ControversyReport>& reports,
                                      const GroundTruth& truth,
                                      const std::vector<std::int64_t>& thresholds,
                                      std::size_t sample_size, std::uint64_t seed) {
    for (std::size_t i = 1; i < thresholds.size(); ++i) {
        if (thresholds[i] <= thresholds[i - 1])
            throw ConfigError("sweep thresholds must be strictly ascending");
    }
    const auto by_m = rank(reports, Indicator::M);

    std::vector<SweepRow> rows;
    for (const std::int64_t threshold : thresholds) {
        SweepRow row;
        row.threshold = threshold;
        const auto above = static_cast<std::size_t>(std::count_if(
            by_m.begin(), by_m.end(), [threshold](const auto* r) { return r->M > threshold; }));
        row.T = static_cast<std::int64_t>(above);
        row.short_sample = above < sample_size;

        std::vector<std::string> missing;
        for (const std::size_t i : sample_indices(above, sample_size, seed)) {
            auto it = truth.find(by_m[i]->title);
            if (it == truth.end()) {
                missing.push_back(by_m[i]->title);
            } else if (it->second == Label::controversial) {
                ++row.c;
            } else {
                ++row.n;
            }
            ++row.sampled;
        }
        if (!missing.empty()) {
            std::sort(missing.begin(), missing.end());
            throw UnlabeledTitles(std::move(missing));
        }
        if (row.sampled > 0) {
            row.pct_c = static_cast<double>(row.c) / static_cast<double>(row.sampled);
            // round half up in exact integer arithmetic
            row.C_estimate = (2 * row.T * row.c + row.sampled) / (2 * row.sampled);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<ScatterRow> scatter_export(const std::vector<ControversyReport>& reports) {
    std::vector<ScatterRow> rows;
    rows.reserve(reports.size());
    for (const auto* r : rank(reports, Indicator::M)) rows.push_back({r->title, r->TC, r->M});
    return rows;
}

}  // namespace editwar
