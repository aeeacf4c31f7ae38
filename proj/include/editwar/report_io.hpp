#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "editwar/evaluation.hpp"
#include "editwar/metrics.hpp"

namespace editwar {

namespace csv {

/// RFC 4180 quoting, only when the field needs it.
std::string quote(std::string_view field);

/// Splits one record. Handles quoted fields with embedded commas, doubled
/// quotes and line breaks, reading further lines from `in` as needed.
/// Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields);

}  // namespace csv

enum class ReportFormat { csv, jsonl };

/// Column order shared by every report file.
inline constexpr std::string_view report_header =
    "title,page_id,n_edits,n_editors,n_reverts,n_mutual_reverts,E,M_r,M_i,M,TC,controversial";

/// Writes reports in the given order followed by the completion sentinel. A
/// file lacking the sentinel was cut short.
void write_reports(std::ostream& out, const std::vector<ControversyReport>& reports,
                   ReportFormat format);

/// Reads a file produced by write_reports (format detected from content).
/// Throws MalformedInput on bad rows or a missing sentinel.
std::vector<ControversyReport> read_reports(std::istream& in);

/// Sorts by M descending, then title ascending.
void sort_by_M(std::vector<ControversyReport>& reports);

void write_precision_table(std::ostream& out, const std::vector<std::pair<Indicator, PrecisionAtK>>& table);
void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows, std::uint64_t seed,
                       std::size_t sample_size);
void write_scatter(std::ostream& out, const std::vector<ScatterRow>& rows);

/// Counts of reverts at each (N_d, N_r) coordinate.
struct RevertMapRow {
    std::int64_t n_d = 0;
    std::int64_t n_r = 0;
    std::int64_t multiplicity = 0;
    bool mutual_only = false;

    friend bool operator==(const RevertMapRow&, const RevertMapRow&) = default;
};

/// Revert map of an analysed page, ordered by (n_d, n_r). With `mutual_only`
/// only reverts between editors of a mutual pair are kept.
std::vector<RevertMapRow> revert_map(const PageAnalysis& analysis, bool mutual_only);

void write_revert_map(std::ostream& out, const std::vector<RevertMapRow>& rows);

/// "12" for 11743: thousands rounded to two significant digits.
std::string kilo_two_significant(std::int64_t value);

}  // namespace editwar
