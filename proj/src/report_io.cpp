#include "editwar/report_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "editwar/error.hpp"

namespace editwar {

namespace csv {

std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string line;
    if (!std::getline(in, line)) return false;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (true) {
        if (i == line.size()) {
            if (quoted) {
                // embedded line break inside a quoted field
                field += '\n';
                if (!std::getline(in, line)) break;
                i = 0;
                continue;
            }
            break;
        }
        const char c = line[i++];
        if (quoted) {
            if (c == '"') {
                if (i < line.size() && line[i] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r' && i == line.size()) {
            // CRLF line ending
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return true;
}

}  // namespace csv

namespace {

constexpr std::string_view csv_sentinel = "# end of report";

std::int64_t to_int(const std::string& s, const char* column, std::uint64_t row) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw MalformedInput(std::string("bad integer in column ") + column + ": '" + s + "'", row);
    return v;
}

void write_csv_row(std::ostream& out, const ControversyReport& r) {
    out << csv::quote(r.title) << ',' << r.page_id << ',' << r.n_edits << ',' << r.n_editors << ','
        << r.n_reverts << ',' << r.n_mutual_reverts << ',' << r.E << ',' << r.M_r << ',' << r.M_i
        << ',' << r.M << ',';
    if (r.TC) out << *r.TC;
    out << ',' << (r.controversial ? "true" : "false") << '\n';
}

nlohmann::ordered_json to_json(const ControversyReport& r) {
    nlohmann::ordered_json j;
    j["title"] = r.title;
    j["page_id"] = r.page_id;
    j["n_edits"] = r.n_edits;
    j["n_editors"] = r.n_editors;
    j["n_reverts"] = r.n_reverts;
    j["n_mutual_reverts"] = r.n_mutual_reverts;
    j["E"] = r.E;
    j["M_r"] = r.M_r;
    j["M_i"] = r.M_i;
    j["M"] = r.M;
    j["TC"] = r.TC ? nlohmann::ordered_json(*r.TC) : nlohmann::ordered_json(nullptr);
    j["controversial"] = r.controversial;
    return j;
}

std::vector<ControversyReport> read_jsonl(std::istream& in) {
    std::vector<ControversyReport> reports;
    std::string line;
    std::uint64_t row = 0;
    bool complete = false;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        if (complete) throw MalformedInput("data after the completion sentinel", row);
        try {
            const auto j = nlohmann::json::parse(line);
            if (j.contains("complete")) {
                const auto pages = j.at("pages").get<std::size_t>();
                if (pages != reports.size())
                    throw MalformedInput("sentinel page count does not match rows", row);
                complete = true;
                continue;
            }
            ControversyReport r;
            r.title = j.at("title").get<std::string>();
            r.page_id = j.at("page_id").get<std::int64_t>();
            r.n_edits = j.at("n_edits").get<std::int64_t>();
            r.n_editors = j.at("n_editors").get<std::int64_t>();
            r.n_reverts = j.at("n_reverts").get<std::int64_t>();
            r.n_mutual_reverts = j.at("n_mutual_reverts").get<std::int64_t>();
            r.E = j.at("E").get<std::int64_t>();
            r.M_r = j.at("M_r").get<std::int64_t>();
            r.M_i = j.at("M_i").get<std::int64_t>();
            r.M = j.at("M").get<std::int64_t>();
            if (!j.at("TC").is_null()) r.TC = j.at("TC").get<std::int64_t>();
            r.controversial = j.at("controversial").get<bool>();
            reports.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw MalformedInput(e.what(), row);
        }
    }
    if (!complete) throw MalformedInput("report file is incomplete (no completion sentinel)", row);
    return reports;
}

std::vector<ControversyReport> read_csv(std::istream& in) {
    std::vector<ControversyReport> reports;
    std::vector<std::string> f;
    std::uint64_t row = 0;
    if (!csv::read_record(in, f)) throw MalformedInput("empty report file", 0);
    ++row;
    {
        std::string header;
        for (std::size_t i = 0; i < f.size(); ++i) header += (i ? "," : "") + f[i];
        if (header != report_header) throw MalformedInput("unexpected report header '" + header + "'", 0);
    }
    bool complete = false;
    while (csv::read_record(in, f)) {
        ++row;
        if (f.size() == 1 && f[0].empty()) continue;
        if (complete) throw MalformedInput("data after the completion sentinel", row);
        if (f.size() == 1 && f[0].starts_with(csv_sentinel)) {
            const auto count = f[0].substr(csv_sentinel.size());
            std::size_t pages = 0;
            if (std::sscanf(count.c_str(), ": %zu pages", &pages) != 1 || pages != reports.size())
                throw MalformedInput("sentinel page count does not match rows", row);
            complete = true;
            continue;
        }
        if (f.size() != 12) throw MalformedInput("expected 12 columns, got " + std::to_string(f.size()), row);
        ControversyReport r;
        r.title = f[0];
        r.page_id = to_int(f[1], "page_id", row);
        r.n_edits = to_int(f[2], "n_edits", row);
        r.n_editors = to_int(f[3], "n_editors", row);
        r.n_reverts = to_int(f[4], "n_reverts", row);
        r.n_mutual_reverts = to_int(f[5], "n_mutual_reverts", row);
        r.E = to_int(f[6], "E", row);
        r.M_r = to_int(f[7], "M_r", row);
        r.M_i = to_int(f[8], "M_i", row);
        r.M = to_int(f[9], "M", row);
        if (!f[10].empty()) r.TC = to_int(f[10], "TC", row);
        if (f[11] == "true") {
            r.controversial = true;
        } else if (f[11] != "false") {
            throw MalformedInput("bad controversial flag '" + f[11] + "'", row);
        }
        reports.push_back(std::move(r));
    }
    if (!complete) throw MalformedInput("report file is incomplete (no completion sentinel)", row);
    return reports;
}

}  // namespace

void write_reports(std::ostream& out, const std::vector<ControversyReport>& reports,
                   ReportFormat format) {
    if (format == ReportFormat::jsonl) {
        for (const auto& r : reports) out << to_json(r).dump() << '\n';
        nlohmann::ordered_json end;
        end["complete"] = true;
        end["pages"] = reports.size();
        out << end.dump() << '\n';
        return;
    }
    out << report_header << '\n';
    for (const auto& r : reports) write_csv_row(out, r);
    out << csv_sentinel << ": " << reports.size() << " pages\n";
}

std::vector<ControversyReport> read_reports(std::istream& in) {
    const int first = in.peek();
    if (first == '{') return read_jsonl(in);
    return read_csv(in);
}

void sort_by_M(std::vector<ControversyReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
        if (a.M != b.M) return a.M > b.M;
        return a.title < b.title;
    });
}

void write_precision_table(std::ostream& out,
                           const std::vector<std::pair<Indicator, PrecisionAtK>>& table) {
    out << "metric";
    for (const auto& [ind, p] : table) out << ',' << to_string(ind);
    out << "\nhits";
    for (const auto& [ind, p] : table) out << ',' << p.hits;
    out << "\nk";
    for (const auto& [ind, p] : table) out << ',' << p.k;
    out << "\nprecision";
    char buf[32];
    for (const auto& [ind, p] : table) {
        std::snprintf(buf, sizeof buf, "%.4f", p.precision());
        out << ',' << buf;
    }
    out << '\n';
}

std::string kilo_two_significant(std::int64_t value) {
    if (value == 0) return "0";
    const double k = static_cast<double>(value) / 1000.0;
    const int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(k))));
    const double scale = std::pow(10.0, 1 - magnitude);
    const double rounded = std::round(k * scale) / scale;
    const int decimals = std::max(0, 1 - magnitude);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
    return buf;
}

void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows, std::uint64_t seed,
                       std::size_t sample_size) {
    out << "M_threshold,n,c,T,pct_c,C_estimate,C_k,sampled,sample_size,short_sample,seed\n";
    char pct[32];
    for (const auto& r : rows) {
        std::snprintf(pct, sizeof pct, "%.2f", 100.0 * r.pct_c);
        out << r.threshold << ',' << r.n << ',' << r.c << ',' << r.T << ',' << pct << ','
            << r.C_estimate << ',' << kilo_two_significant(r.C_estimate) << ',' << r.sampled << ','
            << sample_size << ',' << (r.short_sample ? "true" : "false") << ',' << seed << '\n';
    }
}

void write_scatter(std::ostream& out, const std::vector<ScatterRow>& rows) {
    out << "title,TC,M\n";
    for (const auto& r : rows) {
        out << csv::quote(r.title) << ',';
        if (r.TC) out << *r.TC;
        out << ',' << r.M << '\n';
    }
}

std::vector<RevertMapRow> revert_map(const PageAnalysis& analysis, bool mutual_only) {
    std::set<std::pair<EditorId, EditorId>> mutual;
    for (const auto& p : analysis.pairs) {
        mutual.emplace(p.editor_a, p.editor_b);
        mutual.emplace(p.editor_b, p.editor_a);
    }
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> cells;
    for (const auto& w : analysis.weighted) {
        if (mutual_only && !mutual.contains({w.reverter, w.reverted})) continue;
        ++cells[{w.n_d, w.n_r}];
    }
    std::vector<RevertMapRow> rows;
    rows.reserve(cells.size());
    for (const auto& [xy, count] : cells) rows.push_back({xy.first, xy.second, count, mutual_only});
    return rows;
}

void write_revert_map(std::ostream& out, const std::vector<RevertMapRow>& rows) {
    out << "n_d,n_r,multiplicity,mutual_only\n";
    for (const auto& r : rows) {
        out << r.n_d << ',' << r.n_r << ',' << r.multiplicity << ','
            << (r.mutual_only ? "true" : "false") << '\n';
    }
}

}  // namespace editwar
