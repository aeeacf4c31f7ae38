#include "editwar/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include "editwar/error.hpp"
#include "editwar/evaluation.hpp"
#include "editwar/ingest.hpp"
#include "editwar/metrics.hpp"
#include "editwar/report_io.hpp"

#ifndef EDITWAR_DEFAULT_DATA_DIR
#define EDITWAR_DEFAULT_DATA_DIR "data"
#endif

namespace editwar::cli {

namespace fs = std::filesystem;

namespace {

class PageNotFound : public Error {
public:
    using Error::Error;
};

struct InputOptions {
    std::string path = "-";
    std::string format = "mediawiki-xml";
    std::vector<int> namespaces;
    bool all_namespaces = false;
};

struct LanguageOptions {
    std::string lang = "en";
    std::string patterns_file;
    std::string tags_file;
    std::string data_dir;
};

fs::path data_dir(const LanguageOptions& o) {
    if (!o.data_dir.empty()) return o.data_dir;
    if (const char* env = std::getenv("EDITWAR_DATA_DIR"); env && *env) return env;
    return EDITWAR_DEFAULT_DATA_DIR;
}

CommentPatternSet load_patterns(const LanguageOptions& o) {
    if (!o.patterns_file.empty()) return CommentPatternSet::load(o.patterns_file);
    return CommentPatternSet::load(data_dir(o) / "lang" / o.lang / "revert_patterns.txt");
}

TagConfig load_tags(const LanguageOptions& o) {
    if (!o.tags_file.empty()) return TagConfig::load(o.tags_file, o.lang);
    return TagConfig::load(data_dir(o) / "lang" / o.lang / "dispute_tags.txt", o.lang);
}

void add_input_options(CLI::App* cmd, InputOptions& o) {
    cmd->add_option("input", o.path, "Dump path, or - for stdin")->capture_default_str();
    cmd->add_option("--format", o.format, "Input format")
        ->check(CLI::IsMember({"mediawiki-xml", "revlog-jsonl"}))
        ->capture_default_str();
    cmd->add_option("--namespace", o.namespaces, "Namespace ids to keep (default 0)");
    cmd->add_flag("--all-namespaces", o.all_namespaces, "Keep pages from every namespace");
}

void add_language_options(CLI::App* cmd, LanguageOptions& o) {
    cmd->add_option("--lang", o.lang, "Language code selecting the config files")->capture_default_str();
    cmd->add_option("--patterns", o.patterns_file, "Revert comment pattern file");
    cmd->add_option("--tags", o.tags_file, "Dispute template list file");
    cmd->add_option("--data-dir", o.data_dir, "Directory holding lang/<code>/ config files");
}

IngestOptions ingest_options(const InputOptions& o) {
    IngestOptions opts;
    if (o.all_namespaces) {
        opts.filter = NamespaceFilter::all();
    } else if (!o.namespaces.empty()) {
        opts.filter = NamespaceFilter(std::set<int>(o.namespaces.begin(), o.namespaces.end()));
    }
    return opts;
}

// Holds either a file stream or the caller's stdin substitute.
class Input {
public:
    Input(const std::string& path, std::istream& stdin_stream) {
        if (path == "-") {
            stream_ = &stdin_stream;
            return;
        }
        file_.open(path, std::ios::binary);
        if (!file_) throw ConfigError("cannot open input " + path);
        stream_ = &file_;
    }
    std::istream& get() { return *stream_; }

private:
    std::ifstream file_;
    std::istream* stream_ = nullptr;
};

// Writes to --out when given, else to the caller's stdout.
class Output {
public:
    Output(const std::string& path, std::ostream& stdout_stream) {
        if (path.empty() || path == "-") {
            stream_ = &stdout_stream;
            return;
        }
        file_.open(path, std::ios::binary | std::ios::trunc);
        if (!file_) throw ConfigError("cannot write " + path);
        stream_ = &file_;
    }
    std::ostream& get() { return *stream_; }
    void close() {
        stream_->flush();
        if (!*stream_) throw Error("write failed");
        if (file_.is_open()) file_.close();
    }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

std::vector<ControversyReport> load_reports(const std::string& path, std::istream& in) {
    Input input(path, in);
    return read_reports(input.get());
}

struct AnalyzeOptions {
    InputOptions input;
    LanguageOptions language;
    std::int64_t threshold = default_threshold;
    std::string out;
    std::string report_format;
    std::string reverts_out;
    std::string scatter_out;
};

int cmd_analyze(const AnalyzeOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto patterns = load_patterns(o.language);
    const auto tags = load_tags(o.language);
    const auto format = *input_format_from_string(o.input.format);
    ReportFormat report_format = ReportFormat::csv;
    if (o.report_format == "jsonl" || (o.report_format.empty() && o.out.ends_with(".jsonl")))
        report_format = ReportFormat::jsonl;

    Input input(o.input.path, in);
    const auto started = std::chrono::steady_clock::now();
    auto stream = stream_pages(input.get(), format, ingest_options(o.input));

    std::optional<Output> reverts;
    if (!o.reverts_out.empty()) {
        reverts.emplace(o.reverts_out, out);
        reverts->get() << "title,page_id,n_both,n_text_only,n_comment_only\n";
    }

    std::vector<ControversyReport> reports;
    std::int64_t controversial = 0;
    while (auto page = stream->next()) {
        auto analysis = analyze_page(*page, patterns, &tags, o.threshold);
        if (reverts) {
            const auto& s = analysis.summary;
            reverts->get() << csv::quote(page->title) << ',' << page->page_id << ',' << s.n_both << ','
                           << s.n_text_only << ',' << s.n_comment_only << '\n';
        }
        controversial += analysis.report.controversial ? 1 : 0;
        reports.push_back(std::move(analysis.report));
    }
    if (reverts) reverts->close();
    sort_by_M(reports);

    Output output(o.out, out);
    write_reports(output.get(), reports, report_format);
    output.close();

    if (!o.scatter_out.empty()) {
        Output scatter(o.scatter_out, out);
        write_scatter(scatter.get(), scatter_export(reports));
        scatter.close();
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const auto& st = stream->stats();
    err << "pages processed: " << reports.size() << "\n"
        << "controversial (M > " << o.threshold << "): " << controversial << "\n"
        << "revisions: " << st.revisions << ", largest page: " << st.largest_page
        << ", peak buffered revisions: " << st.peak << "\n"
        << "input bytes: " << st.bytes << ", seconds: " << seconds << ", MB/s: "
        << (seconds > 0 ? static_cast<double>(st.bytes) / 1e6 / seconds : 0.0) << "\n";
    return ExitCode::ok;
}

struct RevertMapOptions {
    InputOptions input;
    LanguageOptions language;
    std::string title;
    bool mutual_only = false;
    std::string out;
};

int cmd_revert_map(const RevertMapOptions& o, std::istream& in, std::ostream& out) {
    const auto patterns = load_patterns(o.language);
    Input input(o.input.path, in);
    auto stream = stream_pages(input.get(), *input_format_from_string(o.input.format),
                               ingest_options(o.input));
    while (auto page = stream->next()) {
        if (page->title != o.title) continue;
        const auto analysis = analyze_page(*page, patterns, nullptr);
        Output output(o.out, out);
        write_revert_map(output.get(), revert_map(analysis, o.mutual_only));
        output.close();
        return ExitCode::ok;
    }
    throw PageNotFound("page '" + o.title + "' not found in input");
}

struct EvalOptions {
    std::string reports;
    std::string truth;
    std::size_t top = 30;
    std::string out;
    std::vector<std::int64_t> thresholds;
    std::size_t sample_size = 30;
    std::uint64_t seed = 1;
    std::string sweep_out;
    std::string scatter_out;
};

void run_sweep(const EvalOptions& o, const std::vector<ControversyReport>& reports,
               const GroundTruth& truth, const std::string& path, std::ostream& out,
               std::ostream& err) {
    const auto rows = threshold_sweep(reports, truth, o.thresholds, o.sample_size, o.seed);
    Output output(path, out);
    write_sweep_table(output.get(), rows, o.seed, o.sample_size);
    output.close();
    err << "sweep seed: " << o.seed << "\n";
}

int cmd_eval(const EvalOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto reports = load_reports(o.reports, in);
    const auto truth = load_ground_truth(fs::path(o.truth));

    std::vector<std::pair<Indicator, PrecisionAtK>> table;
    for (const auto ind : all_indicators) table.emplace_back(ind, precision_at_k(reports, truth, ind, o.top));
    Output output(o.out, out);
    write_precision_table(output.get(), table);
    output.close();

    if (!o.sweep_out.empty()) run_sweep(o, reports, truth, o.sweep_out, out, err);
    if (!o.scatter_out.empty()) {
        Output scatter(o.scatter_out, out);
        write_scatter(scatter.get(), scatter_export(reports));
        scatter.close();
    }
    return ExitCode::ok;
}

int cmd_sweep(const EvalOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto reports = load_reports(o.reports, in);
    const auto truth = load_ground_truth(fs::path(o.truth));
    run_sweep(o, reports, truth, o.out, out, err);
    return ExitCode::ok;
}

const std::vector<std::int64_t> default_thresholds = {50, 100, 180, 320, 560, 1000, 5600, 31000};

void add_sampling_options(CLI::App* cmd, EvalOptions& o) {
    cmd->add_option("--thresholds", o.thresholds, "Ascending M thresholds")->delimiter(',');
    cmd->add_option("--sample-size", o.sample_size, "Pages sampled per threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Revert and edit-war detection for MediaWiki revision histories", "editwar"};
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Rank pages by controversy");
    add_input_options(analyze_cmd, analyze.input);
    add_language_options(analyze_cmd, analyze.language);
    analyze_cmd->add_option("--threshold", analyze.threshold, "Flag pages with M above this")
        ->capture_default_str();
    analyze_cmd->add_option("--out", analyze.out, "Report file (default stdout)");
    analyze_cmd->add_option("--report-format", analyze.report_format, "csv or jsonl (default by --out extension)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    analyze_cmd->add_option("--reverts-out", analyze.reverts_out, "Per-page revert channel counts (CSV)");
    analyze_cmd->add_option("--scatter-out", analyze.scatter_out, "TC vs M rows (CSV)");

    RevertMapOptions map;
    auto* map_cmd = app.add_subcommand("revert-map", "Revert map of one page");
    add_input_options(map_cmd, map.input);
    add_language_options(map_cmd, map.language);
    map_cmd->add_option("--title", map.title, "Page title")->required();
    map_cmd->add_flag("--mutual-only", map.mutual_only, "Only reverts within mutual pairs");
    map_cmd->add_option("--out", map.out, "Output file (default stdout)");

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Precision at k for every indicator");
    eval_cmd->add_option("reports", eval.reports, "Report file from analyze")->required();
    eval_cmd->add_option("--truth", eval.truth, "Labels TSV (title, c|n)")->required();
    eval_cmd->add_option("--top", eval.top, "k for precision at k")->capture_default_str();
    eval_cmd->add_option("--out", eval.out, "Precision table (default stdout)");
    eval_cmd->add_option("--sweep-out", eval.sweep_out, "Also write a threshold sweep table here");
    eval_cmd->add_option("--scatter-out", eval.scatter_out, "TC vs M rows (CSV)");
    add_sampling_options(eval_cmd, eval);

    EvalOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Threshold sweep with sampled labels");
    sweep_cmd->add_option("reports", sweep.reports, "Report file from analyze")->required();
    sweep_cmd->add_option("--truth", sweep.truth, "Labels TSV (title, c|n)")->required();
    sweep_cmd->add_option("--out", sweep.out, "Sweep table (default stdout)");
    add_sampling_options(sweep_cmd, sweep);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitCode::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return ExitCode::bad_arguments;
    }

    if (eval.thresholds.empty()) eval.thresholds = default_thresholds;
    if (sweep.thresholds.empty()) sweep.thresholds = default_thresholds;

    try {
        if (*analyze_cmd) return cmd_analyze(analyze, in, out, err);
        if (*map_cmd) return cmd_revert_map(map, in, out);
        if (*eval_cmd) return cmd_eval(eval, in, out, err);
        if (*sweep_cmd) return cmd_sweep(sweep, in, out, err);
    } catch (const MalformedInput& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::malformed_input;
    } catch (const FingerprintUnavailable& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::malformed_input;
    } catch (const PageNotFound& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::page_not_found;
    } catch (const InsufficientReports& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::evaluation_error;
    } catch (const UnlabeledTitles& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::evaluation_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::bad_arguments;
    }
    return ExitCode::bad_arguments;
}

}  // namespace editwar::cli
