#include <json.hpp>

#include <set>
#include <vector>

#include "editwar/error.hpp"
#include "page_builder.hpp"
#include "stream_readers.hpp"

namespace editwar::detail {

namespace {

using nlohmann::json;

struct Line {
    PageHistory header;
    PendingRevision revision;
};

class JsonlPageStream final : public PageStream {
public:
    JsonlPageStream(std::istream& in, IngestOptions options)
        : in_(in), options_(std::move(options)) {}

    std::optional<PageHistory> next() override {
        while (true) {
            std::optional<Line> line = read_line();
            const bool boundary = !line || (group_ && line->header.page_id != group_->page_id);
            if (boundary) {
                if (!group_) return std::nullopt;
                PageHistory header = std::move(*group_);
                std::vector<PendingRevision> pending = std::move(pending_);
                const std::uint64_t offset = group_offset_;
                pending_.clear();
                group_.reset();
                stats_.release(pending.size());
                if (line) start_group(std::move(*line));
                if (!options_.filter.accepts(header.namespace_id)) continue;
                return finalize_page(std::move(header), std::move(pending), options_, offset);
            }
            if (!group_) {
                start_group(std::move(*line));
            } else {
                if (line->header.namespace_id != group_->namespace_id) {
                    throw MalformedInput("namespace changes within page_id " +
                                             std::to_string(group_->page_id),
                                         line_offset_, group_->title);
                }
                append(std::move(line->revision));
            }
        }
    }

private:
    void start_group(Line line) {
        if (!seen_pages_.insert(line.header.page_id).second) {
            throw MalformedInput("page_id " + std::to_string(line.header.page_id) +
                                     " reappears after its revisions ended",
                                 line_offset_, line.header.title);
        }
        group_ = std::move(line.header);
        group_offset_ = line_offset_;
        append(std::move(line.revision));
    }

    void append(PendingRevision rev) {
        if (!options_.filter.accepts(group_->namespace_id)) return;
        pending_.push_back(std::move(rev));
        stats_.add();
    }

    std::optional<Line> read_line() {
        std::string raw;
        while (true) {
            line_offset_ = offset_;
            if (!std::getline(in_, raw)) return std::nullopt;
            offset_ += raw.size() + (in_.eof() ? 0 : 1);
            stats_.bytes = offset_;
            if (raw.find_first_not_of(" \t\r") != std::string::npos) break;
        }
        try {
            return parse(json::parse(raw));
        } catch (const json::exception& e) {
            throw MalformedInput(e.what(), line_offset_, group_ ? group_->title : std::string{});
        }
    }

    Line parse(const json& obj) {
        auto fail = [&](const std::string& what) -> MalformedInput {
            return MalformedInput(what, line_offset_, group_ ? group_->title : std::string{});
        };
        if (!obj.is_object()) throw fail("line is not a JSON object");

        Line line;
        line.header.page_id = obj.at("page_id").get<std::int64_t>();
        line.header.title = obj.at("title").get<std::string>();
        line.header.namespace_id = obj.at("ns").get<int>();

        RevisionRecord& rec = line.revision.record;
        rec.page_id = line.header.page_id;
        rec.rev_id = obj.at("rev_id").get<std::int64_t>();
        if (rec.page_id < 0 || rec.rev_id < 0) throw fail("negative page_id or rev_id");

        const auto ts = obj.at("timestamp").get<std::string>();
        auto t = parse_iso8601(ts);
        if (!t) throw fail("bad timestamp '" + ts + "'");
        rec.timestamp = *t;

        const json& editor = obj.at("editor");
        const auto kind = editor_kind_from_string(editor.at("kind").get<std::string>());
        if (!kind) throw fail("bad editor kind");
        std::string name = editor.contains("name") && !editor["name"].is_null()
                               ? editor["name"].get<std::string>()
                               : std::string{};
        switch (*kind) {
            case EditorKind::registered:
                if (name.empty()) throw fail("registered editor without a name");
                rec.editor = parse_editor(name, std::nullopt, false);
                break;
            case EditorKind::anonymous:
                if (name.empty()) throw fail("anonymous editor without an address");
                rec.editor = parse_editor(std::nullopt, name, false);
                break;
            case EditorKind::unknown:
                rec.editor = parse_editor(std::nullopt, std::nullopt, true);
                break;
        }

        if (auto it = obj.find("comment"); it != obj.end() && !it->is_null())
            rec.comment = it->get<std::string>();
        if (auto it = obj.find("text"); it != obj.end() && !it->is_null()) {
            rec.text = it->get<std::string>();
            rec.text_bytes = rec.text->size();
        }
        if (auto it = obj.find("sha1"); it != obj.end() && !it->is_null())
            line.revision.dump_hash = it->get<std::string>();
        return line;
    }

    std::istream& in_;
    IngestOptions options_;
    std::uint64_t offset_ = 0;
    std::uint64_t line_offset_ = 0;
    std::uint64_t group_offset_ = 0;
    std::optional<PageHistory> group_;
    std::vector<PendingRevision> pending_;
    std::set<std::int64_t> seen_pages_;
};

}  // namespace

std::unique_ptr<PageStream> make_jsonl_stream(std::istream& in, IngestOptions options) {
    return std::make_unique<JsonlPageStream>(in, std::move(options));
}

}  // namespace editwar::detail
