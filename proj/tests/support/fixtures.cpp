#include "support/fixtures.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <sstream>

#include "editwar/fingerprint.hpp"
#include "editwar/ingest.hpp"

namespace editwar::testing {

PageHistory make_history(const std::vector<std::string>& texts,
                         const std::vector<std::string>& editors,
                         const std::vector<std::string>& comments, std::int64_t page_id,
                         std::string title) {
    assert(texts.size() == editors.size());
    PageHistory page;
    page.page_id = page_id;
    page.title = std::move(title);
    for (std::size_t k = 0; k < texts.size(); ++k) {
        RevisionRecord rec;
        rec.page_id = page_id;
        rec.rev_id = static_cast<std::int64_t>(k + 1);
        rec.ordinal = k;
        rec.timestamp = 1'257'000'000 + static_cast<std::int64_t>(k) * 60;
        rec.editor = EditorId::registered(editors[k]);
        if (k < comments.size()) rec.comment = comments[k];
        rec.text = texts[k];
        rec.text_bytes = texts[k].size();
        rec.content_fingerprint = fingerprint(texts[k]);
        page.revisions.push_back(std::move(rec));
    }
    return page;
}

PageHistory random_history(std::mt19937_64& rng, std::size_t max_revisions, int symbols,
                           int editors, std::int64_t page_id) {
    std::uniform_int_distribution<std::size_t> len(0, max_revisions);
    std::uniform_int_distribution<int> sym(0, symbols - 1);
    std::uniform_int_distribution<int> ed(0, editors - 1);
    const std::size_t n = len(rng);
    std::vector<std::string> texts, names;
    for (std::size_t k = 0; k < n; ++k) {
        texts.push_back(std::string(1, static_cast<char>('A' + sym(rng))));
        names.push_back("e" + std::to_string(ed(rng)));
    }
    return make_history(texts, names, {}, page_id, "Random " + std::to_string(page_id));
}

PageHistory rename_editors(const PageHistory& page, const std::string& prefix) {
    PageHistory out = page;
    for (auto& rev : out.revisions) {
        if (rev.editor.kind != EditorKind::unknown) rev.editor.name = prefix + rev.editor.name;
    }
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string to_mediawiki_xml(const std::vector<PageHistory>& pages, std::mt19937_64* shuffle) {
    std::ostringstream x;
    x << "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.10/\" version=\"0.10\" "
         "xml:lang=\"en\">\n"
      << "  <siteinfo>\n    <sitename>Wikipedia</sitename>\n    <namespaces>\n"
      << "      <namespace key=\"0\" case=\"first-letter\" />\n"
      << "      <namespace key=\"1\" case=\"first-letter\">Talk</namespace>\n"
      << "    </namespaces>\n  </siteinfo>\n";
    for (const auto& page : pages) {
        x << "  <page>\n    <title>" << xml_escape(page.title) << "</title>\n    <ns>"
          << page.namespace_id << "</ns>\n    <id>" << page.page_id << "</id>\n";
        std::vector<const RevisionRecord*> revs;
        for (const auto& r : page.revisions) revs.push_back(&r);
        if (shuffle) std::shuffle(revs.begin(), revs.end(), *shuffle);
        for (const auto* r : revs) {
            x << "    <revision>\n      <id>" << r->rev_id << "</id>\n      <parentid>0</parentid>\n"
              << "      <timestamp>" << format_iso8601(r->timestamp) << "</timestamp>\n";
            switch (r->editor.kind) {
                case EditorKind::registered:
                    x << "      <contributor>\n        <username>" << xml_escape(r->editor.name)
                      << "</username>\n        <id>42</id>\n      </contributor>\n";
                    break;
                case EditorKind::anonymous:
                    x << "      <contributor>\n        <ip>" << xml_escape(r->editor.name)
                      << "</ip>\n      </contributor>\n";
                    break;
                case EditorKind::unknown:
                    x << "      <contributor deleted=\"deleted\" />\n";
                    break;
            }
            x << "      <minor />\n";
            if (!r->comment.empty()) x << "      <comment>" << xml_escape(r->comment) << "</comment>\n";
            x << "      <model>wikitext</model>\n      <format>text/x-wiki</format>\n";
            if (r->text) {
                x << "      <text bytes=\"" << r->text->size() << "\" xml:space=\"preserve\">"
                  << xml_escape(*r->text) << "</text>\n";
            } else {
                x << "      <text bytes=\"" << r->text_bytes << "\" deleted=\"deleted\" />\n";
            }
            x << "      <sha1>" << to_hex(r->content_fingerprint).substr(0, 31) << "</sha1>\n"
              << "    </revision>\n";
        }
        x << "  </page>\n";
    }
    x << "</mediawiki>\n";
    return x.str();
}

std::string to_revlog_jsonl(const std::vector<PageHistory>& pages) {
    std::ostringstream out;
    for (const auto& page : pages) {
        for (const auto& r : page.revisions) {
            nlohmann::ordered_json j;
            j["page_id"] = page.page_id;
            j["title"] = page.title;
            j["ns"] = page.namespace_id;
            j["rev_id"] = r.rev_id;
            j["timestamp"] = format_iso8601(r.timestamp);
            j["editor"] = {{"kind", to_string(r.editor.kind)}, {"name", r.editor.name}};
            j["comment"] = r.comment;
            j["text"] = r.text ? nlohmann::ordered_json(*r.text) : nlohmann::ordered_json(nullptr);
            out << j.dump() << '\n';
        }
    }
    return out.str();
}

PageHistory revert_split_history(std::uint64_t both, std::uint64_t text_only,
                                 std::uint64_t comment_only) {
    std::vector<std::string> texts{"base text"};
    std::vector<std::string> editors{"Founder"};
    std::vector<std::string> comments{"new article"};
    std::string current = texts.front();
    std::uint64_t serial = 0;

    auto text_revert = [&](bool with_comment) {
        texts.push_back("vandalised " + std::to_string(serial));
        editors.push_back("Vandal" + std::to_string(serial % 7));
        comments.push_back("");
        texts.push_back(current);
        editors.push_back("Patroller");
        comments.push_back(with_comment ? "rv vandalism" : "restore earlier wording");
        ++serial;
    };
    auto comment_revert = [&] {
        current = "rewritten " + std::to_string(serial);
        texts.push_back(current);
        editors.push_back(serial % 2 ? "Checker" : "Reviewer");
        comments.push_back("Reverted edits by Example");
        ++serial;
    };

    // interleave the three kinds so no category sits in one block
    std::uint64_t b = both, t = text_only, c = comment_only;
    while (b + t + c > 0) {
        if (b > 0) {
            text_revert(true);
            --b;
        }
        if (t > 0) {
            text_revert(false);
            --t;
        }
        if (c > 0 && (b + t) % 13 == 0) {
            comment_revert();
            --c;
        }
    }
    return make_history(texts, editors, comments, 4103, "Synthetic split");
}

// Two disjoint mutually reverting pairs of equal weight w: M = 4 * (2w - w)
// = 4w. A target of 0 yields a single warring pair.
PageHistory history_with_M(std::int64_t target, std::int64_t page_id, std::string title) {
    assert(target == 0 || (target % 4 == 0 && target >= 8));
    std::vector<std::string> texts{"stub"}, editors{"Creator"};
    std::uint64_t serial = 0;
    auto pair_war = [&](const std::string& x, const std::string& y, std::int64_t weight) {
        // padding edits bring both editors to N = weight (the war adds 2 each)
        for (std::int64_t k = 0; k < weight - 2; ++k) {
            for (const auto& who : {x, y}) {
                texts.push_back("pad " + who + " " + std::to_string(serial++));
                editors.push_back(who);
            }
        }
        const std::string p = "version of " + x + " " + std::to_string(serial++);
        const std::string q = "version of " + y + " " + std::to_string(serial++);
        for (const auto& [t, who] : {std::pair{p, x}, std::pair{q, y}, std::pair{p, x}, std::pair{q, y}}) {
            texts.push_back(t);
            editors.push_back(who);
        }
    };
    if (target == 0) {
        pair_war("Alice", "Bob", 5);
    } else {
        pair_war("Alice", "Bob", target / 4);
        pair_war("Carol", "Dave", target / 4);
    }
    return make_history(texts, editors, {}, page_id, std::move(title));
}

ControversyReport report_with(std::string title, std::int64_t M, std::int64_t filler) {
    ControversyReport r;
    r.title = std::move(title);
    r.M = M;
    r.M_i = M + filler;
    r.M_r = filler;
    r.n_edits = filler;
    r.n_reverts = filler;
    r.n_mutual_reverts = filler;
    r.TC = filler;
    r.controversial = M > default_threshold;
    return r;
}

}  // namespace editwar::testing
