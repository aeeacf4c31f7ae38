#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "editwar/error.hpp"
#include "editwar/fingerprint.hpp"
#include "editwar/ingest.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace editwar;
using namespace editwar::testing;

namespace {

std::vector<PageHistory> read_all(const std::string& doc, InputFormat format, IngestOptions opts = {},
                                  BufferStats* stats = nullptr) {
    std::istringstream in(doc);
    auto stream = stream_pages(in, format, std::move(opts));
    std::vector<PageHistory> pages;
    while (auto p = stream->next()) pages.push_back(std::move(*p));
    if (stats) *stats = stream->stats();
    return pages;
}

const char* empty_dump =
    "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.10/\" version=\"0.10\">\n"
    "  <siteinfo><sitename>Wikipedia</sitename></siteinfo>\n"
    "</mediawiki>\n";

std::string one_page(const std::string& revisions, int ns = 0) {
    return "<mediawiki><page><title>T</title><ns>" + std::to_string(ns) +
           "</ns><id>3</id>" + revisions + "</page></mediawiki>";
}

std::string revision(int id, const std::string& ts, const std::string& contributor,
                     const std::string& text_element, const std::string& extra = {}) {
    return "<revision><id>" + std::to_string(id) + "</id><timestamp>" + ts +
           "</timestamp><contributor>" + contributor + "</contributor>" + extra + text_element +
           "</revision>";
}

}  // namespace

// --- fingerprint ---

TEST(Fingerprint, DeterministicOnEmptyInput) { EXPECT_EQ(fingerprint(""), fingerprint("")); }

TEST(Fingerprint, ExactBytesNoNormalization) {
    EXPECT_NE(fingerprint("abc"), fingerprint("abc "));
    EXPECT_NE(fingerprint("abc"), fingerprint("ABC"));
    EXPECT_EQ(fingerprint("abc").size(), 32u);
}

TEST(Fingerprint, KnownDigest) {
    EXPECT_EQ(to_hex(fingerprint("abc")),
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Fingerprint, TenThousandDistinctStringsHaveDistinctDigests) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(0, 12), ch(0, 255);
    std::set<std::string> texts;
    while (texts.size() < 10'000) {
        std::string s(static_cast<std::size_t>(len(rng)), '\0');
        for (auto& c : s) c = static_cast<char>(ch(rng));
        texts.insert(s);
    }
    const std::vector<std::string> list(texts.begin(), texts.end());
    std::vector<Fingerprint> fps;
    for (const auto& s : list) fps.push_back(fingerprint(s));
    // pairwise, as stated; the sorted check below is the same thing faster
    std::size_t collisions = 0;
    for (std::size_t a = 0; a < 2000; ++a)
        for (std::size_t b = a + 1; b < fps.size(); ++b) collisions += fps[a] == fps[b];
    EXPECT_EQ(collisions, 0u);
    std::sort(fps.begin(), fps.end());
    EXPECT_EQ(std::adjacent_find(fps.begin(), fps.end()), fps.end());
}

TEST(Fingerprint, DumpHashNeverEqualsLocalDigest) {
    const auto local = fingerprint("x");
    EXPECT_NE(fingerprint_from_dump_hash(local), local);
    EXPECT_EQ(fingerprint_from_dump_hash("abc"), fingerprint_from_dump_hash("abc"));
}

// --- parse_editor ---

TEST(ParseEditor, UsernameIsRegistered) {
    const auto e = parse_editor(std::string("Jamadagni"), std::nullopt, false);
    EXPECT_EQ(e.kind, EditorKind::registered);
    EXPECT_EQ(e.name, "Jamadagni");
    EXPECT_EQ(e, EditorId::registered("Jamadagni"));
}

TEST(ParseEditor, IpIsAnonymous) {
    const auto e = parse_editor(std::nullopt, std::string("210.213.171.25"), false);
    EXPECT_EQ(e.kind, EditorKind::anonymous);
    EXPECT_EQ(e.name, "210.213.171.25");
    EXPECT_NE(e, EditorId::registered("210.213.171.25"));
}

TEST(ParseEditor, DeletedIsADistinctUnknown) {
    const auto a = parse_editor(std::nullopt, std::nullopt, true);
    const auto b = parse_editor(std::nullopt, std::nullopt, true);
    EXPECT_EQ(a.kind, EditorKind::unknown);
    EXPECT_NE(a, b);
    EXPECT_EQ(a, a);
    EXPECT_NE(parse_editor(std::nullopt, std::nullopt, false), a);
}

TEST(ParseEditor, UsernameAndIpIsMalformed) {
    EXPECT_THROW(parse_editor(std::string("x"), std::string("1.2.3.4"), false), MalformedInput);
}

// --- timestamps ---

TEST(Timestamp, ParsesMediaWikiFormat) {
    EXPECT_EQ(parse_iso8601("1970-01-01T00:00:00Z"), 0);
    EXPECT_EQ(parse_iso8601("2009-11-01T12:30:05Z"), 1257078605);
    EXPECT_EQ(parse_iso8601("2009-11-01T13:30:05+01:00"), 1257078605);
    EXPECT_EQ(parse_iso8601("2000-02-29T00:00:00Z"), 951782400);
    EXPECT_FALSE(parse_iso8601("2009-13-01T00:00:00Z"));
    EXPECT_FALSE(parse_iso8601("yesterday"));
    EXPECT_FALSE(parse_iso8601("2009-11-01T12:30:05Zjunk"));
}

TEST(Timestamp, RoundTrips) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> t(0, 4'102'444'800);
    for (int k = 0; k < 1000; ++k) {
        const auto v = t(rng);
        EXPECT_EQ(parse_iso8601(format_iso8601(v)), v);
    }
}

// --- XML streaming ---

TEST(XmlStream, EmptyDumpYieldsNothing) {
    EXPECT_TRUE(read_all(empty_dump, InputFormat::mediawiki_xml).empty());
}

TEST(XmlStream, RestoredTextSharesFingerprint) {
    const auto doc = to_mediawiki_xml({make_history({"A", "B", "A"}, {"e1", "e2", "e1"})});
    const auto pages = read_all(doc, InputFormat::mediawiki_xml);
    ASSERT_EQ(pages.size(), 1u);
    const auto& r = pages[0].revisions;
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0].content_fingerprint, r[2].content_fingerprint);
    EXPECT_NE(r[0].content_fingerprint, r[1].content_fingerprint);
    EXPECT_EQ(r[1].editor, EditorId::registered("e2"));
}

TEST(XmlStream, ShuffledRevisionsMatchWholeDocumentParser) {
    std::mt19937_64 rng(2011);
    std::vector<PageHistory> pages;
    std::uniform_int_distribution<int> sym(0, 5), ed(0, 9);
    std::uniform_int_distribution<std::int64_t> jitter(0, 3);
    std::int64_t rev_id = 100;
    for (int p = 0; p < 5; ++p) {
        PageHistory page;
        page.page_id = 10 + p;
        page.title = "Page <" + std::to_string(p) + "> & co";
        std::int64_t ts = 1'200'000'000;
        for (int k = 0; k < 40; ++k) {
            RevisionRecord rec;
            rec.page_id = page.page_id;
            rec.rev_id = rev_id++;
            ts += jitter(rng) * 60;  // equal timestamps exercise the rev_id tie-break
            rec.timestamp = ts;
            const int e = ed(rng);
            rec.editor = e == 9   ? EditorId::unknown()
                         : e >= 6 ? EditorId::anonymous("10.0.0." + std::to_string(e))
                                  : EditorId::registered("User " + std::to_string(e));
            rec.comment = k % 3 ? "" : "edit \"" + std::to_string(k) + "\"";
            rec.text = "line\n" + std::string(1, static_cast<char>('a' + sym(rng))) + " <b>&amp;";
            rec.text_bytes = rec.text->size();
            rec.content_fingerprint = fingerprint(*rec.text);
            page.revisions.push_back(rec);
        }
        pages.push_back(page);
    }
    const auto doc = to_mediawiki_xml(pages, &rng);
    const auto streamed = read_all(doc, InputFormat::mediawiki_xml);
    const auto reference = reference_parse_xml(doc);
    ASSERT_EQ(streamed.size(), 5u);
    ASSERT_EQ(reference.size(), 5u);
    std::size_t total = 0;
    for (std::size_t p = 0; p < 5; ++p) {
        std::string why;
        EXPECT_TRUE(same_page(streamed[p], reference[p], &why)) << "page " << p << ": " << why;
        total += streamed[p].revisions.size();
        for (std::size_t k = 1; k < streamed[p].revisions.size(); ++k) {
            const auto& a = streamed[p].revisions[k - 1];
            const auto& b = streamed[p].revisions[k];
            EXPECT_TRUE(a.timestamp < b.timestamp || (a.timestamp == b.timestamp && a.rev_id < b.rev_id));
        }
    }
    EXPECT_EQ(total, 200u);
}

TEST(XmlStream, NamespaceFilterSkipsTalkPages) {
    auto article = make_history({"a"}, {"x"}, {}, 1, "Article");
    auto talk = make_history({"b"}, {"y"}, {}, 2, "Talk:Article");
    talk.namespace_id = 1;
    const auto doc = to_mediawiki_xml({article, talk});

    BufferStats stats;
    auto pages = read_all(doc, InputFormat::mediawiki_xml, {}, &stats);
    ASSERT_EQ(pages.size(), 1u);
    EXPECT_EQ(pages[0].title, "Article");
    EXPECT_EQ(stats.revisions, 1u);  // talk revisions never buffered

    IngestOptions all;
    all.filter = NamespaceFilter::all();
    EXPECT_EQ(read_all(doc, InputFormat::mediawiki_xml, all).size(), 2u);

    IngestOptions talk_only;
    talk_only.filter = NamespaceFilter({1});
    pages = read_all(doc, InputFormat::mediawiki_xml, talk_only);
    ASSERT_EQ(pages.size(), 1u);
    EXPECT_EQ(pages[0].namespace_id, 1);
}

TEST(XmlStream, UnknownElementsAreIgnored) {
    const auto doc = one_page(
        "<redirect title=\"X\" /><restrictions>edit=sysop</restrictions>" +
        revision(1, "2009-01-01T00:00:00Z", "<username>u</username><id>5</id>",
                 "<text xml:space=\"preserve\">body</text>",
                 "<parentid>0</parentid><minor/><origin>1</origin><model>wikitext</model>"
                 "<format>text/x-wiki</format><future><nested>x</nested></future>"));
    const auto pages = read_all(doc, InputFormat::mediawiki_xml);
    ASSERT_EQ(pages.size(), 1u);
    ASSERT_EQ(pages[0].revisions.size(), 1u);
    EXPECT_EQ(pages[0].revisions[0].text, "body");
    EXPECT_EQ(pages[0].revisions[0].text_bytes, 4u);
}

TEST(XmlStream, SuppressedTextFallsBackToDumpHashForThePage) {
    const auto doc = one_page(
        revision(1, "2009-01-01T00:00:00Z", "<username>a</username>", "<text>A</text>",
                 "<sha1>hashA</sha1>") +
        revision(2, "2009-01-02T00:00:00Z", "<username>b</username>",
                 "<text bytes=\"9\" deleted=\"deleted\" />", "<sha1>hashB</sha1>") +
        revision(3, "2009-01-03T00:00:00Z", "<username>a</username>", "<text>A</text>",
                 "<sha1>hashA</sha1>"));
    const auto pages = read_all(doc, InputFormat::mediawiki_xml);
    ASSERT_EQ(pages.size(), 1u);
    const auto& r = pages[0].revisions;
    EXPECT_EQ(r[0].content_fingerprint, fingerprint_from_dump_hash("hashA"));
    EXPECT_EQ(r[1].content_fingerprint, fingerprint_from_dump_hash("hashB"));
    EXPECT_EQ(r[0].content_fingerprint, r[2].content_fingerprint);
    EXPECT_FALSE(r[1].text.has_value());
    EXPECT_EQ(r[1].text_bytes, 9u);
}

TEST(XmlStream, RevisionWithNeitherTextNorHashIsKeptButNotMatchable) {
    const auto doc = one_page(
        revision(1, "2009-01-01T00:00:00Z", "<username>a</username>", "<text>A</text>") +
        revision(2, "2009-01-02T00:00:00Z", "<username>b</username>", "<text deleted=\"deleted\" />"));
    const auto pages = read_all(doc, InputFormat::mediawiki_xml);
    ASSERT_EQ(pages[0].revisions.size(), 2u);
    EXPECT_FALSE(pages[0].revisions[1].matchable());
    // no dump hash for rev 1 either, and local digests are not mixed in
    EXPECT_FALSE(pages[0].revisions[0].matchable());

    IngestOptions strict;
    strict.strict_fingerprints = true;
    EXPECT_THROW(read_all(doc, InputFormat::mediawiki_xml, strict), FingerprintUnavailable);
}

TEST(XmlStream, DeletedContributorAndComment) {
    const auto doc = one_page(
        revision(1, "2009-01-01T00:00:00Z", "", "<text>A</text>") +
        "<revision><id>2</id><timestamp>2009-01-02T00:00:00Z</timestamp>"
        "<contributor deleted=\"deleted\" /><comment deleted=\"deleted\" /><text>B</text></revision>");
    const auto pages = read_all(doc, InputFormat::mediawiki_xml);
    const auto& r = pages[0].revisions;
    EXPECT_EQ(r[0].editor.kind, EditorKind::unknown);
    EXPECT_EQ(r[1].editor.kind, EditorKind::unknown);
    EXPECT_NE(r[0].editor, r[1].editor);
    EXPECT_TRUE(r[1].comment.empty());
}

TEST(XmlStream, RetainTextOffDropsTextsButKeepsFingerprints) {
    IngestOptions opts;
    opts.retain_text = false;
    const auto doc = to_mediawiki_xml({make_history({"A", "B"}, {"x", "y"})});
    const auto pages = read_all(doc, InputFormat::mediawiki_xml, opts);
    EXPECT_FALSE(pages[0].revisions[0].text.has_value());
    EXPECT_EQ(pages[0].revisions[0].content_fingerprint, fingerprint("A"));
    EXPECT_EQ(pages[0].revisions[1].text_bytes, 1u);
}

TEST(XmlStream, MalformedXmlReportsOffsetAndPage) {
    const std::string doc = "<mediawiki><page><title>Broken</title><ns>0</ns><id>1</id>"
                            "<revision><id>1</id></page></mediawiki>";
    try {
        read_all(doc, InputFormat::mediawiki_xml);
        FAIL() << "expected MalformedInput";
    } catch (const MalformedInput& e) {
        EXPECT_EQ(e.offset(), doc.find("</page>") + 2);
        EXPECT_EQ(e.page_context(), "Broken");
    }
}

TEST(XmlStream, BadFieldValuesAreMalformed) {
    EXPECT_THROW(read_all(one_page(revision(1, "not a time", "<ip>1.1.1.1</ip>", "<text/>")),
                          InputFormat::mediawiki_xml),
                 MalformedInput);
    EXPECT_THROW(read_all(one_page(revision(1, "2009-01-01T00:00:00Z",
                                            "<username>a</username><ip>1.1.1.1</ip>", "<text/>")),
                          InputFormat::mediawiki_xml),
                 MalformedInput);
    EXPECT_THROW(read_all("", InputFormat::mediawiki_xml), MalformedInput);
}

TEST(XmlStream, EmptyTextIsPresentNotSuppressed) {
    const auto doc = one_page(revision(1, "2009-01-01T00:00:00Z", "<username>a</username>",
                                       "<text bytes=\"0\" xml:space=\"preserve\" />"));
    const auto pages = read_all(doc, InputFormat::mediawiki_xml);
    EXPECT_EQ(pages[0].revisions[0].text, "");
    EXPECT_EQ(pages[0].revisions[0].content_fingerprint, fingerprint(""));
}

TEST(XmlStream, BufferHoldsOnePageAtATime) {
    std::vector<PageHistory> pages;
    std::mt19937_64 rng(5);
    std::size_t largest = 0;
    for (int p = 0; p < 60; ++p) {
        auto page = random_history(rng, 30, 4, 5, p + 1);
        largest = std::max(largest, page.revisions.size());
        pages.push_back(page);
    }
    BufferStats stats;
    const auto doc = to_mediawiki_xml(pages);
    const auto read = read_all(doc, InputFormat::mediawiki_xml, {}, &stats);
    EXPECT_EQ(read.size(), pages.size());
    EXPECT_EQ(stats.largest_page, largest);
    EXPECT_LE(stats.peak, largest);
    EXPECT_EQ(stats.current, 0u);
}

// --- revlog-jsonl ---

TEST(JsonlStream, GroupsConsecutiveLinesByPage) {
    auto a = make_history({"A", "B", "A"}, {"e1", "e2", "e1"}, {"", "", "rv"}, 1, "Alpha");
    auto b = make_history({"x"}, {"e3"}, {}, 2, "Beta");
    b.revisions[0].editor = EditorId::anonymous("1.2.3.4");
    const auto pages = read_all(to_revlog_jsonl({a, b}), InputFormat::revlog_jsonl);
    ASSERT_EQ(pages.size(), 2u);
    std::string why;
    EXPECT_TRUE(same_page(pages[0], a, &why)) << why;
    EXPECT_TRUE(same_page(pages[1], b, &why)) << why;
}

TEST(JsonlStream, EmptyInputAndBlankLines) {
    EXPECT_TRUE(read_all("", InputFormat::revlog_jsonl).empty());
    EXPECT_TRUE(read_all("\n\n", InputFormat::revlog_jsonl).empty());
}

TEST(JsonlStream, SortsOutOfOrderRevisions) {
    const std::string doc =
        R"({"page_id":1,"title":"P","ns":0,"rev_id":2,"timestamp":"2009-01-02T00:00:00Z","editor":{"kind":"registered","name":"b"},"comment":"","text":"B"})"
        "\n"
        R"({"page_id":1,"title":"P","ns":0,"rev_id":1,"timestamp":"2009-01-01T00:00:00Z","editor":{"kind":"unknown","name":null},"comment":null,"text":"A"})"
        "\n";
    const auto pages = read_all(doc, InputFormat::revlog_jsonl);
    ASSERT_EQ(pages[0].revisions.size(), 2u);
    EXPECT_EQ(pages[0].revisions[0].rev_id, 1);
    EXPECT_EQ(pages[0].revisions[0].ordinal, 0u);
    EXPECT_EQ(pages[0].revisions[0].editor.kind, EditorKind::unknown);
    EXPECT_EQ(pages[0].revisions[1].ordinal, 1u);
}

TEST(JsonlStream, ReappearingPageIsMalformed) {
    auto a = make_history({"A"}, {"e1"}, {}, 1, "Alpha");
    auto b = make_history({"B"}, {"e2"}, {}, 2, "Beta");
    const auto doc = to_revlog_jsonl({a, b, a});
    EXPECT_THROW(read_all(doc, InputFormat::revlog_jsonl), MalformedInput);
}

TEST(JsonlStream, BadLineReportsOffset) {
    const std::string good =
        R"({"page_id":1,"title":"P","ns":0,"rev_id":1,"timestamp":"2009-01-01T00:00:00Z","editor":{"kind":"registered","name":"a"},"comment":"","text":"A"})"
        "\n";
    try {
        read_all(good + "{not json}\n", InputFormat::revlog_jsonl);
        FAIL();
    } catch (const MalformedInput& e) {
        EXPECT_EQ(e.offset(), good.size());
    }
    EXPECT_THROW(read_all(R"({"page_id":1,"title":"P","ns":0,"rev_id":1,"timestamp":"bad","editor":{"kind":"registered","name":"a"}})",
                          InputFormat::revlog_jsonl),
                 MalformedInput);
    EXPECT_THROW(read_all(R"({"page_id":1,"title":"P","ns":0,"rev_id":1,"timestamp":"2009-01-01T00:00:00Z","editor":{"kind":"alien","name":"a"}})",
                          InputFormat::revlog_jsonl),
                 MalformedInput);
}

TEST(JsonlStream, MatchesXmlReaderOnSameCorpus) {
    std::mt19937_64 rng(11);
    std::vector<PageHistory> pages;
    for (int p = 0; p < 30; ++p) {
        auto page = random_history(rng, 12, 4, 3, p + 1);
        // a page without revisions has no lines in revlog-jsonl
        if (!page.revisions.empty()) pages.push_back(page);
    }
    const auto from_xml = read_all(to_mediawiki_xml(pages), InputFormat::mediawiki_xml);
    const auto from_jsonl = read_all(to_revlog_jsonl(pages), InputFormat::revlog_jsonl);
    ASSERT_EQ(from_xml.size(), from_jsonl.size());
    for (std::size_t p = 0; p < pages.size(); ++p) {
        std::string why;
        EXPECT_TRUE(same_page(from_xml[p], from_jsonl[p], &why)) << why;
        EXPECT_TRUE(same_page(from_xml[p], pages[p], &why)) << why;
    }
}

TEST(JsonlStream, BufferHoldsOnePageAtATime) {
    std::mt19937_64 rng(9);
    std::vector<PageHistory> pages;
    std::size_t largest = 0;
    for (int p = 0; p < 50; ++p) {
        pages.push_back(random_history(rng, 25, 4, 3, p + 1));
        largest = std::max(largest, pages.back().revisions.size());
    }
    BufferStats stats;
    read_all(to_revlog_jsonl(pages), InputFormat::revlog_jsonl, {}, &stats);
    EXPECT_LE(stats.peak, largest);
    EXPECT_EQ(stats.largest_page, largest);
}
