#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "editwar/metrics.hpp"
#include "editwar/revision.hpp"

namespace editwar::testing {

/// Builds a page from parallel lists of texts and registered editor names.
/// Timestamps are one minute apart, rev_ids are 1-based ordinals.
PageHistory make_history(const std::vector<std::string>& texts,
                         const std::vector<std::string>& editors,
                         const std::vector<std::string>& comments = {},
                         std::int64_t page_id = 1, std::string title = "Page");

/// Random page: up to `max_revisions` revisions, texts drawn from
/// `symbols` letters, editors from `editors` names.
PageHistory random_history(std::mt19937_64& rng, std::size_t max_revisions = 12,
                           int symbols = 4, int editors = 3, std::int64_t page_id = 1);

/// Applies an injective renaming to every editor of a page.
PageHistory rename_editors(const PageHistory& page, const std::string& prefix);

std::string xml_escape(const std::string& s);

/// MediaWiki export document. With `shuffle` the revisions of every page are
/// written in a random order.
std::string to_mediawiki_xml(const std::vector<PageHistory>& pages, std::mt19937_64* shuffle = nullptr);

std::string to_revlog_jsonl(const std::vector<PageHistory>& pages);

/// History engineered to a (both, text-only, comment-only) revert split.
PageHistory revert_split_history(std::uint64_t both, std::uint64_t text_only,
                                 std::uint64_t comment_only);

/// History whose measure M is exactly `target` (0, or E * (sum - max) with the
/// construction below). Returns the page; see fixtures.cpp for the layout.
PageHistory history_with_M(std::int64_t target, std::int64_t page_id, std::string title);

ControversyReport report_with(std::string title, std::int64_t M, std::int64_t filler = 0);

}  // namespace editwar::testing
