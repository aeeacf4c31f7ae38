#pragma once

#include <optional>
#include <string>
#include <vector>

#include "editwar/ingest.hpp"

namespace editwar::detail {

struct PendingRevision {
    RevisionRecord record;
    std::optional<std::string> dump_hash;
};

// Assigns fingerprints and orders the revisions of one page.
//
// A page whose revisions all carry text is fingerprinted locally. Otherwise
// every revision of the page uses the dump hash, and revisions without one
// are left non-matchable. Local and dump-provided digests are never mixed
// within a page.
PageHistory finalize_page(PageHistory header, std::vector<PendingRevision> pending,
                          const IngestOptions& options, std::uint64_t offset);

}  // namespace editwar::detail
