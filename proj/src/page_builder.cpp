#include "page_builder.hpp"

#include <algorithm>

#include "editwar/error.hpp"
#include "editwar/fingerprint.hpp"

namespace editwar::detail {

PageHistory finalize_page(PageHistory header, std::vector<PendingRevision> pending,
                          const IngestOptions& options, std::uint64_t offset) {
    const bool all_text = std::all_of(pending.begin(), pending.end(),
                                      [](const PendingRevision& p) { return p.record.text.has_value(); });

    header.revisions.reserve(pending.size());
    for (auto& p : pending) {
        RevisionRecord& rec = p.record;
        if (all_text) {
            rec.content_fingerprint = fingerprint(*rec.text);
        } else if (p.dump_hash && !p.dump_hash->empty()) {
            rec.content_fingerprint = fingerprint_from_dump_hash(*p.dump_hash);
        } else if (!rec.text && options.strict_fingerprints) {
            throw FingerprintUnavailable("revision " + std::to_string(rec.rev_id) + " of page '" +
                                         header.title + "' (byte " + std::to_string(offset) +
                                         ") has neither text nor a content hash");
        }
        if (!options.retain_text) rec.text.reset();
        header.revisions.push_back(std::move(rec));
    }
    order_revisions(header);
    return header;
}

}  // namespace editwar::detail
