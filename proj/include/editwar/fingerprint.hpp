#pragma once

#include <string_view>

#include "editwar/revision.hpp"

namespace editwar {

/// SHA-256 of the exact bytes, no normalization. Always 32 bytes long.
Fingerprint fingerprint(std::string_view text);

/// Fingerprint built from a dump-provided content hash (the `<sha1>` element).
/// Adopted verbatim, prefixed so it can never collide with a local digest.
Fingerprint fingerprint_from_dump_hash(std::string_view dump_hash);

std::string to_hex(std::string_view bytes);

}  // namespace editwar
