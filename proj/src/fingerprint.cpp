#include "editwar/fingerprint.hpp"

#include <openssl/sha.h>

namespace editwar {

Fingerprint fingerprint(std::string_view text) {
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
    return Fingerprint(reinterpret_cast<const char*>(digest), sizeof digest);
}

Fingerprint fingerprint_from_dump_hash(std::string_view dump_hash) {
    Fingerprint fp = "dump:";
    fp.append(dump_hash);
    return fp;
}

std::string to_hex(std::string_view bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

}  // namespace editwar
