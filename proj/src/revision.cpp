#include "editwar/revision.hpp"

#include <algorithm>
#include <atomic>

namespace editwar {

namespace {
std::atomic<std::uint64_t> next_unknown_serial{1};
}

const char* to_string(EditorKind kind) {
    switch (kind) {
        case EditorKind::registered: return "registered";
        case EditorKind::anonymous: return "anonymous";
        case EditorKind::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<EditorKind> editor_kind_from_string(std::string_view s) {
    if (s == "registered") return EditorKind::registered;
    if (s == "anonymous") return EditorKind::anonymous;
    if (s == "unknown") return EditorKind::unknown;
    return std::nullopt;
}

EditorId EditorId::registered(std::string name) {
    return {EditorKind::registered, std::move(name), 0};
}

EditorId EditorId::anonymous(std::string ip) {
    return {EditorKind::anonymous, std::move(ip), 0};
}

EditorId EditorId::unknown() {
    return {EditorKind::unknown, {}, next_unknown_serial.fetch_add(1, std::memory_order_relaxed)};
}

std::string EditorId::canonical() const {
    if (kind == EditorKind::unknown) return "unknown:#" + std::to_string(serial);
    return std::string(to_string(kind)) + ":" + name;
}

std::size_t EditorIdHash::operator()(const EditorId& e) const noexcept {
    std::size_t h = std::hash<std::string>{}(e.name);
    h ^= std::hash<std::uint64_t>{}(e.serial) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(e.kind);
}

void order_revisions(PageHistory& page) {
    std::stable_sort(page.revisions.begin(), page.revisions.end(),
                     [](const RevisionRecord& a, const RevisionRecord& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.rev_id < b.rev_id;
                     });
    for (std::size_t i = 0; i < page.revisions.size(); ++i) page.revisions[i].ordinal = i;
}

}  // namespace editwar
