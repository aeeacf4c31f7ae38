#include "editwar/error.hpp"

namespace editwar {

namespace {

std::string describe_malformed(const std::string& what, std::uint64_t offset,
                               const std::string& page) {
    std::string msg = "malformed input at byte " + std::to_string(offset) + ": " + what;
    if (!page.empty()) msg += " (page " + page + ")";
    return msg;
}

std::string join_titles(const std::vector<std::string>& titles) {
    std::string out = "unlabeled titles:";
    for (const auto& t : titles) out += " [" + t + "]";
    return out;
}

}  // namespace

MalformedInput::MalformedInput(const std::string& what, std::uint64_t offset,
                               std::string page_context)
    : Error(describe_malformed(what, offset, page_context)),
      offset_(offset),
      page_context_(std::move(page_context)) {}

InsufficientReports::InsufficientReports(std::size_t have, std::size_t need)
    : Error("insufficient reports: have " + std::to_string(have) + ", need " +
            std::to_string(need)) {}

UnlabeledTitles::UnlabeledTitles(std::vector<std::string> titles)
    : Error(join_titles(titles)), titles_(std::move(titles)) {}

}  // namespace editwar
