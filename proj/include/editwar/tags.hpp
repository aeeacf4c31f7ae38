#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "editwar/revision.hpp"

namespace editwar {

/// Dispute-related template names for one language.
class TagConfig {
public:
    TagConfig(std::string language, std::vector<std::string> templates);

    /// One template name per line, '#' comments. Throws ConfigError.
    static TagConfig load(const std::filesystem::path& file, std::string language = {});

    const std::string& language() const noexcept { return language_; }
    const std::vector<std::string>& templates() const noexcept { return templates_; }

    /// True if `text` contains "{{ name" for any configured name (case and
    /// surrounding whitespace ignored) followed by '|' or '}'.
    bool tagged(std::string_view text) const;

private:
    std::string language_;
    std::vector<std::string> templates_;  // lower-cased, trimmed
};

/// TC: number of revisions whose text carries at least one configured
/// template. Throws TextsUnavailable if any revision has no text.
std::int64_t count_tags(const PageHistory& history, const TagConfig& config);

}  // namespace editwar
