#include "editwar/tags.hpp"

#include <algorithm>
#include <fstream>

#include "editwar/error.hpp"

namespace editwar {

namespace {

constexpr bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

constexpr char lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), lower);
    return out;
}

bool iequal_prefix(std::string_view text, std::size_t pos, std::string_view lowered_name) {
    if (text.size() - pos < lowered_name.size()) return false;
    for (std::size_t k = 0; k < lowered_name.size(); ++k) {
        if (lower(text[pos + k]) != lowered_name[k]) return false;
    }
    return true;
}

}  // namespace

TagConfig::TagConfig(std::string language, std::vector<std::string> templates)
    : language_(std::move(language)) {
    for (const auto& raw : templates) {
        const auto name = trim(raw);
        if (name.empty()) continue;
        if (name.find("{{") != std::string_view::npos || name.find("}}") != std::string_view::npos)
            throw ConfigError("template name must not contain braces: '" + raw + "'");
        templates_.push_back(to_lower(name));
    }
    if (templates_.empty()) throw ConfigError("tag configuration has no template names");
}

TagConfig TagConfig::load(const std::filesystem::path& file, std::string language) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read tag list from " + file.string());
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        names.emplace_back(t);
    }
    return TagConfig(std::move(language), std::move(names));
}

bool TagConfig::tagged(std::string_view text) const {
    std::size_t pos = 0;
    while ((pos = text.find("{{", pos)) != std::string_view::npos) {
        pos += 2;
        std::size_t start = pos;
        while (start < text.size() && is_space(text[start])) ++start;
        for (const auto& name : templates_) {
            if (!iequal_prefix(text, start, name)) continue;
            std::size_t after = start + name.size();
            while (after < text.size() && is_space(text[after])) ++after;
            if (after < text.size() && (text[after] == '|' || text[after] == '}')) return true;
        }
    }
    return false;
}

std::int64_t count_tags(const PageHistory& history, const TagConfig& config) {
    std::int64_t tc = 0;
    for (const auto& rev : history.revisions) {
        if (!rev.text) {
            throw TextsUnavailable("revision " + std::to_string(rev.rev_id) + " of '" +
                                   history.title + "' has no text; tag count is undefined");
        }
        if (config.tagged(*rev.text)) ++tc;
    }
    return tc;
}

}  // namespace editwar
