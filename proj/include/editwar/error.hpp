#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace editwar {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that does not conform to the declared format. `offset` is the byte
// offset into the stream where the problem was noticed.
class MalformedInput : public Error {
public:
    MalformedInput(const std::string& what, std::uint64_t offset, std::string page_context = {});

    std::uint64_t offset() const noexcept { return offset_; }
    const std::string& page_context() const noexcept { return page_context_; }

private:
    std::uint64_t offset_;
    std::string page_context_;
};

// A revision carries neither text nor a dump-provided hash and the reader was
// asked to be strict about it.
class FingerprintUnavailable : public Error {
public:
    using Error::Error;
};

// Tag counting needs full revision texts.
class TextsUnavailable : public Error {
public:
    using Error::Error;
};

// Revert events mention an editor that is missing from the edit counts.
class UnknownEditor : public Error {
public:
    using Error::Error;
};

class InsufficientReports : public Error {
public:
    InsufficientReports(std::size_t have, std::size_t need);
};

class UnlabeledTitles : public Error {
public:
    explicit UnlabeledTitles(std::vector<std::string> titles);
    const std::vector<std::string>& titles() const noexcept { return titles_; }

private:
    std::vector<std::string> titles_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace editwar
