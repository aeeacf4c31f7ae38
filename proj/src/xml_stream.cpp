#include <expat.h>

#include <charconv>
#include <cstring>
#include <exception>
#include <vector>

#include "editwar/error.hpp"
#include "page_builder.hpp"
#include "stream_readers.hpp"

namespace editwar::detail {

namespace {

constexpr std::size_t chunk_size = 1 << 20;

enum class Field {
    none,
    page_title,
    page_ns,
    page_id,
    rev_id,
    rev_timestamp,
    rev_username,
    rev_ip,
    rev_comment,
    rev_text,
    rev_sha1,
};

bool attr_is(const XML_Char** attrs, const char* name, const char* value) {
    for (; attrs && *attrs; attrs += 2) {
        if (std::strcmp(attrs[0], name) == 0) return value == nullptr || std::strcmp(attrs[1], value) == 0;
    }
    return false;
}

const char* attr_value(const XML_Char** attrs, const char* name) {
    for (; attrs && *attrs; attrs += 2) {
        if (std::strcmp(attrs[0], name) == 0) return attrs[1];
    }
    return nullptr;
}

template <typename Int>
bool parse_int(const std::string& s, Int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

class XmlPageStream final : public PageStream {
public:
    XmlPageStream(std::istream& in, IngestOptions options)
        : in_(in), options_(std::move(options)), parser_(XML_ParserCreate(nullptr)) {
        XML_SetUserData(parser_, this);
        XML_SetElementHandler(parser_, &XmlPageStream::on_start, &XmlPageStream::on_end);
        XML_SetCharacterDataHandler(parser_, &XmlPageStream::on_text);
    }

    ~XmlPageStream() override { XML_ParserFree(parser_); }

    XmlPageStream(const XmlPageStream&) = delete;
    XmlPageStream& operator=(const XmlPageStream&) = delete;

    std::optional<PageHistory> next() override {
        while (true) {
            if (ready_) {
                PageHistory page = std::move(*ready_);
                ready_.reset();
                stats_.release(page.revisions.size());
                return page;
            }
            if (finished_) return std::nullopt;

            XML_ParsingStatus status;
            XML_GetParsingStatus(parser_, &status);
            XML_Status rc;
            if (status.parsing == XML_SUSPENDED) {
                rc = XML_ResumeParser(parser_);
            } else {
                void* buf = XML_GetBuffer(parser_, static_cast<int>(chunk_size));
                if (buf == nullptr) throw MalformedInput("out of memory", stats_.bytes, title_);
                in_.read(static_cast<char*>(buf), static_cast<std::streamsize>(chunk_size));
                const auto n = static_cast<std::size_t>(in_.gcount());
                stats_.bytes += n;
                const bool final = n < chunk_size;
                rc = XML_ParseBuffer(parser_, static_cast<int>(n), final ? XML_TRUE : XML_FALSE);
            }

            if (rc == XML_STATUS_ERROR) {
                if (pending_error_) std::rethrow_exception(pending_error_);
                throw MalformedInput(XML_ErrorString(XML_GetErrorCode(parser_)),
                                     static_cast<std::uint64_t>(XML_GetCurrentByteIndex(parser_)),
                                     title_);
            }
            XML_GetParsingStatus(parser_, &status);
            if (status.parsing == XML_FINISHED) finished_ = true;
        }
    }

private:
    std::uint64_t offset() const { return static_cast<std::uint64_t>(XML_GetCurrentByteIndex(parser_)); }

    void fail(const std::string& what) {
        if (!pending_error_) {
            pending_error_ = std::make_exception_ptr(MalformedInput(what, offset(), title_));
        }
        XML_StopParser(parser_, XML_FALSE);
    }

    void start(const char* name, const XML_Char** attrs) {
        field_ = Field::none;
        if (!in_page_) {
            if (std::strcmp(name, "page") == 0) {
                in_page_ = true;
                header_ = PageHistory{};
                title_.clear();
                pending_.clear();
            }
            return;
        }
        if (skip_depth_ > 0) {
            ++skip_depth_;
            return;
        }
        if (in_contributor_) {
            if (std::strcmp(name, "username") == 0) {
                field_ = Field::rev_username;
            } else if (std::strcmp(name, "ip") == 0) {
                field_ = Field::rev_ip;
            }
            // contributor <id> is not needed: usernames identify editors.
        } else if (in_revision_) {
            if (std::strcmp(name, "id") == 0) {
                field_ = Field::rev_id;
            } else if (std::strcmp(name, "timestamp") == 0) {
                field_ = Field::rev_timestamp;
            } else if (std::strcmp(name, "contributor") == 0) {
                in_contributor_ = true;
                contributor_deleted_ = attr_is(attrs, "deleted", nullptr);
                username_.reset();
                ip_.reset();
            } else if (std::strcmp(name, "comment") == 0) {
                if (!attr_is(attrs, "deleted", nullptr)) field_ = Field::rev_comment;
            } else if (std::strcmp(name, "text") == 0) {
                if (const char* bytes = attr_value(attrs, "bytes")) {
                    std::string b(bytes);
                    parse_int(b, declared_bytes_);
                }
                if (!attr_is(attrs, "deleted", nullptr)) {
                    field_ = Field::rev_text;
                    rev_.record.text.emplace();
                }
            } else if (std::strcmp(name, "sha1") == 0) {
                field_ = Field::rev_sha1;
            } else {
                skip_depth_ = 1;
            }
        } else {
            if (std::strcmp(name, "title") == 0) {
                field_ = Field::page_title;
            } else if (std::strcmp(name, "ns") == 0) {
                field_ = Field::page_ns;
            } else if (std::strcmp(name, "id") == 0) {
                field_ = Field::page_id;
            } else if (std::strcmp(name, "revision") == 0) {
                in_revision_ = true;
                rev_ = PendingRevision{};
                declared_bytes_ = 0;
            } else {
                skip_depth_ = 1;
            }
        }
        accum_.clear();
    }

    void end(const char* name) {
        if (!in_page_) return;
        if (skip_depth_ > 0) {
            --skip_depth_;
            return;
        }
        const Field field = field_;
        field_ = Field::none;
        switch (field) {
            case Field::page_title:
                header_.title = accum_;
                title_ = accum_;
                return;
            case Field::page_ns:
                if (!parse_int(accum_, header_.namespace_id)) fail("bad <ns> value '" + accum_ + "'");
                return;
            case Field::page_id:
                if (!parse_int(accum_, header_.page_id)) return fail("bad page <id> '" + accum_ + "'");
                return;
            case Field::rev_id:
                if (!parse_int(accum_, rev_.record.rev_id)) return fail("bad revision <id> '" + accum_ + "'");
                return;
            case Field::rev_timestamp: {
                auto t = parse_iso8601(accum_);
                if (!t) return fail("bad <timestamp> '" + accum_ + "'");
                rev_.record.timestamp = *t;
                return;
            }
            case Field::rev_username: username_ = accum_; return;
            case Field::rev_ip: ip_ = accum_; return;
            case Field::rev_comment: rev_.record.comment = accum_; return;
            case Field::rev_text: rev_.record.text = std::move(accum_); accum_.clear(); return;
            case Field::rev_sha1: rev_.dump_hash = accum_; return;
            case Field::none: break;
        }

        if (in_contributor_ && std::strcmp(name, "contributor") == 0) {
            in_contributor_ = false;
            try {
                rev_.record.editor = parse_editor(username_, ip_, contributor_deleted_);
            } catch (const MalformedInput& e) {
                fail(e.what());
            }
        } else if (in_revision_ && !in_contributor_ && std::strcmp(name, "revision") == 0) {
            in_revision_ = false;
            if (!options_.filter.accepts(header_.namespace_id)) return;
            RevisionRecord& rec = rev_.record;
            rec.page_id = header_.page_id;
            rec.text_bytes = rec.text ? rec.text->size() : declared_bytes_;
            pending_.push_back(std::move(rev_));
            stats_.add();
        } else if (!in_revision_ && std::strcmp(name, "page") == 0) {
            in_page_ = false;
            if (!options_.filter.accepts(header_.namespace_id)) return;
            try {
                ready_ = finalize_page(std::move(header_), std::move(pending_), options_, offset());
            } catch (...) {
                pending_error_ = std::current_exception();
                XML_StopParser(parser_, XML_FALSE);
                return;
            }
            pending_.clear();
            XML_StopParser(parser_, XML_TRUE);
        }
    }

    void text(const XML_Char* s, int len) {
        if (field_ != Field::none) accum_.append(s, static_cast<std::size_t>(len));
    }

    static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
        static_cast<XmlPageStream*>(self)->start(name, attrs);
    }
    static void XMLCALL on_end(void* self, const XML_Char* name) {
        static_cast<XmlPageStream*>(self)->end(name);
    }
    static void XMLCALL on_text(void* self, const XML_Char* s, int len) {
        static_cast<XmlPageStream*>(self)->text(s, len);
    }

    std::istream& in_;
    IngestOptions options_;
    XML_Parser parser_;

    bool finished_ = false;
    std::exception_ptr pending_error_;
    std::optional<PageHistory> ready_;

    bool in_page_ = false;
    bool in_revision_ = false;
    bool in_contributor_ = false;
    bool contributor_deleted_ = false;
    int skip_depth_ = 0;
    Field field_ = Field::none;
    std::string accum_;
    std::string title_;
    std::uint64_t declared_bytes_ = 0;

    PageHistory header_;
    PendingRevision rev_;
    std::optional<std::string> username_;
    std::optional<std::string> ip_;
    std::vector<PendingRevision> pending_;
};

}  // namespace

std::unique_ptr<PageStream> make_xml_stream(std::istream& in, IngestOptions options) {
    return std::make_unique<XmlPageStream>(in, std::move(options));
}

}  // namespace editwar::detail
