#pragma once

#include <istream>
#include <memory>

#include "editwar/ingest.hpp"

namespace editwar::detail {

std::unique_ptr<PageStream> make_xml_stream(std::istream& in, IngestOptions options);
std::unique_ptr<PageStream> make_jsonl_stream(std::istream& in, IngestOptions options);

}  // namespace editwar::detail
