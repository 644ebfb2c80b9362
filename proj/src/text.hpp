#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace frameforge::text {

/// True when `s` is valid UTF-8 made only of characters XML 1.0 can carry.
/// With `allow_line_breaks` false, tab/LF/CR are rejected as well.
bool is_xml_text(std::string_view s, bool allow_line_breaks);

/// xs:int lexical form: optional surrounding whitespace, optional sign, digits.
std::optional<std::int32_t> parse_int32(std::string_view s);

std::string trim(std::string_view s);

/// Escapes for element content. Line breaks and tabs become character
/// references so that every field stays on one line.
std::string xml_escape_text(std::string_view s);

/// Escapes for double-quoted attribute values.
std::string xml_escape_attribute(std::string_view s);

}  // namespace frameforge::text
