#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace snipassist::text {

/// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);
std::string_view trim_right(std::string_view s);

bool is_blank(std::string_view s);

/// Splits on runs of ASCII whitespace; never yields empty pieces.
std::vector<std::string_view> split_whitespace(std::string_view s);

/// Splits on a single delimiter, keeping empty fields.
std::vector<std::string_view> split(std::string_view s, char delim);

/// Decodes named (`&lt;` `&gt;` `&amp;` `&quot;` `&apos;` `&#39;` `&nbsp;`) and
/// numeric (`&#NN;`, `&#xHH;`) character references. Unknown references are
/// left verbatim.
std::string decode_entities(std::string_view s);

/// Removes every `<...>` tag. Text between tags is kept as is.
std::string strip_tags(std::string_view s);

// UTF-8 helpers. Document offsets in the assist API count code points.

/// Number of code points in a UTF-8 string. Invalid lead bytes count as one.
std::size_t utf8_length(std::string_view s);

/// Byte offset of the code point at `char_offset`, or npos if past the end.
std::size_t utf8_byte_offset(std::string_view s, std::size_t char_offset);

/// Byte offset -> code point offset.
std::size_t utf8_char_offset(std::string_view s, std::size_t byte_offset);

/// Appends the UTF-8 encoding of `cp` to `out`.
void append_utf8(std::string& out, char32_t cp);

}  // namespace snipassist::text
