#include "snipassist/text.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <utility>

namespace snipassist::text {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kNamedEntities{{
    {"lt", "<"},
    {"gt", ">"},
    {"amp", "&"},
    {"quot", "\""},
    {"apos", "'"},
    {"nbsp", "\xC2\xA0"},
    {"#39", "'"},
}};

}  // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    while (b < s.size() && is_space(s[b])) ++b;
    std::size_t e = s.size();
    while (e > b && is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::string_view trim_right(std::string_view s) {
    std::size_t e = s.size();
    while (e > 0 && is_space(s[e - 1])) --e;
    return s.substr(0, e);
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

std::vector<std::string_view> split_whitespace(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        std::size_t start = i;
        while (i < s.size() && !is_space(s[i])) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

std::vector<std::string_view> split(std::string_view s, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        auto semi = s.find(';', i + 1);
        // Entity names are short; a far-away ';' means this '&' is literal.
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        auto name = s.substr(i + 1, semi - i - 1);
        bool decoded = false;
        for (const auto& [key, value] : kNamedEntities) {
            if (name == key) {
                out.append(value);
                decoded = true;
                break;
            }
        }
        if (!decoded && name.size() >= 2 && name[0] == '#') {
            std::uint32_t cp = 0;
            std::from_chars_result r{};
            if (name[1] == 'x' || name[1] == 'X') {
                r = std::from_chars(name.data() + 2, name.data() + name.size(), cp, 16);
            } else {
                r = std::from_chars(name.data() + 1, name.data() + name.size(), cp, 10);
            }
            if (r.ec == std::errc{} && r.ptr == name.data() + name.size() && cp > 0 && cp <= 0x10FFFF) {
                append_utf8(out, static_cast<char32_t>(cp));
                decoded = true;
            }
        }
        if (decoded) {
            i = semi + 1;
        } else {
            out.push_back(s[i++]);
        }
    }
    return out;
}

std::string strip_tags(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '<') {
            auto close = s.find('>', i + 1);
            if (close == std::string_view::npos) {
                out.append(s.substr(i));
                break;
            }
            i = close + 1;
            continue;
        }
        out.push_back(s[i++]);
    }
    return out;
}

std::size_t utf8_length(std::string_view s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
        return !is_continuation(static_cast<unsigned char>(c));
    }));
}

std::size_t utf8_byte_offset(std::string_view s, std::size_t char_offset) {
    std::size_t chars = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (is_continuation(static_cast<unsigned char>(s[i]))) continue;
        if (chars == char_offset) return i;
        ++chars;
    }
    return chars == char_offset ? s.size() : std::string_view::npos;
}

std::size_t utf8_char_offset(std::string_view s, std::size_t byte_offset) {
    return utf8_length(s.substr(0, std::min(byte_offset, s.size())));
}

}  // namespace snipassist::text
