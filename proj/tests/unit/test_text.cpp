#include <gtest/gtest.h>

#include "snipassist/text.hpp"

using namespace snipassist;

TEST(Text, LowerTrimSplit) {
    EXPECT_EQ(text::to_lower("ArrayList<Integer> É"), "arraylist<integer> É");
    EXPECT_EQ(text::trim("  a b \t\n"), "a b");
    EXPECT_EQ(text::trim_right("  a \n"), "  a");
    EXPECT_TRUE(text::is_blank(" \t\r\n"));
    EXPECT_FALSE(text::is_blank(" x "));
    auto w = text::split_whitespace("  split  string\tby ");
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(w[2], "by");
    auto f = text::split("a\t\tb\t", '\t');
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[1], "");
    EXPECT_EQ(f[3], "");
}

TEST(Text, Entities) {
    EXPECT_EQ(text::decode_entities("a &lt; b &amp;&amp; c &gt; d"), "a < b && c > d");
    EXPECT_EQ(text::decode_entities("&quot;x&quot; &#39;y&#39; &apos;"), "\"x\" 'y' '");
    EXPECT_EQ(text::decode_entities("&#65;&#x42;&#x263A;"), "AB\xE2\x98\xBA");
    EXPECT_EQ(text::decode_entities("&bogus; & &#;"), "&bogus; & &#;");
    EXPECT_EQ(text::decode_entities("&amp;lt;"), "&lt;");
}

TEST(Text, StripTags) { EXPECT_EQ(text::strip_tags("<b>bold</b> and <i>it</i>"), "bold and it"); }

TEST(Text, Utf8Offsets) {
    std::string s = "aé日b";  // 1 + 2 + 3 + 1 bytes
    EXPECT_EQ(text::utf8_length(s), 4u);
    EXPECT_EQ(text::utf8_byte_offset(s, 0), 0u);
    EXPECT_EQ(text::utf8_byte_offset(s, 2), 3u);
    EXPECT_EQ(text::utf8_byte_offset(s, 3), 6u);
    EXPECT_EQ(text::utf8_byte_offset(s, 5), std::string::npos);
    EXPECT_EQ(text::utf8_char_offset(s, 6), 3u);
    std::string out;
    text::append_utf8(out, U'日');
    EXPECT_EQ(out, "日");
}
