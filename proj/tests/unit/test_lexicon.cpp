#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "snipassist/errors.hpp"
#include "snipassist/lexicon.hpp"

using namespace snipassist;

namespace {
const Lexicon& lex() {
    static const Lexicon l = Lexicon::load_default();
    return l;
}
}  // namespace

TEST(Lexicon, DefaultListsLoad) {
    auto c = lex().counts();
    EXPECT_EQ(c.actions, 243u);
    EXPECT_GT(c.generic_objects, 0u);
    EXPECT_GT(c.lead_in_words, 0u);
    EXPECT_GT(c.irregular_forms, 0u);
    EXPECT_TRUE(lex().is_action("add"));
    EXPECT_FALSE(lex().is_action("tweak"));
    EXPECT_TRUE(lex().is_generic_object("strings"));
    EXPECT_EQ(Lexicon::determiners().count("the"), 1u);
}

TEST(Lexicon, Lemmatize) {
    const std::vector<std::pair<const char*, const char*>> cases = {
        {"returning", "return"}, {"returned", "return"}, {"sorting", "sort"},   {"sorted", "sort"},
        {"splitting", "split"},  {"written", "write"},   {"writing", "write"},  {"removed", "remove"},
        {"removing", "remove"},  {"adds", "add"},        {"copies", "copy"},    {"copied", "copy"},
        {"found", "find"},       {"Generating", "generate"}, {"add", "add"},    {"tweaking", "tweak"},
        {"clicked", "click"},    {"closed", "close"},    {"installed", "install"}, {"parsing", "parse"},
    };
    for (const auto& [form, lemma] : cases) EXPECT_EQ(lemmatize_verb(form, lex()), lemma) << form;
}

TEST(Lexicon, Singularize) {
    EXPECT_EQ(singularize("lines"), "line");
    EXPECT_EQ(singularize("classes"), "class");
    EXPECT_EQ(singularize("entries"), "entry");
    EXPECT_EQ(singularize("status"), "status");
    EXPECT_EQ(singularize("list"), "list");
}

TEST(Lexicon, WordListParsing) {
    auto dir = std::filesystem::temp_directory_path() / "snipassist_lex_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "a.txt") << "# comment\nSort\n\n sort \nadd\n";
    }
    auto words = read_word_list(dir / "a.txt");
    EXPECT_EQ(words, (std::vector<std::string>{"sort", "add"}));
    EXPECT_THROW(read_word_list(dir / "missing.txt"), IoError);
    std::filesystem::remove_all(dir);
}
