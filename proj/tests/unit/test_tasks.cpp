#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "snipassist/corpus.hpp"
#include "snipassist/errors.hpp"
#include "snipassist/lexicon.hpp"
#include "snipassist/synthetic.hpp"
#include "snipassist/tagger.hpp"
#include "snipassist/tasks.hpp"

using namespace snipassist;

namespace {

const Lexicon& lex() {
    static const Lexicon l = Lexicon::load_default();
    return l;
}

std::vector<std::string> texts(std::string_view title) {
    std::vector<std::string> out;
    for (const auto& t : extract_tasks(title, lex())) out.push_back(t.text);
    return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

// Ten titles with hand-derived task sets (ids 101..110).
const std::vector<std::pair<PostId, std::string>> kTitles = {
    {101, "Best strategy to add lines of text to a text file"},
    {102, "How to generate random integers within a specific range in Java?"},
    {103, "How do I generate random integers in Java?"},
    {104, "Returning an iterator from a method"},
    {105, "Do not return null from this method"},
    {106, "Split string by whitespaces in Java"},
    {107, "Sorting ArrayList<Integer> quickly"},
    {108, "Convert InputStream to String"},
    {109, "JFrame is closed when button clicked"},
    {110, "Tweaking a string in Java"},
};

std::string dump_of(const std::vector<std::pair<PostId, std::string>>& titles) {
    std::string xml = "<posts>\n";
    for (const auto& [id, title] : titles) {
        std::string esc;
        for (char c : title) {
            if (c == '<') esc += "&lt;";
            else if (c == '>') esc += "&gt;";
            else esc += c;
        }
        xml += "<row Id=\"" + std::to_string(id) + "\" PostTypeId=\"1\" Score=\"1\" Title=\"" + esc +
               "\" Tags=\"&lt;java&gt;\" />\n";
    }
    return xml + "</posts>\n";
}

}  // namespace

TEST(ExtractTasks, BestStrategyTitleYieldsAddLinesToTextFile) {
    auto t = texts("Best strategy to add lines of text to a text file");
    EXPECT_TRUE(contains(t, "add lines to text file"));
}

TEST(ExtractTasks, BestStrategyTitleFullSet) {
    auto t = texts("Best strategy to add lines of text to a text file");
    std::vector<std::string> expected = {"add lines", "add lines of text", "add lines to text file"};
    EXPECT_EQ(t, expected);
}

TEST(ExtractTasks, EmptyAndTaskFreeTitles) {
    EXPECT_TRUE(texts("").empty());
    EXPECT_TRUE(texts("   ").empty());
    EXPECT_TRUE(texts("Java").empty());
    EXPECT_TRUE(texts("What is a NullPointerException?").empty());
}

TEST(ExtractTasks, NegatedTasksAreDropped) {
    EXPECT_TRUE(texts("Do not return null from this method").empty());
    EXPECT_TRUE(texts("Why doesn't my loop sort the list").empty());
    EXPECT_TRUE(texts("Sort list without using loops").size() >= 1);
    EXPECT_FALSE(contains(texts("Sort list without using loops"), "use loops"));
}

TEST(ExtractTasks, DeterminersAreRemovedFromObjects) {
    auto t = texts("How to sort the list");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0], "sort list");
}

TEST(ExtractTasks, CodeTokensSurviveLowercased) {
    auto t = texts("Sorting ArrayList<Integer> quickly");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0], "sort arraylist<integer>");
}

TEST(ExtractTasks, PassiveRewrite) {
    auto t = texts("JFrame is closed when button clicked");
    EXPECT_EQ(t, (std::vector<std::string>{"close jframe", "click button"}));
}

TEST(ExtractTasks, GenericObjectRescuesUnknownVerb) {
    // "tweak" is not in the action list but "string" is a generic object.
    auto t = texts("Tweaking a string in Java");
    EXPECT_EQ(t, (std::vector<std::string>{"tweak string", "tweak string in java"}));
}

TEST(ExtractTasks, UnknownVerbAndObjectIsFiltered) {
    EXPECT_TRUE(texts("Frobnicating the widget").empty());
}

// Every voice/gerund form of a verb-object pair maps to one task text.
TEST(ExtractTasks, VoiceTable) {
    const std::vector<std::vector<std::string>> table = {
        {"return iterator", "returning an iterator", "return iterator", "iterator returned", "iterator is returned"},
        {"sort list", "sorting a list", "sort list", "list sorted", "list is sorted"},
        {"split string", "splitting a string", "split string", "string split", "string is split"},
        {"write file", "writing a file", "write file", "file written", "file is written"},
        {"remove element", "removing an element", "remove element", "element removed", "element is removed"},
    };
    for (const auto& row : table) {
        for (std::size_t f = 1; f < row.size(); ++f) {
            auto t = texts(row[f]);
            ASSERT_EQ(t.size(), 1u) << row[f];
            EXPECT_EQ(t[0], row[0]) << row[f];
        }
    }
}

TEST(ExtractTasks, CapAndWellFormednessOnFuzzedTitles) {
    for (const auto& title : synthetic_titles(1000, 42)) {
        auto tasks = extract_tasks(title, lex());
        ASSERT_LE(tasks.size(), kMaxTasksPerTitle) << title;
        std::set<std::string> seen;
        for (const auto& t : tasks) {
            EXPECT_TRUE(is_well_formed(t)) << title << " -> '" << t.text << "'";
            EXPECT_TRUE(seen.insert(t.text).second) << "duplicate '" << t.text << "' from " << title;
        }
    }
}

TEST(ExtractTasks, LongTitleHitsCapExactly) {
    std::string title;
    for (const char* obj : {"list", "map", "file", "string", "array", "stream", "thread", "socket"}) {
        title += std::string("sort ") + obj + " in java and ";
    }
    title += "sort queue";
    auto tasks = extract_tasks(title, lex());
    EXPECT_EQ(tasks.size(), kMaxTasksPerTitle);
}

TEST(ExtractTasks, Deterministic) {
    for (const auto& title : synthetic_titles(200, 3)) {
        auto a = extract_tasks(title, lex());
        auto b = extract_tasks(title, lex());
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].text, b[i].text);
    }
}

TEST(ExtractCorpus, TenTitleFixtureMatchesHandDerivedSet) {
    IngestOptions opts;
    auto store = CorpusStore::ingest_text(dump_of(kTitles), opts);
    auto tasks = extract_corpus(store, lex());

    const std::map<std::string, std::set<PostId>> expected = {
        {"add lines", {101}},
        {"add lines of text", {101}},
        {"add lines to text file", {101}},
        {"click button", {109}},
        {"close jframe", {109}},
        {"convert inputstream", {108}},
        {"convert inputstream to string", {108}},
        {"generate random integers", {102, 103}},
        {"generate random integers in java", {103}},
        {"return iterator", {104}},
        {"return iterator from method", {104}},
        {"sort arraylist<integer>", {107}},
        {"split string", {106}},
        {"split string by whitespaces", {106}},
        {"split string in java", {106}},
        {"tweak string", {110}},
        {"tweak string in java", {110}},
    };
    std::map<std::string, std::set<PostId>> got;
    for (const auto& t : tasks) got[t.text] = t.sources;
    EXPECT_EQ(got, expected);
    EXPECT_TRUE(std::is_sorted(tasks.begin(), tasks.end(),
                               [](const TaskPhrase& l, const TaskPhrase& r) { return l.text < r.text; }));
}

TEST(ExtractCorpus, ParallelPathAgreesWithSerial) {
    std::vector<std::pair<PostId, std::string>> titles;
    auto synth = synthetic_titles(25000, 11);
    for (std::size_t i = 0; i < synth.size(); ++i) titles.emplace_back(i + 1, synth[i]);
    auto store = CorpusStore::ingest_text(dump_of(titles), IngestOptions{});
    auto merged = extract_corpus(store, lex());

    std::map<std::string, std::set<PostId>> serial;
    for (const auto& q : store.questions()) {
        for (const auto& t : extract_tasks(q.title, lex())) serial[t.text].insert(q.id);
    }
    ASSERT_EQ(merged.size(), serial.size());
    for (const auto& t : merged) EXPECT_EQ(t.sources, serial[t.text]) << t.text;
}

TEST(TasksTsv, RoundTrip) {
    auto store = CorpusStore::ingest_text(dump_of(kTitles), IngestOptions{});
    auto tasks = extract_corpus(store, lex());
    std::stringstream buf;
    write_tasks_tsv(buf, tasks);
    auto back = read_tasks_tsv(buf);
    ASSERT_EQ(back.size(), tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        EXPECT_EQ(back[i].text, tasks[i].text);
        EXPECT_EQ(back[i].verb, tasks[i].verb);
        EXPECT_EQ(back[i].object, tasks[i].object);
        EXPECT_EQ(back[i].prep_phrase, tasks[i].prep_phrase);
        EXPECT_EQ(back[i].sources, tasks[i].sources);
    }
}

TEST(TasksTsv, RejectsMalformedLines) {
    std::stringstream wrong_fields("sort list\tsort\tlist\n");
    EXPECT_THROW(read_tasks_tsv(wrong_fields), IoError);
    std::stringstream bad_count("sort list\tsort\tlist\t\t2\t5\n");
    EXPECT_THROW(read_tasks_tsv(bad_count), IoError);
    std::stringstream uppercase("Sort list\tSort\tlist\t\t1\t5\n");
    EXPECT_THROW(read_tasks_tsv(uppercase), IoError);
}

TEST(TaskPhrase, WellFormedness) {
    EXPECT_TRUE(is_well_formed({"sort", "list", "", "sort list", {}}));
    EXPECT_TRUE(is_well_formed({"convert", "", "to string", "convert to string", {}}));
    EXPECT_FALSE(is_well_formed({"sort", "", "", "sort", {}}));
    EXPECT_FALSE(is_well_formed({"sort", "the list", "", "sort the list", {}}));
    EXPECT_FALSE(is_well_formed({"sort", "list", "", "sort  list", {}}));
    EXPECT_EQ(render_task("add", "lines", "to text file"), "add lines to text file");
}

TEST(Tagger, PrepositionalInfinitiveAndLeadIn) {
    auto tokens = normalize_title("How to sort a list", lex());
    ASSERT_EQ(tokens.size(), 5u);
    EXPECT_EQ(tokens[0].tag, Tag::Lead);
    EXPECT_EQ(tokens[1].tag, Tag::PrepInf);
    EXPECT_EQ(tokens[2].tag, Tag::Verb);
    EXPECT_EQ(tokens[3].tag, Tag::Det);
    EXPECT_EQ(tokens[4].tag, Tag::Noun);
    EXPECT_EQ(tag_name(Tag::PrepInf), "PREP-INF");
}
