#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace snipassist {

using WordSet = std::set<std::string, std::less<>>;

struct LexiconCounts {
    std::size_t actions = 0;
    std::size_t generic_objects = 0;
    std::size_t lead_in_words = 0;
    std::size_t irregular_forms = 0;
};

/// Word lists that drive task extraction.
///
/// `actions` and `generic_objects` decide which extracted phrases count as
/// programming tasks; `lead_in_words` are dropped from the head of a title or
/// clause; `irregular` maps inflected forms to their lemma.
struct Lexicon {
    WordSet actions;
    WordSet generic_objects;
    WordSet lead_in_words;
    std::map<std::string, std::string, std::less<>> irregular;

    static const WordSet& determiners();

    bool is_action(std::string_view lemma) const { return actions.find(lemma) != actions.end(); }
    /// Matches the noun or its singular form.
    bool is_generic_object(std::string_view head) const;

    /// Loads the four list files. Missing optional files (empty path) leave
    /// the corresponding list empty.
    static Lexicon load(const std::filesystem::path& actions_file, const std::filesystem::path& objects_file,
                        const std::filesystem::path& lead_in_file = {},
                        const std::filesystem::path& irregular_file = {});
    /// Loads the lists shipped in `dir` (actions.txt, generic_objects.txt,
    /// lead_in.txt, irregular_verbs.txt).
    static Lexicon load_dir(const std::filesystem::path& dir);
    /// The lists shipped with the library: $SNIPASSIST_DATA_DIR when set, else
    /// the installed copy, else the copy in the source tree.
    static Lexicon load_default();

    LexiconCounts counts() const;
};

/// Reads a one-entry-per-line list: `#` starts a comment, blank lines are
/// skipped, entries are lowercased and deduplicated.
std::vector<std::string> read_word_list(const std::filesystem::path& path);

/// Reduces an inflected verb to its lemma ("returning" -> "return",
/// "splitting" -> "split", "written" -> "write"). The irregular table wins;
/// otherwise suffix rules produce candidates and the first one that is a known
/// action is taken, falling back to undoubling and e-restoration heuristics.
/// Words with no recognised inflection come back unchanged (lowercased).
std::string lemmatize_verb(std::string_view word, const Lexicon& lexicon);

/// Plural noun -> singular by suffix rules ("lines" -> "line").
std::string singularize(std::string_view noun);

}  // namespace snipassist
