#include "snipassist/lexicon.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "snipassist/errors.hpp"
#include "snipassist/text.hpp"

namespace snipassist {

namespace {

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

/// "splitt" -> "split"; l, s, z and f doubling is part of the lemma
/// ("install", "pass", "buzz", "stuff").
std::optional<std::string> undouble(std::string_view stem) {
    if (stem.size() < 3) return std::nullopt;
    char last = stem.back();
    char prev = stem[stem.size() - 2];
    if (last != prev || !is_consonant(last)) return std::nullopt;
    if (last == 'l' || last == 's' || last == 'z' || last == 'f') return std::nullopt;
    return std::string(stem.substr(0, stem.size() - 1));
}

/// Whether a stripped -ing/-ed stem most likely lost a silent final e.
bool needs_e(std::string_view stem) {
    auto n = stem.size();
    if (n < 2) return false;
    char last = stem[n - 1];
    char prev = stem[n - 2];
    if (last == 'v' || last == 'u') return true;                   // remov, continu
    if (last == 'z' && prev != 'z') return true;                   // serializ
    if (last == 'c' && prev != 'n') return true;                   // produc
    if (last == 's' && prev != 's') {
        if (is_consonant(prev)) return true;                       // pars, collaps
        return stem != "focus" && stem != "bias" && stem != "alias" && stem != "canvas";  // us, clos
    }
    if (last == 'l' && is_consonant(prev) && prev != 'l' && prev != 'r') return true;  // handl
    if (ends_with(stem, "at") && n >= 4 && !ends_with(stem, "eat") && !ends_with(stem, "oat")) return true;
    if (ends_with(stem, "ut") && n >= 4 && !ends_with(stem, "out")) return true;  // comput, execut
    if (last == 'r' && (prev == 'a' || prev == 'i' || prev == 'o' || prev == 'u') && n >= 3 &&
        !is_vowel(stem[n - 3])) {
        return true;                                               // stor, compar, configur
    }
    // Short consonant-vowel-consonant stems: mak, cod, tak.
    if (n == 3 && is_consonant(stem[0]) && is_vowel(stem[1]) && is_consonant(last) && last != 'w' &&
        last != 'x' && last != 'y') {
        return true;
    }
    return false;
}

std::string default_suffix_lemma(std::string_view stem) {
    if (auto u = undouble(stem)) return *u;
    if (needs_e(stem)) return std::string(stem) + "e";
    return std::string(stem);
}

void insert_list(WordSet& out, const std::filesystem::path& path) {
    for (auto& w : read_word_list(path)) out.insert(std::move(w));
}

}  // namespace

const WordSet& Lexicon::determiners() {
    static const WordSet kDeterminers{"a", "an", "the"};
    return kDeterminers;
}

bool Lexicon::is_generic_object(std::string_view head) const {
    if (generic_objects.find(head) != generic_objects.end()) return true;
    auto singular = singularize(head);
    return singular != head && generic_objects.find(singular) != generic_objects.end();
}

std::vector<std::string> read_word_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open word list '" + path.string() + "'");
    std::vector<std::string> out;
    WordSet seen;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        auto entry = text::to_lower(text::trim(std::string_view(line).substr(0, hash)));
        if (entry.empty()) continue;
        if (seen.insert(entry).second) out.push_back(std::move(entry));
    }
    return out;
}

Lexicon Lexicon::load(const std::filesystem::path& actions_file, const std::filesystem::path& objects_file,
                      const std::filesystem::path& lead_in_file, const std::filesystem::path& irregular_file) {
    Lexicon lex;
    insert_list(lex.actions, actions_file);
    insert_list(lex.generic_objects, objects_file);
    if (!lead_in_file.empty()) insert_list(lex.lead_in_words, lead_in_file);
    if (!irregular_file.empty()) {
        for (const auto& line : read_word_list(irregular_file)) {
            auto parts = text::split_whitespace(line);
            if (parts.size() != 2) {
                throw IoError("irregular verb entry '" + line + "' in '" + irregular_file.string() +
                              "' must be 'form lemma'");
            }
            lex.irregular.emplace(std::string(parts[0]), std::string(parts[1]));
        }
    }
    return lex;
}

Lexicon Lexicon::load_dir(const std::filesystem::path& dir) {
    return load(dir / "actions.txt", dir / "generic_objects.txt", dir / "lead_in.txt", dir / "irregular_verbs.txt");
}

Lexicon Lexicon::load_default() {
    if (const char* env = std::getenv("SNIPASSIST_DATA_DIR"); env != nullptr && *env != '\0') return load_dir(env);
    for (const char* dir : {SNIPASSIST_INSTALL_DATA_DIR, SNIPASSIST_SOURCE_DATA_DIR}) {
        if (std::filesystem::exists(std::filesystem::path(dir) / "actions.txt")) return load_dir(dir);
    }
    throw IoError("default lexicon not found; set SNIPASSIST_DATA_DIR");
}

LexiconCounts Lexicon::counts() const {
    return {actions.size(), generic_objects.size(), lead_in_words.size(), irregular.size()};
}

std::string lemmatize_verb(std::string_view word, const Lexicon& lexicon) {
    auto w = text::to_lower(word);
    if (auto it = lexicon.irregular.find(w); it != lexicon.irregular.end()) return it->second;
    if (lexicon.is_action(w)) return w;

    std::vector<std::string> candidates;
    std::string fallback = w;
    std::string_view v = w;
    if (ends_with(v, "ing") && v.size() >= 5) {
        auto stem = v.substr(0, v.size() - 3);
        candidates = {std::string(stem), undouble(stem).value_or(std::string(stem)), std::string(stem) + "e"};
        fallback = default_suffix_lemma(stem);
    } else if (ends_with(v, "ied") && v.size() >= 5) {
        fallback = std::string(v.substr(0, v.size() - 3)) + "y";
        candidates = {fallback};
    } else if (ends_with(v, "ed") && v.size() >= 4) {
        auto stem = v.substr(0, v.size() - 2);
        candidates = {std::string(stem), undouble(stem).value_or(std::string(stem)), std::string(stem) + "e"};
        fallback = default_suffix_lemma(stem);
    } else if (ends_with(v, "en") && v.size() >= 5) {
        // taken -> take, beaten -> beat; only trusted when it names an action.
        candidates = {std::string(v.substr(0, v.size() - 1)), std::string(v.substr(0, v.size() - 2))};
    } else if (ends_with(v, "ies") && v.size() >= 5) {
        fallback = std::string(v.substr(0, v.size() - 3)) + "y";
        candidates = {fallback};
    } else if (ends_with(v, "es") && v.size() >= 4) {
        auto stem = v.substr(0, v.size() - 2);
        candidates = {std::string(stem), std::string(v.substr(0, v.size() - 1))};
        bool sibilant = ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
                        ends_with(stem, "ch") || ends_with(stem, "sh");
        fallback = sibilant ? std::string(stem) : std::string(v.substr(0, v.size() - 1));
    } else if (ends_with(v, "s") && !ends_with(v, "ss") && v.size() >= 3) {
        fallback = std::string(v.substr(0, v.size() - 1));
        candidates = {fallback};
    }
    for (const auto& c : candidates) {
        if (lexicon.is_action(c)) return c;
    }
    return fallback;
}

std::string singularize(std::string_view noun) {
    if (ends_with(noun, "ies") && noun.size() > 4) return std::string(noun.substr(0, noun.size() - 3)) + "y";
    if (ends_with(noun, "ses") || ends_with(noun, "xes") || ends_with(noun, "ches") || ends_with(noun, "shes")) {
        return std::string(noun.substr(0, noun.size() - 2));
    }
    if (ends_with(noun, "s") && !ends_with(noun, "ss") && !ends_with(noun, "us") && noun.size() > 3) {
        return std::string(noun.substr(0, noun.size() - 1));
    }
    return std::string(noun);
}

}  // namespace snipassist
