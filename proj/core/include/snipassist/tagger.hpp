#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "snipassist/lexicon.hpp"

namespace snipassist {

enum class Tag {
    Lead,        // lead-in word at a clause head ("how", "best", "strategy")
    Det,         // a, an, the
    Prep,        // preposition that can open a task's prepositional phrase
    PrepInf,     // infinitive "to" ("how to add")
    Verb,
    Gerund,
    Participle,
    Noun,
    Adv,
    Neg,         // not, n't, without, never
    Aux,         // forms of "be"
    Modal,       // do, can, should, ...
    Conj,        // and, or, "/"
    Pron,        // pronouns; possessives and demonstratives set `modifier`
    Other,       // function words that end a phrase but never open one
    Sub,         // subordinators; start a new clause
    Punct,       // clause-breaking punctuation
};

std::string_view tag_name(Tag tag);

struct Token {
    std::string text;  // lowercased surface form
    Tag tag = Tag::Noun;
    bool code_like = false;  // identifier-ish token kept whole ("arraylist<integer>")
    bool modifier = false;   // possessive/demonstrative pronoun ("my", "this")
};

/// Strips markup from a question title, tokenizes it and assigns a
/// part-of-speech tag to every token using lexicon lookups, suffix
/// heuristics and the tags of neighbouring tokens. Empty title -> no tokens.
std::vector<Token> normalize_title(std::string_view title, const Lexicon& lexicon);

}  // namespace snipassist
