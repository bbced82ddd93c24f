#include "snipassist/tagger.hpp"

#include <array>
#include <cctype>
#include <optional>

#include "snipassist/text.hpp"

namespace snipassist {

namespace {

// Word classes assigned before context is considered.
enum class Lex {
    Punct,
    Code,
    Det,
    Neg,
    Aux,
    Modal,
    Conj,
    Sub,
    Prep,
    Other,
    Pron,
    PronMod,
    Adv,
    Act,      // known action in lemma form
    ActPart,  // also a past participle ("split", "set", "read")
    Part,     // irregular or -en participle ("written", "found")
    Ing,
    Ed,
    Noun,
};

const WordSet kPrepositions{"to", "from", "into", "in", "on", "by", "with", "of", "for", "over", "between"};
const WordSet kOther{"at",     "as",      "via",    "through", "about",   "than",    "within",     "inside",
                     "across", "onto",    "upon",   "per",     "under",   "after",   "before",     "during",
                     "against", "like",   "vs",     "versus",  "except",  "until",   "among",      "toward",
                     "towards", "around", "beyond", "based",   "related", "instead", "throughout", "according",
                     "supposed", "whose", "who",    "whom"};
const WordSet kNegations{"not", "never", "without", "cannot", "no", "nor"};
const WordSet kAux{"is", "are", "was", "were", "be", "been", "being", "am"};
const WordSet kModals{"do",  "does",  "did", "can",  "could", "should", "would", "will",
                      "shall", "may", "might", "must", "have", "has",    "had"};
const WordSet kConjunctions{"and", "or", "/", "&"};
const WordSet kSubordinators{"when",   "if",      "while",  "because", "but",  "so",    "then",
                             "where",  "although", "unless", "whereas", "whether", "though", "since",
                             "how",    "what",    "why",    "which",   "once"};
const WordSet kPronouns{"i",      "me",       "you",      "we",        "us",       "it",      "they",
                        "them",   "he",       "him",      "she",       "something", "anything", "everything",
                        "nothing", "someone", "anyone",   "everyone",  "itself",   "myself",  "yourself",
                        "themselves", "ourselves"};
const WordSet kPronounModifiers{"my", "your", "our", "its", "their", "his", "her", "this", "that", "these", "those"};
const WordSet kAdverbs{"also", "just", "only",  "still", "very", "again", "too",  "even",     "already",
                       "always", "now", "really", "else", "here", "out",  "up",   "down",     "back",
                       "away",  "off", "together", "twice", "more", "less", "much", "well"};
// -ly words that are not adverbs.
const WordSet kLyNouns{"family",  "assembly", "reply", "supply", "apply",  "anomaly", "poly",
                       "italy",   "fly",      "jelly", "butterfly", "monopoly", "rely", "multiply",
                       "ally",    "bully",    "ugly",  "july",   "holy",   "silly",   "only"};
// -ing words that are not gerunds.
const WordSet kIngNouns{"string", "strings", "thing",  "spring", "ring",    "king",     "ping",    "during",
                        "nothing", "something", "anything", "everything", "morning", "evening", "ceiling",
                        "sibling", "wing",   "swing",  "bring",  "sting",   "sling",    "cling",   "fling",
                        "wring",   "ding",   "boring", "pudding"};
// -ed words that are not participles.
const WordSet kEdNouns{"need",   "speed",   "seed",    "feed",  "bed",     "red",   "shed",   "embed",
                       "indeed", "hundred", "sacred",  "breed", "weed",    "proceed", "exceed", "succeed",
                       "deed",   "greed",   "bleed",   "shred", "naked",   "wicked", "kindred", "based",
                       "related", "supposed"};

const WordSet kMarkupTags{"a",    "abbr",   "b",   "blockquote", "br",  "code", "del",  "div", "em",
                          "h1",   "h2",     "h3",  "h4",         "h5",  "h6",   "hr",   "i",   "img",
                          "kbd",  "li",     "ol",  "p",          "pre", "s",    "span", "strike", "strong",
                          "sub",  "sup",    "tt",  "u",          "ul"};

bool contains(const WordSet& set, std::string_view w) { return set.find(w) != set.end(); }

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

/// Removes HTML tags but keeps generic brackets such as `List<Integer>`.
std::string strip_markup(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '<') {
            std::size_t j = i + 1;
            if (j < s.size() && s[j] == '/') ++j;
            std::size_t name_start = j;
            while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
            auto name = text::to_lower(s.substr(name_start, j - name_start));
            auto close = s.find('>', j);
            if (!name.empty() && contains(kMarkupTags, name) && close != std::string_view::npos &&
                (j == close || is_ws(s[j]) || s[j] == '/')) {
                out.push_back(' ');
                i = close + 1;
                continue;
            }
        }
        out.push_back(s[i++]);
    }
    return out;
}

struct RawToken {
    std::string original;
    bool punct = false;
};

bool is_dash_at(std::string_view s, std::size_t i) {
    return s.substr(i, 3) == "\xE2\x80\x93" || s.substr(i, 3) == "\xE2\x80\x94";
}

std::vector<RawToken> raw_tokens(std::string_view s) {
    std::vector<RawToken> out;
    std::string cur;
    int depth = 0;
    auto flush = [&] {
        if (!cur.empty()) out.push_back({std::move(cur), false});
        cur.clear();
    };
    auto punct = [&](std::string p) {
        flush();
        out.push_back({std::move(p), true});
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool boundary_next = i + 1 >= s.size() || is_ws(s[i + 1]);
        if (depth > 0) {
            if (is_ws(c)) continue;
            cur.push_back(c);
            if (c == '<' || c == '(' || c == '[') ++depth;
            if (c == '>' || c == ')' || c == ']') --depth;
            continue;
        }
        if (is_ws(c)) {
            flush();
            continue;
        }
        switch (c) {
            case '<':
            case '(':
            case '[':
                if (cur.empty()) {
                    punct(std::string(1, c));
                } else {
                    cur.push_back(c);
                    ++depth;
                }
                break;
            case '>':
            case ')':
            case ']':
            case '|':
                punct(std::string(1, c));
                break;
            case '"':
            case '`':
                flush();
                break;
            case ',':
            case ';':
            case '!':
            case '?':
                if (boundary_next || cur.empty()) {
                    punct(std::string(1, c));
                } else {
                    cur.push_back(c);
                }
                break;
            case ':':
                if (i + 1 < s.size() && s[i + 1] == ':') {
                    cur += "::";
                    ++i;
                } else if (boundary_next || cur.empty()) {
                    punct(":");
                } else {
                    cur.push_back(c);
                }
                break;
            case '.':
                if (cur.empty() && !boundary_next) {
                    cur.push_back(c);  // ".net"
                } else if (boundary_next || cur.empty()) {
                    punct(".");
                } else {
                    cur.push_back(c);
                }
                break;
            case '\'':
                if (cur.empty() || boundary_next) {
                    flush();
                } else {
                    cur.push_back(c);
                }
                break;
            case '-':
                if (cur.empty() && boundary_next) {
                    punct("-");
                } else {
                    cur.push_back(c);
                }
                break;
            case '/':
                if (cur.empty() && boundary_next) {
                    flush();
                    out.push_back({"/", false});
                } else {
                    cur.push_back(c);
                }
                break;
            default:
                if (cur.empty() && is_dash_at(s, i) && (i + 3 >= s.size() || is_ws(s[i + 3]))) {
                    punct("-");
                    i += 2;
                } else {
                    cur.push_back(c);
                }
        }
    }
    flush();
    for (auto& t : out) {
        if (t.punct) continue;
        if (ends_with(t.original, "'s") && t.original.size() > 2) t.original.resize(t.original.size() - 2);
    }
    return out;
}

bool looks_like_code(std::string_view s) {
    if (s.find("()") != std::string_view::npos || s.find("::") != std::string_view::npos) return true;
    if (s.find('.') != std::string_view::npos && s.size() > 1) return true;
    if (s.find('<') != std::string_view::npos && s.find('>') != std::string_view::npos) return true;
    if (s.find("[]") != std::string_view::npos) return true;
    auto underscore = s.find('_');
    if (underscore != std::string_view::npos && underscore > 0 && underscore + 1 < s.size()) return true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (std::islower(static_cast<unsigned char>(s[i])) && std::isupper(static_cast<unsigned char>(s[i + 1]))) {
            return true;
        }
    }
    return false;
}

bool is_number(std::string_view w) {
    return !w.empty() && std::isdigit(static_cast<unsigned char>(w.front()));
}

Lex classify(const RawToken& raw, std::string_view w, const Lexicon& lex) {
    if (raw.punct) return Lex::Punct;
    if (looks_like_code(raw.original)) return Lex::Code;
    if (contains(Lexicon::determiners(), w)) return Lex::Det;
    if (contains(kNegations, w) || ends_with(w, "n't")) return Lex::Neg;
    if (contains(kAux, w)) return Lex::Aux;
    if (contains(kModals, w)) return Lex::Modal;
    if (contains(kConjunctions, w)) return Lex::Conj;
    if (contains(kSubordinators, w)) return Lex::Sub;
    if (contains(kPrepositions, w)) return Lex::Prep;
    if (contains(kOther, w)) return Lex::Other;
    if (contains(kPronouns, w)) return Lex::Pron;
    if (contains(kPronounModifiers, w)) return Lex::PronMod;
    if (is_number(w)) return Lex::Noun;

    auto irregular = lex.irregular.find(w);
    bool participle_form = irregular != lex.irregular.end() && !ends_with(w, "ing");
    if (lex.is_action(w)) return participle_form ? Lex::ActPart : Lex::Act;
    if (participle_form) return irregular->second == w ? Lex::ActPart : Lex::Part;
    if (irregular != lex.irregular.end()) return Lex::Ing;

    if (contains(kAdverbs, w) || (ends_with(w, "ly") && w.size() > 4 && !contains(kLyNouns, w))) return Lex::Adv;
    if (ends_with(w, "ing") && w.size() >= 5 && !contains(kIngNouns, w)) return Lex::Ing;
    if (ends_with(w, "ed") && w.size() >= 4 && !contains(kEdNouns, w)) return Lex::Ed;
    if (ends_with(w, "en") && w.size() >= 5 && lex.is_action(lemmatize_verb(w, lex))) return Lex::Part;
    return Lex::Noun;
}

/// Classes that close a phrase: nothing after them can extend an object.
bool closes_phrase(std::optional<Lex> c) {
    return !c || *c == Lex::Punct || *c == Lex::Prep || *c == Lex::Conj || *c == Lex::Sub || *c == Lex::Other ||
           *c == Lex::Adv;
}

bool nominal(std::optional<Lex> c) {
    return c && (*c == Lex::Noun || *c == Lex::Code || *c == Lex::Det || *c == Lex::PronMod);
}

}  // namespace

std::string_view tag_name(Tag tag) {
    switch (tag) {
        case Tag::Lead: return "LEAD";
        case Tag::Det: return "DET";
        case Tag::Prep: return "PREP";
        case Tag::PrepInf: return "PREP-INF";
        case Tag::Verb: return "VERB";
        case Tag::Gerund: return "GERUND";
        case Tag::Participle: return "PARTICIPLE";
        case Tag::Noun: return "NOUN";
        case Tag::Adv: return "ADV";
        case Tag::Neg: return "NEG";
        case Tag::Aux: return "AUX";
        case Tag::Modal: return "MODAL";
        case Tag::Conj: return "CONJ";
        case Tag::Pron: return "PRON";
        case Tag::Other: return "OTHER";
        case Tag::Sub: return "SUB";
        case Tag::Punct: return "PUNCT";
    }
    return "?";
}

std::vector<Token> normalize_title(std::string_view title, const Lexicon& lexicon) {
    auto raws = raw_tokens(text::decode_entities(strip_markup(title)));
    const auto n = raws.size();

    std::vector<Token> tokens(n);
    std::vector<Lex> classes(n);
    for (std::size_t i = 0; i < n; ++i) {
        tokens[i].text = text::to_lower(raws[i].original);
        classes[i] = classify(raws[i], tokens[i].text, lexicon);
        tokens[i].code_like = classes[i] == Lex::Code;
        tokens[i].modifier = classes[i] == Lex::PronMod;
    }

    auto cls = [&](std::size_t i) -> std::optional<Lex> {
        return i < n ? std::optional<Lex>(classes[i]) : std::nullopt;
    };
    auto next_non_adv = [&](std::size_t i) {
        while (i < n && classes[i] == Lex::Adv) ++i;
        return i;
    };

    bool clause_head = true;
    // Tag of the previous non-adverb token in this clause; nullopt at a clause start.
    std::optional<Tag> prev;
    for (std::size_t i = 0; i < n; ++i) {
        auto& tok = tokens[i];
        const auto c = classes[i];
        const auto& w = tok.text;

        if (c == Lex::Punct || c == Lex::Sub) {
            if (clause_head && c == Lex::Sub && contains(lexicon.lead_in_words, w)) {
                tok.tag = Tag::Lead;
                prev = Tag::Lead;
                continue;
            }
            tok.tag = c == Lex::Punct ? Tag::Punct : Tag::Sub;
            clause_head = true;
            prev.reset();
            continue;
        }
        if (clause_head) {
            if (c != Lex::Code && contains(lexicon.lead_in_words, w)) {
                tok.tag = Tag::Lead;
                prev = Tag::Lead;
                continue;
            }
            if (c == Lex::Det) {
                tok.tag = Tag::Det;
                continue;
            }
            clause_head = false;
        }

        const bool verb_slot = !prev || prev == Tag::Lead || prev == Tag::PrepInf || prev == Tag::Conj ||
                               prev == Tag::Neg || prev == Tag::Modal ||
                               (prev == Tag::Pron && !tokens[i - 1].modifier);
        const auto next = next_non_adv(i + 1);
        const auto next_cls = cls(next);
        const auto after_next_cls = cls(next + 1);

        switch (c) {
            case Lex::Prep:
                tok.tag = Tag::Prep;
                if (w == "to" && next_cls && (*next_cls == Lex::Act || *next_cls == Lex::ActPart) &&
                    (!prev || prev == Tag::Lead || !closes_phrase(after_next_cls))) {
                    tok.tag = Tag::PrepInf;
                }
                break;
            case Lex::Act:
            case Lex::ActPart: {
                bool predicative_next =
                    next_cls && (*next_cls == Lex::Ed || *next_cls == Lex::Part || *next_cls == Lex::ActPart) &&
                    !nominal(after_next_cls);
                if (prev && prev == Tag::PrepInf) {
                    tok.tag = Tag::Verb;
                } else if (verb_slot) {
                    if ((next_cls && *next_cls == Lex::Aux) || predicative_next) {
                        tok.tag = Tag::Noun;  // subject of a passive: "list is sorted"
                    } else if (prev && prev == Tag::Conj && closes_phrase(next_cls)) {
                        tok.tag = Tag::Noun;  // "list and map"
                    } else {
                        tok.tag = Tag::Verb;
                    }
                } else if (c == Lex::ActPart && prev == Tag::Aux) {
                    tok.tag = Tag::Participle;
                } else if (c == Lex::ActPart && prev == Tag::Noun && closes_phrase(next_cls)) {
                    tok.tag = Tag::Participle;  // "string split by comma"
                } else if (prev == Tag::Noun && next_cls && (*next_cls == Lex::Det || *next_cls == Lex::PronMod)) {
                    tok.tag = Tag::Verb;  // "java sort the list"
                } else {
                    tok.tag = Tag::Noun;
                }
                break;
            }
            case Lex::Ing:
                if (prev && (prev == Tag::Det || prev == Tag::Verb || (prev == Tag::Pron && tokens[i - 1].modifier))) {
                    tok.tag = Tag::Noun;
                } else if (next_cls && *next_cls == Lex::Aux) {
                    tok.tag = Tag::Noun;
                } else if (prev && prev == Tag::Noun && closes_phrase(next_cls)) {
                    tok.tag = Tag::Noun;  // "file reading in java"
                } else {
                    tok.tag = Tag::Gerund;
                }
                break;
            case Lex::Ed:
            case Lex::Part: tok.tag = Tag::Participle; break;
            case Lex::Det: tok.tag = Tag::Det; break;
            case Lex::Neg: tok.tag = Tag::Neg; break;
            case Lex::Aux: tok.tag = Tag::Aux; break;
            case Lex::Modal: tok.tag = Tag::Modal; break;
            case Lex::Conj: tok.tag = Tag::Conj; break;
            case Lex::Pron:
            case Lex::PronMod: tok.tag = Tag::Pron; break;
            case Lex::Adv: tok.tag = Tag::Adv; break;
            case Lex::Other: tok.tag = Tag::Other; break;
            case Lex::Code:
            case Lex::Noun: tok.tag = Tag::Noun; break;
            case Lex::Punct:
            case Lex::Sub: break;  // handled above
        }
        if (tok.tag != Tag::Adv) prev = tok.tag;
    }
    return tokens;
}

}  // namespace snipassist
