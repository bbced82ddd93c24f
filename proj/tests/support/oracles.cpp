#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace oracle {

using namespace snipassist;

std::string normalize(std::string_view query) {
    std::string out;
    std::string word;
    bool trailing = false;
    for (char c : query) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!word.empty()) {
                if (!out.empty()) out += ' ';
                out += word;
                word.clear();
            }
            trailing = true;
        } else {
            word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            trailing = false;
        }
    }
    if (!word.empty()) {
        if (!out.empty()) out += ' ';
        out += word;
    }
    if (trailing && !out.empty()) out += ' ';
    return out;
}

namespace {

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

bool token_match(const std::string& text, const std::string& q) {
    auto entry = words(text);
    auto query = words(q);
    std::size_t e = 0;
    for (const auto& qt : query) {
        while (e < entry.size() && entry[e].rfind(qt, 0) != 0) ++e;
        if (e == entry.size()) return false;
        ++e;
    }
    return true;
}

bool word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '+' || c == '#' || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
}

std::set<std::string> bag(const std::string& raw) {
    std::string s;
    for (char c : raw) s += static_cast<char>((c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c);
    std::set<std::string> out;
    std::string cur;
    for (char c : s + " ") {
        if (word_char(c)) {
            cur += c;
        } else if (!cur.empty()) {
            if (cur != "a" && cur != "an" && cur != "the") out.insert(cur);
            cur.clear();
        }
    }
    return out;
}

}  // namespace

std::vector<Suggestion> naive_suggest(const std::vector<CompletionEntry>& entries, std::string_view query,
                                      std::size_t limit) {
    auto q = normalize(query);
    std::vector<Suggestion> all;
    for (const auto& e : entries) {
        if (q.empty() || e.text.rfind(q, 0) == 0) {
            all.push_back({e.text, e.source_count, MatchKind::FullPrefix});
        } else if (token_match(e.text, q)) {
            all.push_back({e.text, e.source_count, MatchKind::TokenPrefix});
        }
    }
    std::sort(all.begin(), all.end(), [](const Suggestion& l, const Suggestion& r) {
        if (l.match_kind != r.match_kind) return l.match_kind == MatchKind::FullPrefix;
        if (l.source_count != r.source_count) return l.source_count > r.source_count;
        return l.text < r.text;
    });
    if (all.size() > limit) all.resize(limit);
    return all;
}

std::vector<ScoredThread> brute_force_rank(const CorpusStore& store, std::string_view query) {
    auto questions = store.questions();
    std::vector<std::set<std::string>> titles, tags;
    for (const auto& q : questions) {
        titles.push_back(bag(q.title));
        std::set<std::string> t;
        for (const auto& tag : q.tags) {
            auto b = bag(tag);
            t.insert(b.begin(), b.end());
        }
        tags.push_back(t);
    }
    auto query_words = bag(std::string(query));
    std::vector<std::pair<std::size_t, double>> scored;
    for (std::size_t i = 0; i < questions.size(); ++i) {
        double s = 0.0;
        for (const auto& w : query_words) {  // std::set iterates in sorted order
            std::size_t df = 0;
            for (std::size_t j = 0; j < questions.size(); ++j) {
                if (titles[j].count(w) || tags[j].count(w)) ++df;
            }
            if (df == 0) continue;
            double idf = std::log(1.0 + static_cast<double>(questions.size()) / static_cast<double>(df));
            if (titles[i].count(w)) s += idf;
            if (tags[i].count(w)) s += 2.0 * idf;
        }
        if (s > 0) scored.emplace_back(i, s);
    }
    std::sort(scored.begin(), scored.end(), [&](const auto& l, const auto& r) {
        if (l.second != r.second) return l.second > r.second;
        if (questions[l.first].score != questions[r.first].score) {
            return questions[l.first].score > questions[r.first].score;
        }
        return questions[l.first].id < questions[r.first].id;
    });
    std::vector<ScoredThread> out;
    for (const auto& [i, s] : scored) out.push_back({questions[i].id, s});
    return out;
}

std::vector<SnippetResult> brute_force_retrieve(const CorpusStore& store, std::string_view task,
                                                const RetrievalLimits& limits) {
    std::vector<SnippetResult> out;
    auto ranked = brute_force_rank(store, task);
    for (std::size_t r = 0; r < ranked.size() && r < limits.max_threads; ++r) {
        const auto& question = store.question(ranked[r].question_id);
        std::vector<Answer> answers;
        for (const auto& a : store.answers()) {
            if (a.question_id == question.id) answers.push_back(a);
        }
        std::sort(answers.begin(), answers.end(), [&](const Answer& l, const Answer& r2) {
            if (l.score != r2.score) return l.score > r2.score;
            bool la = question.accepted_answer_id == l.id;
            bool ra = question.accepted_answer_id == r2.id;
            if (la != ra) return la;
            return l.id < r2.id;
        });
        std::size_t taken = 0;
        for (const auto& a : answers) {
            for (const auto& snip : store.snippets()) {
                if (snip.answer_id != a.id || taken == limits.max_snippets_per_thread) continue;
                out.push_back(SnippetResult{snip.code, snip.source_url, static_cast<std::uint32_t>(r + 1), a.score,
                                            a.id, static_cast<std::uint32_t>(out.size() + 1)});
                ++taken;
            }
        }
    }
    return out;
}

}  // namespace oracle
