#include "snipassist/search.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "snipassist/errors.hpp"
#include "snipassist/lexicon.hpp"
#include "snipassist/text.hpp"

namespace snipassist {

namespace {

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '+' || c == '#' || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
}

}  // namespace

std::vector<std::string> search_tokens(std::string_view input) {
    auto lower = text::to_lower(input);
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < lower.size()) {
        while (i < lower.size() && !is_word_char(lower[i])) ++i;
        std::size_t start = i;
        while (i < lower.size() && is_word_char(lower[i])) ++i;
        if (i > start) {
            auto tok = lower.substr(start, i - start);
            if (Lexicon::determiners().count(tok) == 0) out.push_back(std::move(tok));
        }
    }
    return out;
}

ThreadSearcher::ThreadSearcher(const CorpusStore& store) : store_(&store) {
    auto questions = store.questions();
    for (std::size_t i = 0; i < questions.size(); ++i) {
        std::unordered_map<std::string, std::uint8_t> fields;
        for (auto& tok : search_tokens(questions[i].title)) fields[tok] |= 1;
        for (const auto& tag : questions[i].tags) {
            for (auto& tok : search_tokens(tag)) fields[tok] |= 2;
        }
        for (auto& [tok, f] : fields) postings_[tok].push_back(Posting{static_cast<std::uint32_t>(i), f});
    }
}

std::size_t ThreadSearcher::document_frequency(std::string_view token) const {
    auto it = postings_.find(std::string(token));
    return it == postings_.end() ? 0 : it->second.size();
}

double ThreadSearcher::idf(std::string_view token) const {
    auto df = document_frequency(token);
    if (df == 0) return 0.0;
    return std::log(1.0 + static_cast<double>(store_->questions().size()) / static_cast<double>(df));
}

std::vector<ThreadMatch> ThreadSearcher::search(std::string_view query, std::size_t k) const {
    if (text::is_blank(query)) throw ArgumentError("thread search query is empty");
    if (k == 0) throw ArgumentError("thread search k must be at least 1");

    auto tokens = search_tokens(query);
    std::set<std::string> distinct(tokens.begin(), tokens.end());

    std::unordered_map<std::uint32_t, double> scores;
    for (const auto& tok : distinct) {
        auto it = postings_.find(tok);
        if (it == postings_.end()) continue;
        double weight = idf(tok);
        for (const auto& p : it->second) {
            double w = 0.0;
            if (p.fields & 1) w += weight;
            if (p.fields & 2) w += 2.0 * weight;
            scores[p.question] += w;
        }
    }

    auto questions = store_->questions();
    std::vector<ThreadMatch> matches;
    matches.reserve(scores.size());
    for (const auto& [pos, score] : scores) {
        if (score > 0.0) matches.push_back(ThreadMatch{questions[pos].id, score, questions[pos].score});
    }
    auto better = [](const ThreadMatch& l, const ThreadMatch& r) {
        if (l.lexical_score != r.lexical_score) return l.lexical_score > r.lexical_score;
        if (l.question_score != r.question_score) return l.question_score > r.question_score;
        return l.question_id < r.question_id;
    };
    auto take = std::min(k, matches.size());
    std::partial_sort(matches.begin(), matches.begin() + static_cast<std::ptrdiff_t>(take), matches.end(), better);
    matches.resize(take);
    return matches;
}

std::vector<SnippetResult> retrieve_snippets(const CorpusStore& store, const ThreadSearcher& searcher,
                                             std::string_view task, const RetrievalLimits& limits) {
    if (text::is_blank(task)) throw ArgumentError("task is empty");
    std::vector<SnippetResult> results;
    if (limits.max_threads == 0 || limits.max_snippets_per_thread == 0) return results;

    auto threads = searcher.search(task, limits.max_threads);
    for (std::size_t rank = 0; rank < threads.size(); ++rank) {
        std::size_t taken = 0;
        for (const auto* answer : store.ordered_answers(threads[rank].question_id)) {
            for (const auto& snippet : store.snippets_of(answer->id)) {
                if (taken == limits.max_snippets_per_thread) break;
                results.push_back(SnippetResult{snippet.code, snippet.source_url,
                                                static_cast<std::uint32_t>(rank + 1), answer->score, answer->id,
                                                static_cast<std::uint32_t>(results.size() + 1)});
                ++taken;
            }
            if (taken == limits.max_snippets_per_thread) break;
        }
    }
    return results;
}

SnippetSearcher::SnippetSearcher(const CorpusStore& store, RetrievalLimits limits)
    : store_(&store), threads_(store), limits_(limits) {}

std::vector<SnippetResult> SnippetSearcher::retrieve(std::string_view task) const {
    return retrieve_snippets(*store_, threads_, task, limits_);
}

std::vector<ThreadMatch> SnippetSearcher::search_threads(std::string_view query) const {
    return threads_.search(query, limits_.max_threads);
}

}  // namespace snipassist
