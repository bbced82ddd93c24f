#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "snipassist/corpus.hpp"

namespace snipassist {

struct ThreadMatch {
    PostId question_id = 0;
    double lexical_score = 0.0;
    std::int64_t question_score = 0;
};

/// One retrieved code snippet. `thread_rank` is the 1-based rank of the thread
/// it came from; `position` is its 1-based place in the overall result list.
struct SnippetResult {
    std::string code;
    std::string source_url;
    std::uint32_t thread_rank = 0;
    std::int64_t answer_score = 0;
    PostId answer_id = 0;
    std::uint32_t position = 0;

    friend bool operator==(const SnippetResult&, const SnippetResult&) = default;
};

/// How many threads to read and how many snippets to take from each.
/// Defaults live in Config.
struct RetrievalLimits {
    std::size_t max_threads = 0;
    std::size_t max_snippets_per_thread = 0;
};

/// Lowercased alphanumeric runs (`+`, `#` and `_` count as word characters),
/// with the determiners "a", "an" and "the" removed.
std::vector<std::string> search_tokens(std::string_view text);

/// Local lexical search over question titles and tags.
///
/// score(q) = sum over distinct query tokens t of idf(t) * (in_title + 2 * in_tags),
/// idf(t) = ln(1 + N / df(t)), N = question count, df(t) = questions whose
/// title or tags contain t. Ties break on question score (desc), then id.
class ThreadSearcher {
  public:
    explicit ThreadSearcher(const CorpusStore& store);

    /// Top-k matches with positive score. Throws ArgumentError on a blank
    /// query or k == 0.
    std::vector<ThreadMatch> search(std::string_view query, std::size_t k) const;

    std::size_t document_frequency(std::string_view token) const;
    double idf(std::string_view token) const;

  private:
    struct Posting {
        std::uint32_t question;  // position in store.questions()
        std::uint8_t fields;     // bit 0: title, bit 1: tags
    };

    const CorpusStore* store_;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
};

/// Up to `max_snippets_per_thread` code blocks from each of the top
/// `max_threads` threads for `task`, walking each thread's answers in Thread
/// order and each answer's blocks in document order. Empty when nothing
/// matches. Throws ArgumentError on a blank task.
std::vector<SnippetResult> retrieve_snippets(const CorpusStore& store, const ThreadSearcher& searcher,
                                             std::string_view task, const RetrievalLimits& limits);

/// Bundles a store, its thread index and the retrieval limits.
class SnippetSearcher {
  public:
    SnippetSearcher(const CorpusStore& store, RetrievalLimits limits);

    std::vector<SnippetResult> retrieve(std::string_view task) const;
    std::vector<ThreadMatch> search_threads(std::string_view query) const;

    const CorpusStore& store() const { return *store_; }
    const RetrievalLimits& limits() const { return limits_; }

  private:
    const CorpusStore* store_;
    ThreadSearcher threads_;
    RetrievalLimits limits_;
};

}  // namespace snipassist
