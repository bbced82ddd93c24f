#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "snipassist/tasks.hpp"

namespace snipassist {

enum class MatchKind { FullPrefix, TokenPrefix };

std::string_view match_kind_name(MatchKind kind);

struct Suggestion {
    std::string text;
    std::size_t source_count = 0;
    MatchKind match_kind = MatchKind::FullPrefix;

    friend bool operator==(const Suggestion&, const Suggestion&) = default;
};

struct CompletionEntry {
    std::string text;
    std::uint32_t source_count = 0;
};

struct CorpusStats {
    std::size_t task_count = 0;
    std::size_t title_count = 0;
};

/// Lowercases, drops leading whitespace and collapses every whitespace run to
/// one space. A trailing run becomes a single trailing space, so "split " only
/// prefix-matches texts that continue after the word "split".
std::string normalize_query(std::string_view query);

/// Immutable type-to-filter index over task phrases.
///
/// An entry matches a query when its text starts with the normalized query
/// (full-prefix), or when every query token is a prefix of a distinct entry
/// token with matches in left-to-right order (token-prefix). Results rank
/// full-prefix first, then by source count descending, then by text.
class CompletionIndex {
  public:
    CompletionIndex() = default;

    /// Throws ArgumentError on duplicate texts.
    static CompletionIndex build(const std::vector<TaskPhrase>& tasks);
    /// Entry texts must be lowercase, trimmed and single-spaced.
    static CompletionIndex build(std::vector<CompletionEntry> entries, std::size_t title_count);

    /// `limit` must be at least 1. An empty query returns the entries with the
    /// most sources.
    std::vector<Suggestion> suggest(std::string_view query, std::size_t limit) const;

    std::span<const CompletionEntry> entries() const { return entries_; }
    const CorpusStats& stats() const { return stats_; }
    std::chrono::system_clock::time_point built_at() const { return built_at_; }

    /// Sorted list of every distinct entry token.
    std::span<const std::string> tokens() const { return tokens_; }
    /// Entry positions (into entries()) containing `token`, ascending.
    std::span<const std::uint32_t> postings(std::string_view token) const;

    void write(std::ostream& out) const;
    static CompletionIndex read(std::istream& in);
    void save(const std::filesystem::path& path) const;
    static CompletionIndex load(const std::filesystem::path& path);

  private:
    void finish_build();
    std::pair<std::size_t, std::size_t> token_range(std::string_view prefix) const;
    std::size_t postings_size(std::pair<std::size_t, std::size_t> range) const;

    std::vector<CompletionEntry> entries_;         // ascending text
    std::vector<std::uint32_t> by_rank_;           // entry positions by (source_count desc, text asc)
    std::vector<std::uint32_t> rank_of_;           // inverse of by_rank_
    std::vector<std::string> tokens_;              // ascending
    std::vector<std::uint32_t> posting_offsets_;   // tokens_.size() + 1 offsets into postings_
    std::vector<std::uint32_t> postings_;
    CorpusStats stats_;
    std::chrono::system_clock::time_point built_at_{};
};

}  // namespace snipassist
