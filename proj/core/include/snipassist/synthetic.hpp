#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "snipassist/completion.hpp"

namespace snipassist {

/// `count` distinct task-shaped entries ("verb [modifier] noun [prep noun]")
/// with skewed source counts. Same seed, same output.
std::vector<CompletionEntry> synthetic_entries(std::size_t count, std::uint64_t seed);

/// Queries drawn from `entries`: mostly leading fragments of a random entry,
/// the rest shortened token prefixes of a random entry, which exercises the
/// token-prefix path. A few are fragments that match nothing.
std::vector<std::string> synthetic_queries(const std::vector<CompletionEntry>& entries, std::size_t count,
                                           std::uint64_t seed);

/// Title-like strings for fuzzing the extractor: mixes actions, nouns,
/// determiners, prepositions, negations, code tokens and punctuation.
std::vector<std::string> synthetic_titles(std::size_t count, std::uint64_t seed);

struct LatencySummary {
    std::size_t queries = 0;
    std::chrono::nanoseconds p50{0};
    std::chrono::nanoseconds p95{0};
    std::chrono::nanoseconds p99{0};
    std::chrono::nanoseconds max{0};
    std::chrono::nanoseconds total{0};
    std::size_t results = 0;  // summed suggestion counts, keeps the work observable
};

/// Times each suggest() call separately (nearest-rank percentiles).
LatencySummary measure_suggest(const CompletionIndex& index, const std::vector<std::string>& queries,
                               std::size_t limit);

}  // namespace snipassist
