#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "snipassist/corpus.hpp"
#include "snipassist/lexicon.hpp"

namespace snipassist {

inline constexpr std::size_t kMaxTasksPerTitle = 12;

/// A programming task phrased as "verb [object] [prepositional phrase]",
/// e.g. "add lines to text file". `object` and `prep_phrase` are empty when
/// absent; at least one of them is set.
struct TaskPhrase {
    std::string verb;
    std::string object;
    std::string prep_phrase;
    std::string text;
    std::set<PostId> sources;

    friend bool operator==(const TaskPhrase&, const TaskPhrase&) = default;
};

/// Canonical rendering: non-empty parts joined by single spaces.
std::string render_task(std::string_view verb, std::string_view object, std::string_view prep_phrase);

/// Checks the TaskPhrase invariants: lowercase, no determiners, single
/// spacing, text equals the rendering of its parts, object or PP present.
bool is_well_formed(const TaskPhrase& task);

/// Tasks expressed by a question title, in generation order, at most
/// kMaxTasksPerTitle. Returned phrases carry no sources.
std::vector<TaskPhrase> extract_tasks(std::string_view title, const Lexicon& lexicon);

/// Runs extract_tasks over every stored title and merges phrases with equal
/// text. Sorted by text.
std::vector<TaskPhrase> extract_corpus(const CorpusStore& store, const Lexicon& lexicon);

/// TSV with a header row; columns: text, verb, object, prep_phrase,
/// source_count, comma-separated source ids.
void write_tasks_tsv(std::ostream& out, const std::vector<TaskPhrase>& tasks);
std::vector<TaskPhrase> read_tasks_tsv(std::istream& in);

}  // namespace snipassist
