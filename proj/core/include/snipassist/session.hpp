#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snipassist/search.hpp"
#include "snipassist/telemetry.hpp"

namespace snipassist {

enum class Origin { ContentAssist, Selection, QuestionMarks };

std::string_view origin_name(Origin origin);
/// Accepts "content-assist", "selection" and "question-marks".
std::optional<Origin> parse_origin(std::string_view name);

/// A span of the document in code points.
struct Region {
    std::size_t start = 0;
    std::size_t length = 0;

    friend bool operator==(const Region&, const Region&) = default;
};

struct MarkerQuery {
    std::string query;
    Region region;  // covers both `?` markers
};

/// First `?text?` pair on a single line whose inner text is not blank. An
/// empty pair such as `??` is skipped as a whole.
std::optional<MarkerQuery> find_marker_query(std::string_view document);

/// Replace `removed` at code point `start` with `inserted`.
struct DocumentEdit {
    std::size_t start = 0;
    std::string removed;
    std::string inserted;

    DocumentEdit inverse() const { return DocumentEdit{start, inserted, removed}; }

    friend bool operator==(const DocumentEdit&, const DocumentEdit&) = default;
};

/// Throws ConflictError, leaving `document` untouched, when the document does
/// not hold `edit.removed` at `edit.start`.
void apply_edit(std::string& document, const DocumentEdit& edit);

/// True when `document` holds `expected` at code point `start`.
bool text_at(std::string_view document, std::size_t start, std::string_view expected);

struct InvocationSession {
    std::string id;
    std::string query;
    Origin origin = Origin::ContentAssist;
    std::vector<SnippetResult> snippets;
    std::size_t index = 0;
    std::string original_text;
    Region region;
    std::optional<bool> rating;
    std::size_t cycle_count = 0;

    std::string indent;         // leading whitespace of the region's line
    std::string inserted_text;  // block currently in the document
    bool restored = false;

    bool snippetless() const { return snippets.empty(); }
};

using SnippetProvider = std::function<std::vector<SnippetResult>(const std::string& query)>;

struct AssistOptions {
    std::string comment_leader = "//";
};

/// Runs invocations against a snippet source. The engine itself is stateless;
/// all per-invocation state lives in InvocationSession, which its owner must
/// not share between threads without locking.
class AssistEngine {
  public:
    explicit AssistEngine(SnippetProvider provider, AssistOptions options = {},
                          TelemetrySink* telemetry = nullptr);

    struct Started {
        InvocationSession session;
        std::optional<DocumentEdit> edit;  // empty for a snippetless session
    };

    /// Throws ArgumentError for a blank query or a region outside the
    /// document. For the selection and question-marks origins the region
    /// must hold the query's surface form (with its `?` markers for the
    /// latter); content assist may replace any typed fragment.
    Started begin_session(std::string_view document, std::string_view query, Origin origin, Region region) const;

    /// Swaps the inserted block for the next snippet, wrapping at the end.
    /// StateError on a snippetless or restored session, ConflictError when
    /// the block was modified.
    DocumentEdit next_snippet(InvocationSession& session, std::string_view document) const;

    /// Puts the original region text back.
    DocumentEdit restore(InvocationSession& session, std::string_view document) const;

    /// Records the rating once and forwards a telemetry record to the sink.
    TelemetryRecord rate(InvocationSession& session, bool helpful) const;

    /// Attribution line plus code, every line after the first prefixed by
    /// `indent`.
    std::string render_block(const SnippetResult& snippet, std::string_view indent) const;

    const AssistOptions& options() const { return options_; }

  private:
    SnippetProvider provider_;
    AssistOptions options_;
    TelemetrySink* telemetry_;
};

/// Leading whitespace of the line holding code point `start`, cut at `start`.
std::string line_indent(std::string_view document, std::size_t start);

/// 32 lowercase hex characters from a per-thread random generator.
std::string new_session_id();

/// Outcome of the batch question-marks flow: find the first marker, replace it
/// with the top snippet.
struct MarkerAssistResult {
    std::string document;
    std::string query;
    std::optional<SnippetResult> snippet;
};

/// Throws NotFoundError when the document has no usable marker.
MarkerAssistResult assist_first_marker(const AssistEngine& engine, std::string_view document);

}  // namespace snipassist
