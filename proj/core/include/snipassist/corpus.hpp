#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace snipassist {

using PostId = std::uint64_t;

inline constexpr std::string_view kDefaultBaseUrl = "https://stackoverflow.com";
inline constexpr std::string_view kDefaultTagFilter = "java";

struct Question {
    PostId id = 0;
    std::string title;
    std::vector<std::string> tags;  // lowercase, unique, in dump order
    std::int64_t score = 0;
    std::optional<PostId> accepted_answer_id;
    std::string body_html;
};

struct Answer {
    PostId id = 0;
    PostId question_id = 0;
    std::int64_t score = 0;
    std::string body_html;
};

struct CodeSnippet {
    PostId answer_id = 0;
    std::uint32_t ordinal = 0;  // position among the answer's extracted blocks
    std::string code;
    std::string source_url;
};

/// A question and its answers in retrieval order: score descending, the
/// accepted answer first among equal scores, then ascending id.
struct Thread {
    Question question;
    std::vector<Answer> answers;
};

struct IngestReport {
    std::size_t questions = 0;
    std::size_t answers = 0;
    std::size_t snippets = 0;
    /// Malformed rows, duplicate ids and answers whose parent is absent.
    std::size_t skipped = 0;
    /// Well-formed rows left out on purpose: questions outside the tag
    /// filter, their answers, and post types other than 1 and 2.
    std::size_t ignored = 0;
    /// Row-level diagnostics for skipped rows (capped).
    std::vector<std::string> diagnostics;
};

struct IngestOptions {
    /// Questions must carry this tag. Empty keeps every question.
    std::string tag_filter{kDefaultTagFilter};
    std::string base_url{kDefaultBaseUrl};
};

/// Contents of every `<pre><code>...</code></pre>` region of an HTML body in
/// document order. Inner tags are stripped, entities decoded, line breaks
/// kept. Inline `<code>` outside `<pre>`, unclosed regions and regions that
/// are blank after decoding are not returned.
std::vector<std::string> extract_code_blocks(std::string_view body_html);

/// `{base_url}/a/{answer_id}`; a trailing slash on base_url is dropped.
std::string answer_url(std::string_view base_url, PostId answer_id);

/// Parses the `<tag1><tag2>` encoding into lowercase unique tag names.
std::vector<std::string> parse_tags(std::string_view encoded);

/// Immutable, queryable collection of questions, answers and code snippets.
///
/// Built once (ingest or load) and then only read, so a const store may be
/// shared between threads freely.
class CorpusStore {
  public:
    CorpusStore() = default;

    static CorpusStore ingest(const std::filesystem::path& dump, const IngestOptions& options,
                              IngestReport* report = nullptr);
    /// Same as ingest() but over an in-memory dump.
    static CorpusStore ingest_text(std::string_view dump, const IngestOptions& options,
                                   IngestReport* report = nullptr);

    /// Writes `<dir>/store.json`; the directory is created if needed.
    void save(const std::filesystem::path& dir) const;
    static CorpusStore load(const std::filesystem::path& dir);
    /// The exact bytes save() writes.
    std::string serialize() const;
    static CorpusStore deserialize(std::string_view data);

    /// Throws NotFoundError for an unknown id.
    Thread get_thread(PostId question_id) const;
    const Question& question(PostId id) const;
    const Question* find_question(PostId id) const;
    const Answer* find_answer(PostId id) const;

    /// Answers of a question in Thread order.
    std::vector<const Answer*> ordered_answers(PostId question_id) const;
    /// Snippets of one answer by ordinal.
    std::span<const CodeSnippet> snippets_of(PostId answer_id) const;

    std::span<const Question> questions() const { return questions_; }
    std::span<const Answer> answers() const { return answers_; }
    std::span<const CodeSnippet> snippets() const { return snippets_; }

    const std::string& base_url() const { return base_url_; }
    const std::string& tag_filter() const { return tag_filter_; }

  private:
    void build_lookups();

    std::string base_url_{kDefaultBaseUrl};
    std::string tag_filter_{kDefaultTagFilter};
    std::vector<Question> questions_;     // ascending id
    std::vector<Answer> answers_;         // ascending id
    std::vector<CodeSnippet> snippets_;   // ascending (answer_id, ordinal)

    std::unordered_map<PostId, std::size_t> question_pos_;
    std::unordered_map<PostId, std::size_t> answer_pos_;
    std::unordered_map<PostId, std::vector<std::size_t>> thread_answers_;  // Thread order
    std::unordered_map<PostId, std::pair<std::size_t, std::size_t>> snippet_range_;
};

/// Report line-format: `key: value` per line.
std::string format_report(const IngestReport& report);

}  // namespace snipassist
