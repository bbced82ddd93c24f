#include "snipassist/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "snipassist/errors.hpp"
#include "snipassist/text.hpp"

namespace snipassist {

namespace {

constexpr std::size_t kMaxDiagnostics = 100;

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
    if (pos + prefix.size() > s.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (lower(s[pos + i]) != prefix[i]) return false;
    }
    return true;
}

std::size_t find_ci(std::string_view s, std::string_view needle, std::size_t from) {
    if (needle.size() > s.size()) return std::string_view::npos;
    for (std::size_t i = from; i + needle.size() <= s.size(); ++i) {
        if (starts_with_ci(s, i, needle)) return i;
    }
    return std::string_view::npos;
}

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::size_t skip_ws(std::string_view s, std::size_t pos) {
    while (pos < s.size() && is_ws(s[pos])) ++pos;
    return pos;
}

/// Finds an opening tag `<name` followed by '>' or whitespace at or after pos.
std::size_t find_open_tag(std::string_view s, std::string_view name, std::size_t pos) {
    std::string needle = "<" + std::string(name);
    while (true) {
        pos = find_ci(s, needle, pos);
        if (pos == std::string_view::npos) return pos;
        auto after = pos + needle.size();
        if (after < s.size() && (s[after] == '>' || is_ws(s[after]))) return pos;
        pos = after;
    }
}

bool open_tag_at(std::string_view s, std::size_t pos, std::string_view name) {
    if (pos >= s.size() || s[pos] != '<') return false;
    if (!starts_with_ci(s, pos + 1, name)) return false;
    auto after = pos + 1 + name.size();
    return after < s.size() && (s[after] == '>' || is_ws(s[after]));
}

template <typename T>
std::optional<T> parse_int(std::string_view s) {
    s = text::trim(s);
    if (s.empty()) return std::nullopt;
    T value{};
    auto r = std::from_chars(s.data(), s.data() + s.size(), value);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

using Attributes = std::map<std::string, std::string, std::less<>>;

/// Parses `name="value"` pairs of one row element. Returns false when the
/// attribute syntax is broken.
bool parse_attributes(std::string_view element, Attributes& out) {
    std::size_t i = 0;
    while (true) {
        i = skip_ws(element, i);
        if (i >= element.size()) return true;
        auto eq = element.find('=', i);
        if (eq == std::string_view::npos) return false;
        auto name = text::trim(element.substr(i, eq - i));
        if (name.empty()) return false;
        auto q = skip_ws(element, eq + 1);
        if (q >= element.size() || (element[q] != '"' && element[q] != '\'')) return false;
        auto close = element.find(element[q], q + 1);
        if (close == std::string_view::npos) return false;
        out.emplace(std::string(name), text::decode_entities(element.substr(q + 1, close - q - 1)));
        i = close + 1;
    }
}

struct RawRow {
    std::size_t row_number = 0;
    Attributes attrs;
};

const std::string* attr(const RawRow& row, std::string_view name) {
    auto it = row.attrs.find(name);
    return it == row.attrs.end() ? nullptr : &it->second;
}

void note(IngestReport& report, std::size_t row_number, std::string_view message) {
    ++report.skipped;
    if (report.diagnostics.size() < kMaxDiagnostics) {
        report.diagnostics.push_back("row " + std::to_string(row_number) + ": " + std::string(message));
    }
}

}  // namespace

std::vector<std::string> extract_code_blocks(std::string_view body) {
    std::vector<std::string> blocks;
    std::size_t pos = 0;
    while (true) {
        auto pre = find_open_tag(body, "pre", pos);
        if (pre == std::string_view::npos) break;
        auto pre_end = body.find('>', pre);
        if (pre_end == std::string_view::npos) break;
        auto code_open = skip_ws(body, pre_end + 1);
        if (!open_tag_at(body, code_open, "code")) {
            pos = pre_end + 1;
            continue;
        }
        auto code_open_end = body.find('>', code_open);
        if (code_open_end == std::string_view::npos) break;
        auto content_start = code_open_end + 1;
        auto close = find_ci(body, "</code>", content_start);
        if (close == std::string_view::npos) break;
        // A new <pre> before the closing tag means this region never closed.
        auto nested = find_open_tag(body, "pre", content_start);
        if (nested != std::string_view::npos && nested < close) {
            pos = nested;
            continue;
        }
        auto after = skip_ws(body, close + 7);
        if (!starts_with_ci(body, after, "</pre>")) {
            pos = close + 7;
            continue;
        }
        auto code = text::decode_entities(text::strip_tags(body.substr(content_start, close - content_start)));
        if (!text::is_blank(code)) blocks.push_back(std::move(code));
        pos = after + 6;
    }
    return blocks;
}

std::string answer_url(std::string_view base_url, PostId answer_id) {
    while (!base_url.empty() && base_url.back() == '/') base_url.remove_suffix(1);
    return std::string(base_url) + "/a/" + std::to_string(answer_id);
}

std::vector<std::string> parse_tags(std::string_view encoded) {
    std::vector<std::string> tags;
    std::size_t pos = 0;
    while (true) {
        auto open = encoded.find('<', pos);
        if (open == std::string_view::npos) break;
        auto close = encoded.find('>', open + 1);
        if (close == std::string_view::npos) break;
        auto tag = text::to_lower(text::trim(encoded.substr(open + 1, close - open - 1)));
        if (!tag.empty() && std::find(tags.begin(), tags.end(), tag) == tags.end()) {
            tags.push_back(std::move(tag));
        }
        pos = close + 1;
    }
    // Newer dumps use `|tag1|tag2|`.
    if (tags.empty() && encoded.find('|') != std::string_view::npos) {
        for (auto piece : text::split(encoded, '|')) {
            auto tag = text::to_lower(text::trim(piece));
            if (!tag.empty() && std::find(tags.begin(), tags.end(), tag) == tags.end()) {
                tags.push_back(std::move(tag));
            }
        }
    }
    return tags;
}

CorpusStore CorpusStore::ingest(const std::filesystem::path& dump, const IngestOptions& options,
                                IngestReport* report) {
    std::ifstream in(dump, std::ios::binary);
    if (!in) throw IoError("cannot open posts dump '" + dump.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("read failure in posts dump '" + dump.string() + "'");
    try {
        return ingest_text(buffer.str(), options, report);
    } catch (const IoError& e) {
        throw IoError(dump.string() + ": " + e.what());
    }
}

CorpusStore CorpusStore::ingest_text(std::string_view dump, const IngestOptions& options,
                                     IngestReport* report_out) {
    if (find_open_tag(dump, "posts", 0) == std::string_view::npos) {
        throw IoError("not a posts dump: missing <posts> root element");
    }

    IngestReport report;
    std::vector<RawRow> question_rows;
    std::vector<RawRow> answer_rows;

    std::size_t row_number = 0;
    std::size_t pos = 0;
    while (true) {
        auto start = find_open_tag(dump, "row", pos);
        if (start == std::string_view::npos) break;
        ++row_number;
        auto end = dump.find('>', start);
        auto next_row = find_open_tag(dump, "row", start + 4);
        if (end == std::string_view::npos || (next_row != std::string_view::npos && next_row < end)) {
            note(report, row_number, "unterminated row element");
            if (next_row == std::string_view::npos) break;
            pos = next_row;
            continue;
        }
        auto inner_end = (end > start && dump[end - 1] == '/') ? end - 1 : end;
        RawRow row{row_number, {}};
        if (!parse_attributes(dump.substr(start + 4, inner_end - start - 4), row.attrs)) {
            note(report, row_number, "malformed attribute syntax");
            pos = end + 1;
            continue;
        }
        pos = end + 1;

        const auto* type = attr(row, "PostTypeId");
        auto type_id = type ? parse_int<int>(*type) : std::nullopt;
        if (!type_id) {
            note(report, row_number, "missing or invalid PostTypeId");
            continue;
        }
        if (*type_id == 1) {
            question_rows.push_back(std::move(row));
        } else if (*type_id == 2) {
            answer_rows.push_back(std::move(row));
        } else {
            ++report.ignored;
        }
    }

    CorpusStore store;
    store.base_url_ = options.base_url;
    store.tag_filter_ = text::to_lower(text::trim(options.tag_filter));

    std::set<PostId> filtered_questions;
    for (const auto& row : question_rows) {
        const auto* id_text = attr(row, "Id");
        auto id = id_text ? parse_int<PostId>(*id_text) : std::nullopt;
        if (!id || *id == 0) {
            note(report, row.row_number, "missing or invalid Id");
            continue;
        }
        const auto* title = attr(row, "Title");
        if (!title || text::is_blank(*title)) {
            note(report, row.row_number, "question " + std::to_string(*id) + " has an empty title");
            continue;
        }
        const auto* score_text = attr(row, "Score");
        auto score = score_text ? parse_int<std::int64_t>(*score_text) : std::optional<std::int64_t>{0};
        if (!score) {
            note(report, row.row_number, "question " + std::to_string(*id) + " has an invalid Score");
            continue;
        }
        Question q;
        q.id = *id;
        q.title = std::string(text::trim(*title));
        q.score = *score;
        if (const auto* tags = attr(row, "Tags")) q.tags = parse_tags(*tags);
        if (const auto* accepted = attr(row, "AcceptedAnswerId")) {
            auto acc = parse_int<PostId>(*accepted);
            if (acc && *acc > 0) q.accepted_answer_id = *acc;
        }
        if (const auto* body = attr(row, "Body")) q.body_html = *body;

        if (!store.tag_filter_.empty() &&
            std::find(q.tags.begin(), q.tags.end(), store.tag_filter_) == q.tags.end()) {
            filtered_questions.insert(q.id);
            ++report.ignored;
            continue;
        }
        if (store.question_pos_.count(q.id) != 0) {
            note(report, row.row_number, "duplicate question id " + std::to_string(q.id));
            continue;
        }
        store.question_pos_.emplace(q.id, 0);
        store.questions_.push_back(std::move(q));
    }

    std::set<PostId> answer_ids;
    for (const auto& row : answer_rows) {
        const auto* id_text = attr(row, "Id");
        auto id = id_text ? parse_int<PostId>(*id_text) : std::nullopt;
        if (!id || *id == 0) {
            note(report, row.row_number, "missing or invalid Id");
            continue;
        }
        const auto* parent_text = attr(row, "ParentId");
        auto parent = parent_text ? parse_int<PostId>(*parent_text) : std::nullopt;
        if (!parent || *parent == 0) {
            note(report, row.row_number, "answer " + std::to_string(*id) + " has no valid ParentId");
            continue;
        }
        const auto* score_text = attr(row, "Score");
        auto score = score_text ? parse_int<std::int64_t>(*score_text) : std::optional<std::int64_t>{0};
        if (!score) {
            note(report, row.row_number, "answer " + std::to_string(*id) + " has an invalid Score");
            continue;
        }
        if (filtered_questions.count(*parent) != 0 && store.question_pos_.count(*parent) == 0) {
            ++report.ignored;
            continue;
        }
        if (store.question_pos_.count(*parent) == 0) {
            note(report, row.row_number,
                 "answer " + std::to_string(*id) + " references absent question " + std::to_string(*parent));
            continue;
        }
        if (!answer_ids.insert(*id).second || store.question_pos_.count(*id) != 0) {
            note(report, row.row_number, "duplicate post id " + std::to_string(*id));
            continue;
        }
        Answer a;
        a.id = *id;
        a.question_id = *parent;
        a.score = *score;
        if (const auto* body = attr(row, "Body")) a.body_html = *body;
        store.answers_.push_back(std::move(a));
    }

    std::sort(store.questions_.begin(), store.questions_.end(),
              [](const Question& l, const Question& r) { return l.id < r.id; });
    std::sort(store.answers_.begin(), store.answers_.end(),
              [](const Answer& l, const Answer& r) { return l.id < r.id; });

    for (const auto& a : store.answers_) {
        auto blocks = extract_code_blocks(a.body_html);
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            store.snippets_.push_back(CodeSnippet{a.id, static_cast<std::uint32_t>(i), std::move(blocks[i]),
                                                  answer_url(store.base_url_, a.id)});
        }
    }
    store.build_lookups();

    report.questions = store.questions_.size();
    report.answers = store.answers_.size();
    report.snippets = store.snippets_.size();
    if (report_out) *report_out = std::move(report);
    return store;
}

void CorpusStore::build_lookups() {
    question_pos_.clear();
    answer_pos_.clear();
    thread_answers_.clear();
    snippet_range_.clear();
    for (std::size_t i = 0; i < questions_.size(); ++i) question_pos_.emplace(questions_[i].id, i);
    for (std::size_t i = 0; i < answers_.size(); ++i) {
        answer_pos_.emplace(answers_[i].id, i);
        thread_answers_[answers_[i].question_id].push_back(i);
    }
    for (auto& [qid, positions] : thread_answers_) {
        const auto& q = questions_[question_pos_.at(qid)];
        auto accepted = q.accepted_answer_id;
        std::sort(positions.begin(), positions.end(), [&](std::size_t l, std::size_t r) {
            const auto& a = answers_[l];
            const auto& b = answers_[r];
            if (a.score != b.score) return a.score > b.score;
            bool a_acc = accepted && a.id == *accepted;
            bool b_acc = accepted && b.id == *accepted;
            if (a_acc != b_acc) return a_acc;
            return a.id < b.id;
        });
    }
    std::size_t i = 0;
    while (i < snippets_.size()) {
        std::size_t j = i;
        while (j < snippets_.size() && snippets_[j].answer_id == snippets_[i].answer_id) ++j;
        snippet_range_.emplace(snippets_[i].answer_id, std::make_pair(i, j));
        i = j;
    }
}

const Question* CorpusStore::find_question(PostId id) const {
    auto it = question_pos_.find(id);
    return it == question_pos_.end() ? nullptr : &questions_[it->second];
}

const Answer* CorpusStore::find_answer(PostId id) const {
    auto it = answer_pos_.find(id);
    return it == answer_pos_.end() ? nullptr : &answers_[it->second];
}

const Question& CorpusStore::question(PostId id) const {
    const auto* q = find_question(id);
    if (!q) throw NotFoundError("unknown question id " + std::to_string(id));
    return *q;
}

std::vector<const Answer*> CorpusStore::ordered_answers(PostId question_id) const {
    std::vector<const Answer*> out;
    auto it = thread_answers_.find(question_id);
    if (it == thread_answers_.end()) return out;
    out.reserve(it->second.size());
    for (auto pos : it->second) out.push_back(&answers_[pos]);
    return out;
}

Thread CorpusStore::get_thread(PostId question_id) const {
    Thread thread{question(question_id), {}};
    for (const auto* a : ordered_answers(question_id)) thread.answers.push_back(*a);
    return thread;
}

std::span<const CodeSnippet> CorpusStore::snippets_of(PostId answer_id) const {
    auto it = snippet_range_.find(answer_id);
    if (it == snippet_range_.end()) return {};
    auto [b, e] = it->second;
    return std::span<const CodeSnippet>(snippets_).subspan(b, e - b);
}

std::string format_report(const IngestReport& report) {
    std::ostringstream out;
    out << "questions: " << report.questions << '\n'
        << "answers: " << report.answers << '\n'
        << "snippets: " << report.snippets << '\n'
        << "skipped: " << report.skipped << '\n'
        << "ignored: " << report.ignored << '\n';
    return out.str();
}

}  // namespace snipassist
