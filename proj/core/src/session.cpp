#include "snipassist/session.hpp"

#include <array>
#include <random>

#include "snipassist/errors.hpp"
#include "snipassist/text.hpp"

namespace snipassist {

namespace {

std::size_t byte_at(std::string_view document, std::size_t start) {
    auto byte = text::utf8_byte_offset(document, start);
    if (byte == std::string_view::npos && start == text::utf8_length(document)) return document.size();
    return byte;
}

}  // namespace

std::string_view origin_name(Origin origin) {
    switch (origin) {
        case Origin::ContentAssist: return "content-assist";
        case Origin::Selection: return "selection";
        case Origin::QuestionMarks: return "question-marks";
    }
    return "content-assist";
}

std::optional<Origin> parse_origin(std::string_view name) {
    for (auto o : {Origin::ContentAssist, Origin::Selection, Origin::QuestionMarks}) {
        if (origin_name(o) == name) return o;
    }
    return std::nullopt;
}

std::optional<MarkerQuery> find_marker_query(std::string_view document) {
    std::size_t line_start = 0;
    while (line_start <= document.size()) {
        auto line_end = document.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = document.size();
        auto line = document.substr(line_start, line_end - line_start);

        auto open = line.find('?');
        while (open != std::string_view::npos) {
            auto close = line.find('?', open + 1);
            if (close == std::string_view::npos) break;
            auto inner = text::trim(line.substr(open + 1, close - open - 1));
            if (!inner.empty()) {
                auto begin = line_start + open;
                auto start = text::utf8_char_offset(document, begin);
                auto length = text::utf8_length(document.substr(begin, close - open + 1));
                return MarkerQuery{std::string(inner), Region{start, length}};
            }
            open = line.find('?', close + 1);
        }
        if (line_end == document.size()) break;
        line_start = line_end + 1;
    }
    return std::nullopt;
}

bool text_at(std::string_view document, std::size_t start, std::string_view expected) {
    auto byte = byte_at(document, start);
    if (byte == std::string_view::npos) return false;
    return document.substr(byte, expected.size()) == expected;
}

void apply_edit(std::string& document, const DocumentEdit& edit) {
    auto byte = byte_at(document, edit.start);
    if (byte == std::string_view::npos || document.compare(byte, edit.removed.size(), edit.removed) != 0) {
        throw ConflictError("document does not hold the expected text at offset " + std::to_string(edit.start));
    }
    document.replace(byte, edit.removed.size(), edit.inserted);
}

std::string line_indent(std::string_view document, std::size_t start) {
    auto byte = byte_at(document, start);
    if (byte == std::string_view::npos) return {};
    auto nl = document.substr(0, byte).rfind('\n');
    std::size_t line_start = nl == std::string_view::npos ? 0 : nl + 1;
    std::size_t end = line_start;
    while (end < byte && (document[end] == ' ' || document[end] == '\t')) ++end;
    return std::string(document.substr(line_start, end - line_start));
}

std::string new_session_id() {
    thread_local std::mt19937_64 rng{[] {
        std::random_device rd;
        std::seed_seq seq{rd(), rd(), rd(), rd()};
        return std::mt19937_64(seq);
    }()};
    static constexpr char kHex[] = "0123456789abcdef";
    std::string id;
    for (int word = 0; word < 2; ++word) {
        auto v = rng();
        for (int i = 0; i < 16; ++i) {
            id.push_back(kHex[v & 0xf]);
            v >>= 4;
        }
    }
    return id;
}

AssistEngine::AssistEngine(SnippetProvider provider, AssistOptions options, TelemetrySink* telemetry)
    : provider_(std::move(provider)), options_(std::move(options)), telemetry_(telemetry) {
    if (!provider_) throw ArgumentError("assist engine needs a snippet provider");
}

std::string AssistEngine::render_block(const SnippetResult& snippet, std::string_view indent) const {
    std::string block = options_.comment_leader + " source: " + snippet.source_url;
    auto code = text::trim_right(snippet.code);
    for (auto line : text::split(code, '\n')) {
        block.push_back('\n');
        block.append(indent);
        block.append(line);
    }
    return block;
}

AssistEngine::Started AssistEngine::begin_session(std::string_view document, std::string_view query, Origin origin,
                                                  Region region) const {
    if (text::is_blank(query)) throw ArgumentError("query is empty");
    auto doc_len = text::utf8_length(document);
    if (region.start > doc_len || region.length > doc_len - region.start) {
        throw ArgumentError("region [" + std::to_string(region.start) + ", +" + std::to_string(region.length) +
                            ") lies outside the document");
    }
    auto begin = byte_at(document, region.start);
    auto end = byte_at(document, region.start + region.length);
    std::string original(document.substr(begin, end - begin));

    switch (origin) {
        case Origin::Selection:
            if (original != query) throw ArgumentError("region text does not match the selected query");
            break;
        case Origin::QuestionMarks:
            if (original.size() < 2 || original.front() != '?' || original.back() != '?' ||
                text::trim(std::string_view(original).substr(1, original.size() - 2)) != text::trim(query)) {
                throw ArgumentError("region does not hold the ?query? marker");
            }
            break;
        case Origin::ContentAssist: break;
    }

    Started out;
    auto& s = out.session;
    s.id = new_session_id();
    s.query = std::string(origin == Origin::QuestionMarks ? text::trim(query) : query);
    s.origin = origin;
    s.region = region;
    s.original_text = std::move(original);
    s.indent = line_indent(document, region.start);
    s.snippets = provider_(s.query);
    if (s.snippets.empty()) return out;

    s.inserted_text = render_block(s.snippets[0], s.indent);
    out.edit = DocumentEdit{region.start, s.original_text, s.inserted_text};
    return out;
}

DocumentEdit AssistEngine::next_snippet(InvocationSession& s, std::string_view document) const {
    if (s.snippetless()) throw StateError("session has no snippets to cycle");
    if (s.restored) throw StateError("session was restored");
    if (!text_at(document, s.region.start, s.inserted_text)) {
        throw ConflictError("inserted snippet was modified in the document");
    }
    auto next = (s.index + 1) % s.snippets.size();
    auto block = render_block(s.snippets[next], s.indent);
    DocumentEdit edit{s.region.start, s.inserted_text, block};
    s.index = next;
    s.inserted_text = std::move(block);
    ++s.cycle_count;
    return edit;
}

DocumentEdit AssistEngine::restore(InvocationSession& s, std::string_view document) const {
    if (s.snippetless()) throw StateError("session inserted nothing");
    if (s.restored) throw StateError("session was already restored");
    if (!text_at(document, s.region.start, s.inserted_text)) {
        throw ConflictError("inserted snippet was modified in the document");
    }
    s.restored = true;
    return DocumentEdit{s.region.start, s.inserted_text, s.original_text};
}

TelemetryRecord AssistEngine::rate(InvocationSession& s, bool helpful) const {
    if (s.rating) throw StateError("session was already rated");
    s.rating = helpful;
    TelemetryRecord record{s.query,   std::string(origin_name(s.origin)), s.cycle_count, helpful, utc_timestamp(),
                           s.index, s.snippets.size()};
    if (telemetry_ != nullptr) telemetry_->append(record);
    return record;
}

MarkerAssistResult assist_first_marker(const AssistEngine& engine, std::string_view document) {
    auto marker = find_marker_query(document);
    if (!marker) throw NotFoundError("no ?query? marker in document");
    auto started = engine.begin_session(document, marker->query, Origin::QuestionMarks, marker->region);
    MarkerAssistResult result{std::string(document), marker->query, std::nullopt};
    if (started.edit) {
        apply_edit(result.document, *started.edit);
        result.snippet = started.session.snippets.front();
    }
    return result;
}

}  // namespace snipassist
