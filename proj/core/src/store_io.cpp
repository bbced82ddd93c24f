#include <fstream>
#include <sstream>

#include <json.hpp>

#include "snipassist/corpus.hpp"
#include "snipassist/errors.hpp"

namespace snipassist {

namespace {

constexpr std::string_view kStoreFormat = "snipassist-store";
constexpr int kStoreVersion = 1;
constexpr std::string_view kStoreFile = "store.json";

using nlohmann::json;

}  // namespace

std::string CorpusStore::serialize() const {
    json doc;
    doc["format"] = kStoreFormat;
    doc["version"] = kStoreVersion;
    doc["base_url"] = base_url_;
    doc["tag_filter"] = tag_filter_;

    auto& questions = doc["questions"] = json::array();
    for (const auto& q : questions_) {
        json jq;
        jq["id"] = q.id;
        jq["title"] = q.title;
        jq["tags"] = q.tags;
        jq["score"] = q.score;
        jq["accepted_answer_id"] = q.accepted_answer_id ? json(*q.accepted_answer_id) : json(nullptr);
        jq["body_html"] = q.body_html;
        questions.push_back(std::move(jq));
    }
    auto& answers = doc["answers"] = json::array();
    for (const auto& a : answers_) {
        answers.push_back(json{{"id", a.id}, {"question_id", a.question_id}, {"score", a.score},
                               {"body_html", a.body_html}});
    }
    auto& snippets = doc["snippets"] = json::array();
    for (const auto& s : snippets_) {
        snippets.push_back(json{{"answer_id", s.answer_id}, {"ordinal", s.ordinal}, {"code", s.code},
                                {"source_url", s.source_url}});
    }
    // Keys of json objects are sorted, so equal stores dump to equal bytes.
    return doc.dump(1) + "\n";
}

CorpusStore CorpusStore::deserialize(std::string_view data) {
    json doc;
    try {
        doc = json::parse(data);
    } catch (const json::exception& e) {
        throw IoError(std::string("store is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != kStoreFormat) {
        throw IoError("store has an unknown format tag");
    }
    if (doc.value("version", 0) != kStoreVersion) {
        throw IoError("unsupported store version " + std::to_string(doc.value("version", 0)));
    }
    CorpusStore store;
    try {
        store.base_url_ = doc.at("base_url").get<std::string>();
        store.tag_filter_ = doc.at("tag_filter").get<std::string>();
        for (const auto& jq : doc.at("questions")) {
            Question q;
            q.id = jq.at("id").get<PostId>();
            q.title = jq.at("title").get<std::string>();
            q.tags = jq.at("tags").get<std::vector<std::string>>();
            q.score = jq.at("score").get<std::int64_t>();
            if (!jq.at("accepted_answer_id").is_null()) q.accepted_answer_id = jq["accepted_answer_id"].get<PostId>();
            q.body_html = jq.at("body_html").get<std::string>();
            store.questions_.push_back(std::move(q));
        }
        for (const auto& ja : doc.at("answers")) {
            store.answers_.push_back(Answer{ja.at("id").get<PostId>(), ja.at("question_id").get<PostId>(),
                                            ja.at("score").get<std::int64_t>(),
                                            ja.at("body_html").get<std::string>()});
        }
        for (const auto& js : doc.at("snippets")) {
            store.snippets_.push_back(CodeSnippet{js.at("answer_id").get<PostId>(),
                                                  js.at("ordinal").get<std::uint32_t>(),
                                                  js.at("code").get<std::string>(),
                                                  js.at("source_url").get<std::string>()});
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("store is missing fields: ") + e.what());
    }
    store.build_lookups();
    for (const auto& a : store.answers_) {
        if (!store.find_question(a.question_id)) {
            throw IoError("store answer " + std::to_string(a.id) + " references an absent question");
        }
    }
    return store;
}

void CorpusStore::save(const std::filesystem::path& dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create store directory '" + dir.string() + "': " + ec.message());
    auto path = dir / kStoreFile;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << serialize();
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

CorpusStore CorpusStore::load(const std::filesystem::path& dir) {
    auto path = dir / kStoreFile;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("no store at '" + dir.string() + "' (missing " + std::string(kStoreFile) + ")");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return deserialize(buffer.str());
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

}  // namespace snipassist
