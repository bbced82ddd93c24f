#include "snipassist/service.hpp"

#include <cctype>
#include <charconv>
#include <httplib.h>
#include <json.hpp>
#include <vector>

#include "snipassist/errors.hpp"
#include "snipassist/text.hpp"

namespace snipassist {

using json = nlohmann::json;

namespace {

HttpResponse json_response(int status, const json& body) { return HttpResponse{status, body.dump(), "application/json"}; }

Config checked(Config config) {
    config.validate();
    return config;
}

HttpResponse error_response(int status, std::string_view message) {
    return json_response(status, json{{"error", message}});
}

std::size_t parse_limit(std::string_view value) {
    std::size_t n = 0;
    auto r = std::from_chars(value.data(), value.data() + value.size(), n);
    if (r.ec != std::errc{} || r.ptr != value.data() + value.size() || n == 0) {
        throw ArgumentError("limit must be a positive integer");
    }
    return n;
}

json parse_body(std::string_view body) {
    if (text::is_blank(body)) return json::object();
    auto parsed = json::parse(body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) throw ArgumentError("request body must be a JSON object");
    return parsed;
}

std::string string_field(const json& body, const char* name, bool required) {
    auto it = body.find(name);
    if (it == body.end() || it->is_null()) {
        if (required) throw ArgumentError(std::string("missing field '") + name + "'");
        return {};
    }
    if (!it->is_string()) throw ArgumentError(std::string("field '") + name + "' must be a string");
    return it->get<std::string>();
}

std::size_t count_field(const json& region, const char* name) {
    auto it = region.find(name);
    if (it == region.end() || !it->is_number_unsigned()) {
        throw ArgumentError(std::string("region.") + name + " must be a non-negative integer");
    }
    return it->get<std::size_t>();
}

json snippet_json(const SnippetResult& s) {
    return json{{"code", s.code},
                {"source_url", s.source_url},
                {"thread_rank", s.thread_rank},
                {"answer_score", s.answer_score},
                {"answer_id", s.answer_id},
                {"position", s.position}};
}

template <typename F>
HttpResponse guarded(F&& f) {
    try {
        return f();
    } catch (const ArgumentError& e) {
        return error_response(400, e.what());
    } catch (const NotFoundError& e) {
        return error_response(404, e.what());
    } catch (const ConflictError& e) {
        return error_response(409, e.what());
    } catch (const StateError& e) {
        return error_response(409, e.what());
    } catch (const std::exception& e) {
        return error_response(500, e.what());
    }
}

}  // namespace

QueryParams parse_query_string(std::string_view query) {
    auto decode = [](std::string_view in) {
        std::string out;
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (in[i] == '+') {
                out.push_back(' ');
            } else if (in[i] == '%' && i + 2 < in.size() && std::isxdigit(static_cast<unsigned char>(in[i + 1])) &&
                       std::isxdigit(static_cast<unsigned char>(in[i + 2]))) {
                out.push_back(static_cast<char>(std::stoi(std::string(in.substr(i + 1, 2)), nullptr, 16)));
                i += 2;
            } else {
                out.push_back(in[i]);
            }
        }
        return out;
    };
    QueryParams params;
    for (auto pair : text::split(query, '&')) {
        if (pair.empty()) continue;
        auto eq = pair.find('=');
        auto key = decode(pair.substr(0, eq));
        auto value = eq == std::string_view::npos ? std::string() : decode(pair.substr(eq + 1));
        params.try_emplace(std::move(key), std::move(value));
    }
    return params;
}

StoreStats compute_stats(const CorpusStore& store, const CompletionIndex& index) {
    return StoreStats{store.questions().size(), store.answers().size(), store.snippets().size(),
                      index.entries().size()};
}

AssistService::AssistService(Config config, std::shared_ptr<const CorpusStore> store,
                             std::shared_ptr<const CompletionIndex> index, std::shared_ptr<TelemetrySink> telemetry,
                             Clock clock)
    : config_(checked(std::move(config))),
      store_(std::move(store)),
      index_(std::move(index)),
      telemetry_(std::move(telemetry)),
      clock_(clock ? std::move(clock) : Clock([] { return std::chrono::steady_clock::now(); })),
      searcher_(*store_, config_.limits()),
      engine_([this](const std::string& q) { return searcher_.retrieve(q); },
              AssistOptions{config_.comment_leader}, telemetry_.get()) {}

HttpResponse AssistService::handle(std::string_view method, std::string_view path, const QueryParams& params,
                                   std::string_view body) {
    constexpr std::string_view kSessions = "/v1/sessions";
    if (method == "GET") {
        if (path == "/v1/suggest") return suggest(params);
        if (path == "/v1/snippets") return snippets(params);
        if (path == "/v1/stats") return stats();
    } else if (method == "POST") {
        if (path == kSessions) return create_session(body);
        if (path.substr(0, kSessions.size() + 1) == "/v1/sessions/") {
            auto rest = path.substr(kSessions.size() + 1);
            auto slash = rest.find('/');
            if (slash != std::string_view::npos) {
                auto id = rest.substr(0, slash);
                auto action = rest.substr(slash + 1);
                if (action == "next") return next(id);
                if (action == "restore") return restore(id);
                if (action == "rate") return rate(id, body);
            }
        }
    }
    return error_response(404, "no route for " + std::string(method) + " " + std::string(path));
}

HttpResponse AssistService::suggest(const QueryParams& params) const {
    return guarded([&] {
        auto q = params.find("q");
        auto l = params.find("limit");
        auto limit = l == params.end() ? config_.suggest_limit_default : parse_limit(l->second);
        auto results = index_->suggest(q == params.end() ? std::string_view{} : q->second, limit);
        auto out = json::array();
        for (const auto& s : results) {
            out.push_back(json{{"text", s.text},
                               {"source_count", s.source_count},
                               {"match_kind", match_kind_name(s.match_kind)}});
        }
        return json_response(200, out);
    });
}

HttpResponse AssistService::snippets(const QueryParams& params) const {
    return guarded([&] {
        auto t = params.find("task");
        if (t == params.end()) throw ArgumentError("missing parameter 'task'");
        auto out = json::array();
        for (const auto& s : searcher_.retrieve(t->second)) out.push_back(snippet_json(s));
        return json_response(200, out);
    });
}

HttpResponse AssistService::stats() const {
    auto s = compute_stats(*store_, *index_);
    return json_response(200, json{{"question_count", s.question_count},
                                   {"answer_count", s.answer_count},
                                   {"snippet_count", s.snippet_count},
                                   {"task_count", s.task_count}});
}

HttpResponse AssistService::create_session(std::string_view body) {
    return guarded([&] {
        auto req = parse_body(body);
        auto origin_text = string_field(req, "origin", false);
        auto origin = origin_text.empty() ? std::optional<Origin>(Origin::ContentAssist) : parse_origin(origin_text);
        if (!origin) throw ArgumentError("unknown origin '" + origin_text + "'");
        auto document = string_field(req, "document", false);
        auto query = string_field(req, "query", false);

        Region region;
        auto r = req.find("region");
        bool has_region = r != req.end() && !r->is_null();
        if (!has_region && document.empty() && !text::is_blank(query) && *origin != Origin::ContentAssist) {
            // Without a document the invocation text itself is the document.
            document = *origin == Origin::QuestionMarks ? "?" + query + "?" : query;
            region = Region{0, text::utf8_length(document)};
        } else if (has_region) {
            if (!r->is_object()) throw ArgumentError("region must be an object");
            region = Region{count_field(*r, "start"), count_field(*r, "length")};
        } else if (*origin == Origin::QuestionMarks) {
            auto marker = find_marker_query(document);
            if (!marker) throw ArgumentError("document has no ?query? marker");
            region = marker->region;
            if (query.empty()) query = marker->query;
        } else if (*origin == Origin::Selection) {
            throw ArgumentError("selection sessions need a region");
        } else {
            region = Region{text::utf8_length(document), 0};
        }

        auto started = engine_.begin_session(document, query, *origin, region);
        if (started.edit) apply_edit(document, *started.edit);

        auto entry = std::make_shared<Entry>();
        entry->session = std::move(started.session);
        entry->document = document;
        entry->last_used = clock_();
        auto id = entry->session.id;
        auto count = entry->session.snippets.size();
        {
            std::lock_guard lock(registry_mutex_);
            sessions_.emplace(id, entry);
        }
        expire_idle();
        return json_response(200, json{{"id", id}, {"document", document}, {"index", 0}, {"count", count}});
    });
}

std::shared_ptr<AssistService::Entry> AssistService::find(std::string_view id) {
    expire_idle();
    std::lock_guard lock(registry_mutex_);
    auto it = sessions_.find(std::string(id));
    if (it == sessions_.end()) throw NotFoundError("unknown session '" + std::string(id) + "'");
    return it->second;
}

HttpResponse AssistService::next(std::string_view id) {
    return guarded([&] {
        auto entry = find(id);
        std::lock_guard lock(entry->mutex);
        entry->last_used = clock_();
        auto edit = engine_.next_snippet(entry->session, entry->document);
        apply_edit(entry->document, edit);
        return json_response(200, json{{"document", entry->document},
                                       {"index", entry->session.index},
                                       {"count", entry->session.snippets.size()}});
    });
}

HttpResponse AssistService::restore(std::string_view id) {
    return guarded([&] {
        auto entry = find(id);
        std::lock_guard lock(entry->mutex);
        entry->last_used = clock_();
        auto edit = engine_.restore(entry->session, entry->document);
        apply_edit(entry->document, edit);
        return json_response(200, json{{"document", entry->document}});
    });
}

HttpResponse AssistService::rate(std::string_view id, std::string_view body) {
    return guarded([&] {
        auto req = parse_body(body);
        auto it = req.find("helpful");
        if (it == req.end() || !it->is_boolean()) throw ArgumentError("field 'helpful' must be a boolean");
        auto entry = find(id);
        std::lock_guard lock(entry->mutex);
        entry->last_used = clock_();
        engine_.rate(entry->session, it->get<bool>());
        return HttpResponse{204, "", "application/json"};
    });
}

std::size_t AssistService::expire_idle() {
    auto now = clock_();
    std::vector<std::shared_ptr<Entry>> dropped;
    std::lock_guard lock(registry_mutex_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        std::unique_lock entry_lock(it->second->mutex, std::try_to_lock);
        bool idle = entry_lock.owns_lock() && now - it->second->last_used > config_.session_idle;
        if (idle) {
            entry_lock.unlock();
            dropped.push_back(std::move(it->second));
            it = sessions_.erase(it);
        } else {
            ++it;
        }
    }
    return dropped.size();
}

std::size_t AssistService::session_count() const {
    std::lock_guard lock(registry_mutex_);
    return sessions_.size();
}

struct HttpServer::Impl {
    AssistService* service;
    httplib::Server server;
};

HttpServer::HttpServer(AssistService& service) : impl_(std::make_unique<Impl>()) {
    impl_->service = &service;
    auto handler = [svc = &service](const httplib::Request& req, httplib::Response& res) {
        auto q = req.target.find('?');
        auto params = q == std::string::npos ? QueryParams{} : parse_query_string(std::string_view(req.target).substr(q + 1));
        auto out = svc->handle(req.method, req.path, params, req.body);
        res.status = out.status;
        res.set_header("Access-Control-Allow-Origin", "*");
        if (out.status != 204) res.set_content(out.body, out.content_type);
    };
    impl_->server.Get(R"(/v1/.*)", handler);
    impl_->server.Post(R"(/v1/.*)", handler);
    impl_->server.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
}

HttpServer::~HttpServer() { stop(); }

std::uint16_t HttpServer::bind(const std::string& host, std::uint16_t port) {
    int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound <= 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
    return static_cast<std::uint16_t>(bound);
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

}  // namespace snipassist
