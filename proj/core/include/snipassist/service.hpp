#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "snipassist/completion.hpp"
#include "snipassist/config.hpp"
#include "snipassist/corpus.hpp"
#include "snipassist/search.hpp"
#include "snipassist/session.hpp"
#include "snipassist/telemetry.hpp"

namespace snipassist {

struct StoreStats {
    std::size_t question_count = 0;
    std::size_t answer_count = 0;
    std::size_t snippet_count = 0;
    std::size_t task_count = 0;

    friend bool operator==(const StoreStats&, const StoreStats&) = default;
};

StoreStats compute_stats(const CorpusStore& store, const CompletionIndex& index);

struct HttpResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

using QueryParams = std::map<std::string, std::string, std::less<>>;

/// Decodes an `application/x-www-form-urlencoded` query string (`+` is a
/// space, `%XX` a byte). The first occurrence of a repeated key wins.
QueryParams parse_query_string(std::string_view query);

/// The /v1 JSON API, independent of any socket layer.
///
/// Store and index are shared read-only. Sessions live in a registry guarded
/// by one mutex, and each session carries its own mutex as well.
class AssistService {
  public:
    using Clock = std::function<std::chrono::steady_clock::time_point()>;

    AssistService(Config config, std::shared_ptr<const CorpusStore> store,
                  std::shared_ptr<const CompletionIndex> index, std::shared_ptr<TelemetrySink> telemetry = nullptr,
                  Clock clock = {});

    HttpResponse handle(std::string_view method, std::string_view path, const QueryParams& params,
                        std::string_view body);

    HttpResponse suggest(const QueryParams& params) const;
    HttpResponse snippets(const QueryParams& params) const;
    HttpResponse stats() const;
    HttpResponse create_session(std::string_view body);
    HttpResponse next(std::string_view id);
    HttpResponse restore(std::string_view id);
    HttpResponse rate(std::string_view id, std::string_view body);

    /// Drops sessions idle longer than the configured limit; returns how many.
    std::size_t expire_idle();
    std::size_t session_count() const;

    const Config& config() const { return config_; }

  private:
    struct Entry {
        std::mutex mutex;
        InvocationSession session;
        std::string document;
        std::chrono::steady_clock::time_point last_used;
    };

    std::shared_ptr<Entry> find(std::string_view id);

    Config config_;
    std::shared_ptr<const CorpusStore> store_;
    std::shared_ptr<const CompletionIndex> index_;
    std::shared_ptr<TelemetrySink> telemetry_;
    Clock clock_;
    SnippetSearcher searcher_;
    AssistEngine engine_;

    mutable std::mutex registry_mutex_;
    std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
};

/// HTTP front end over an AssistService.
class HttpServer {
  public:
    explicit HttpServer(AssistService& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds `host:port`, or an ephemeral port when `port` is 0. Returns the
    /// bound port. Throws IoError when the address is unavailable.
    std::uint16_t bind(const std::string& host, std::uint16_t port);
    /// Serves until stop(); blocks the calling thread.
    void listen();
    void stop();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace snipassist
