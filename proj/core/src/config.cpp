#include "snipassist/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "snipassist/errors.hpp"
#include "snipassist/text.hpp"

namespace snipassist {

namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    auto r = std::from_chars(value.data(), value.data() + value.size(), out);
    if (r.ec != std::errc{} || r.ptr != value.data() + value.size()) {
        throw ArgumentError("config " + std::string(key) + ": '" + std::string(value) + "' is not a number");
    }
    return out;
}

std::size_t parse_positive(std::string_view key, std::string_view value) {
    auto n = parse_number<std::size_t>(key, value);
    if (n == 0) throw ArgumentError("config " + std::string(key) + " must be positive");
    return n;
}

}  // namespace

void Config::set(std::string_view key, std::string_view value) {
    if (key == "store_dir") {
        store_dir = std::string(value);
    } else if (key == "index_path") {
        index_path = std::string(value);
    } else if (key == "telemetry_path") {
        telemetry_path = std::string(value);
    } else if (key == "host") {
        host = std::string(value);
    } else if (key == "port") {
        auto p = parse_number<unsigned>(key, value);
        if (p > std::numeric_limits<std::uint16_t>::max()) throw ArgumentError("config port out of range");
        port = static_cast<std::uint16_t>(p);
    } else if (key == "max_threads") {
        max_threads = parse_positive(key, value);
    } else if (key == "max_snippets_per_thread") {
        max_snippets_per_thread = parse_positive(key, value);
    } else if (key == "suggest_limit_default") {
        suggest_limit_default = parse_positive(key, value);
    } else if (key == "comment_leader") {
        comment_leader = std::string(value);
    } else if (key == "base_url") {
        base_url = std::string(value);
    } else if (key == "session_idle_minutes") {
        session_idle = std::chrono::minutes(parse_positive(key, value));
    } else {
        throw ArgumentError("unknown config key '" + std::string(key) + "'");
    }
}

void Config::validate() const {
    if (max_threads == 0 || max_snippets_per_thread == 0 || suggest_limit_default == 0) {
        throw ArgumentError("retrieval and suggestion limits must be positive");
    }
    if (comment_leader.empty()) throw ArgumentError("comment_leader is empty");
    if (base_url.empty()) throw ArgumentError("base_url is empty");
}

Config parse_config(std::istream& in, Config base) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = text::trim(line);
        if (body.empty() || body.front() == '#') continue;
        auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ArgumentError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        base.set(text::trim(body.substr(0, eq)), text::trim(body.substr(eq + 1)));
    }
    return base;
}

Config load_config_file(const std::filesystem::path& path, Config base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    return parse_config(in, std::move(base));
}

Config config_from_environment() {
    const char* path = std::getenv("SNIPASSIST_CONFIG");
    if (path == nullptr || *path == '\0') return Config{};
    return load_config_file(path);
}

}  // namespace snipassist
