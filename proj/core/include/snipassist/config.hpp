#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "snipassist/search.hpp"

namespace snipassist {

struct Config {
    std::filesystem::path store_dir = "store";
    std::filesystem::path index_path = "index.tsv";
    std::filesystem::path telemetry_path = "telemetry.tsv";
    std::string host = "127.0.0.1";
    std::uint16_t port = 8080;
    std::size_t max_threads = 4;
    std::size_t max_snippets_per_thread = 3;
    std::size_t suggest_limit_default = 10;
    std::string comment_leader = "//";
    std::string base_url = "https://stackoverflow.com";
    std::chrono::minutes session_idle{30};

    RetrievalLimits limits() const { return RetrievalLimits{max_threads, max_snippets_per_thread}; }

    /// Sets one field from its textual key. Throws ArgumentError on an
    /// unknown key or a bad value.
    void set(std::string_view key, std::string_view value);

    /// Throws ArgumentError when a count is zero or a text field is empty.
    void validate() const;
};

/// `key = value` lines; `#` starts a comment line.
Config parse_config(std::istream& in, Config base = {});
Config load_config_file(const std::filesystem::path& path, Config base = {});

/// Defaults, overlaid with the file named by SNIPASSIST_CONFIG when set.
Config config_from_environment();

}  // namespace snipassist
