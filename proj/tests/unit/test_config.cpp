#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "snipassist/config.hpp"
#include "snipassist/errors.hpp"

using namespace snipassist;

TEST(Config, Defaults) {
    Config c;
    EXPECT_EQ(c.max_threads, 4u);
    EXPECT_EQ(c.max_snippets_per_thread, 3u);
    EXPECT_EQ(c.suggest_limit_default, 10u);
    EXPECT_EQ(c.comment_leader, "//");
    EXPECT_EQ(c.base_url, "https://stackoverflow.com");
    EXPECT_EQ(c.port, 8080);
    EXPECT_EQ(c.session_idle, std::chrono::minutes(30));
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.limits().max_threads * c.limits().max_snippets_per_thread, 12u);
}

TEST(Config, ParseOverlaysBase) {
    std::istringstream in(
        "# retrieval\n"
        "max_threads = 2\n"
        "  max_snippets_per_thread=5  \n"
        "\n"
        "comment_leader = #\n"
        "store_dir = /data/store\n"
        "port = 9000\n"
        "session_idle_minutes = 5\n");
    auto c = parse_config(in);
    EXPECT_EQ(c.max_threads, 2u);
    EXPECT_EQ(c.max_snippets_per_thread, 5u);
    EXPECT_EQ(c.comment_leader, "#");
    EXPECT_EQ(c.store_dir, "/data/store");
    EXPECT_EQ(c.port, 9000);
    EXPECT_EQ(c.session_idle, std::chrono::minutes(5));
    EXPECT_EQ(c.suggest_limit_default, 10u);
}

TEST(Config, RejectsBadInput) {
    Config c;
    EXPECT_THROW(c.set("max_threads", "0"), ArgumentError);
    EXPECT_THROW(c.set("max_threads", "-1"), ArgumentError);
    EXPECT_THROW(c.set("max_threads", "3x"), ArgumentError);
    EXPECT_THROW(c.set("port", "70000"), ArgumentError);
    EXPECT_THROW(c.set("colour", "blue"), ArgumentError);
    std::istringstream no_eq("max_threads 3\n");
    EXPECT_THROW(parse_config(no_eq), ArgumentError);
    c.comment_leader.clear();
    EXPECT_THROW(c.validate(), ArgumentError);
    Config z;
    z.max_snippets_per_thread = 0;
    EXPECT_THROW(z.validate(), ArgumentError);
}

TEST(Config, FileAndEnvironment) {
    auto path = std::filesystem::temp_directory_path() / "snipassist_config_test.conf";
    std::ofstream(path) << "max_threads = 7\n";
    EXPECT_EQ(load_config_file(path).max_threads, 7u);

    ::setenv("SNIPASSIST_CONFIG", path.c_str(), 1);
    EXPECT_EQ(config_from_environment().max_threads, 7u);
    ::unsetenv("SNIPASSIST_CONFIG");
    EXPECT_EQ(config_from_environment().max_threads, 4u);

    std::filesystem::remove(path);
    EXPECT_THROW(load_config_file(path), IoError);
}
