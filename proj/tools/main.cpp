// snipassist command-line entry point.

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "snipassist/completion.hpp"
#include "snipassist/config.hpp"
#include "snipassist/corpus.hpp"
#include "snipassist/errors.hpp"
#include "snipassist/lexicon.hpp"
#include "snipassist/search.hpp"
#include "snipassist/service.hpp"
#include "snipassist/session.hpp"
#include "snipassist/synthetic.hpp"
#include "snipassist/tasks.hpp"
#include "snipassist/telemetry.hpp"

namespace sa = snipassist;

namespace {

enum ExitCode { kOk = 0, kNoResult = 1, kUsage = 2, kIo = 3, kInternal = 4 };

/// Config keys that can be overridden from the command line, in flag order.
struct Overrides {
    std::optional<std::string> config_file;
    std::map<std::string, std::string> values;

    void bind(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help) {
        app.add_option_function<std::string>(
            flag, [this, key](const std::string& v) { values[key] = v; }, help);
    }

    sa::Config resolve() const {
        auto config = config_file ? sa::load_config_file(*config_file) : sa::config_from_environment();
        for (const auto& [k, v] : values) config.set(k, v);
        config.validate();
        return config;
    }
};

sa::Lexicon load_lexicon(const std::optional<std::string>& dir) {
    return dir ? sa::Lexicon::load_dir(*dir) : sa::Lexicon::load_default();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sa::IoError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw sa::IoError("cannot write " + path);
    out << data;
    if (!out.flush()) throw sa::IoError("write failed for " + path);
}

double ms(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

sa::HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Natural-language code snippet assistant: task extraction, completion and snippet retrieval"};
    app.require_subcommand(1);
    Overrides ov;
    app.add_option("--config", ov.config_file, "key = value config file (default: $SNIPASSIST_CONFIG)");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Parse a posts dump into a corpus store");
    std::string dump_path;
    std::optional<std::string> tag;
    ingest->add_option("dump", dump_path, "Posts.xml dump")->required();
    ingest->add_option("--tag", tag, "Keep questions carrying this tag (empty keeps all)");
    ov.bind(*ingest, "--store", "store_dir", "Store directory");
    ov.bind(*ingest, "--base-url", "base_url", "Site base URL for answer links");

    // extract
    auto* extract = app.add_subcommand("extract", "Extract task phrases from every stored title");
    std::string tasks_out = "tasks.tsv";
    std::optional<std::string> lexicon_dir;
    extract->add_option("--out", tasks_out, "Task TSV output")->capture_default_str();
    extract->add_option("--lexicon", lexicon_dir, "Directory holding the word lists");
    std::optional<std::string> actions_file;
    std::optional<std::string> objects_file;
    extract->add_option("--actions", actions_file, "Action verb list, replaces the lexicon's");
    extract->add_option("--objects", objects_file, "Generic object list, replaces the lexicon's");
    ov.bind(*extract, "--store", "store_dir", "Store directory");

    // build-index
    auto* build = app.add_subcommand("build-index", "Build the completion index from a task TSV");
    std::string tasks_in = "tasks.tsv";
    build->add_option("--tasks", tasks_in, "Task TSV input")->capture_default_str();
    ov.bind(*build, "--index", "index_path", "Index output path");

    // suggest
    auto* suggest = app.add_subcommand("suggest", "Print task suggestions for a typed fragment");
    std::string query;
    std::optional<std::size_t> limit;
    suggest->add_option("query", query, "Typed fragment")->required();
    suggest->add_option("--limit", limit, "Maximum suggestions")->check(CLI::PositiveNumber);
    ov.bind(*suggest, "--index", "index_path", "Index path");

    // snippets
    auto* snippets = app.add_subcommand("snippets", "Retrieve ranked code snippets for a task");
    std::string task;
    snippets->add_option("task", task, "Task text")->required();
    bool show_all = false;
    snippets->add_flag("--all", show_all, "Print every result with its position, thread rank and answer score");
    ov.bind(*snippets, "--store", "store_dir", "Store directory");
    ov.bind(*snippets, "--max-threads", "max_threads", "Threads to read");
    ov.bind(*snippets, "--max-snippets", "max_snippets_per_thread", "Snippets per thread");
    ov.bind(*snippets, "--comment-leader", "comment_leader", "Line comment leader for the source line");

    // assist
    auto* assist = app.add_subcommand("assist", "Replace the first ?query? marker in a file with a snippet");
    std::string assist_file;
    std::optional<std::string> assist_out;
    assist->add_option("file", assist_file, "Source file")->required();
    assist->add_option("--out", assist_out, "Write here instead of editing in place");
    ov.bind(*assist, "--store", "store_dir", "Store directory");
    ov.bind(*assist, "--comment-leader", "comment_leader", "Line comment leader");

    // serve
    auto* serve = app.add_subcommand("serve", "Run the HTTP JSON service");
    ov.bind(*serve, "--store", "store_dir", "Store directory");
    ov.bind(*serve, "--index", "index_path", "Index path");
    ov.bind(*serve, "--host", "host", "Listen address");
    ov.bind(*serve, "--port", "port", "Listen port");
    ov.bind(*serve, "--telemetry", "telemetry_path", "Telemetry file");
    ov.bind(*serve, "--comment-leader", "comment_leader", "Line comment leader");

    // stats
    auto* stats = app.add_subcommand("stats", "Print corpus and index counts");
    ov.bind(*stats, "--store", "store_dir", "Store directory");
    ov.bind(*stats, "--index", "index_path", "Index path");

    // bench-suggest
    auto* bench = app.add_subcommand("bench-suggest", "Measure suggestion latency on a synthetic index");
    std::size_t bench_tasks = 600000;
    std::size_t bench_queries = 1000;
    std::uint64_t bench_seed = 7;
    std::optional<std::string> bench_index;
    bench->add_option("--tasks", bench_tasks, "Synthetic task count")->capture_default_str();
    bench->add_option("--queries", bench_queries, "Random queries")->capture_default_str();
    bench->add_option("--seed", bench_seed, "Generator seed")->capture_default_str();
    bench->add_option("--index", bench_index, "Benchmark an existing index instead");

    // telemetry-report
    auto* report = app.add_subcommand("telemetry-report", "Tabulate a telemetry file");
    std::string telemetry_file;
    report->add_option("file", telemetry_file, "Telemetry TSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        auto code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        auto config = ov.resolve();

        if (*ingest) {
            sa::IngestOptions opts;
            if (tag) opts.tag_filter = *tag;
            opts.base_url = config.base_url;
            sa::IngestReport rep;
            auto store = sa::CorpusStore::ingest(dump_path, opts, &rep);
            store.save(config.store_dir);
            std::cout << sa::format_report(rep);
            std::cout << "store: " << config.store_dir.string() << '\n';
            return kOk;
        }
        if (*extract) {
            auto store = sa::CorpusStore::load(config.store_dir);
            auto lexicon = load_lexicon(lexicon_dir);
            if (actions_file) {
                auto words = sa::read_word_list(*actions_file);
                lexicon.actions = sa::WordSet(words.begin(), words.end());
            }
            if (objects_file) {
                auto words = sa::read_word_list(*objects_file);
                lexicon.generic_objects = sa::WordSet(words.begin(), words.end());
            }
            auto counts = lexicon.counts();
            std::cout << "actions: " << counts.actions << '\n'
                      << "generic_objects: " << counts.generic_objects << '\n';
            auto tasks = sa::extract_corpus(store, lexicon);
            std::ofstream out(tasks_out, std::ios::trunc);
            if (!out) throw sa::IoError("cannot write " + tasks_out);
            sa::write_tasks_tsv(out, tasks);
            std::cout << "titles: " << store.questions().size() << '\n'
                      << "tasks: " << tasks.size() << '\n'
                      << "out: " << tasks_out << '\n';
            return kOk;
        }
        if (*build) {
            std::ifstream in(tasks_in);
            if (!in) throw sa::IoError("cannot open " + tasks_in);
            auto index = sa::CompletionIndex::build(sa::read_tasks_tsv(in));
            index.save(config.index_path);
            std::cout << "task_count: " << index.stats().task_count << '\n'
                      << "title_count: " << index.stats().title_count << '\n'
                      << "index: " << config.index_path.string() << '\n';
            return kOk;
        }
        if (*suggest) {
            auto index = sa::CompletionIndex::load(config.index_path);
            auto results = index.suggest(query, limit.value_or(config.suggest_limit_default));
            for (const auto& s : results) {
                std::cout << s.text << '\t' << s.source_count << '\n';
            }
            return results.empty() ? kNoResult : kOk;
        }
        if (*snippets) {
            auto store = sa::CorpusStore::load(config.store_dir);
            sa::SnippetSearcher searcher(store, config.limits());
            auto results = searcher.retrieve(task);
            if (!results.empty() && !show_all) {
                std::cout << config.comment_leader << " source: " << results[0].source_url << '\n' << results[0].code;
                if (!results[0].code.empty() && results[0].code.back() != '\n') std::cout << '\n';
            }
            for (const auto& s : show_all ? results : std::vector<sa::SnippetResult>{}) {
                std::cout << "#" << s.position << " thread_rank " << s.thread_rank << " answer_score "
                          << s.answer_score << ' ' << s.source_url << '\n'
                          << s.code << "\n\n";
            }
            if (results.empty()) std::cerr << "no snippets for '" << task << "'\n";
            return results.empty() ? kNoResult : kOk;
        }
        if (*assist) {
            auto store = sa::CorpusStore::load(config.store_dir);
            sa::SnippetSearcher searcher(store, config.limits());
            sa::AssistEngine engine([&](const std::string& q) { return searcher.retrieve(q); },
                                    sa::AssistOptions{config.comment_leader});
            auto result = sa::assist_first_marker(engine, read_file(assist_file));
            if (!result.snippet) {
                std::cerr << "no snippets for '" << result.query << "'; file unchanged\n";
                return kNoResult;
            }
            write_file(assist_out.value_or(assist_file), result.document);
            std::cout << result.snippet->source_url << '\n';
            return kOk;
        }
        if (*serve) {
            auto store = std::make_shared<const sa::CorpusStore>(sa::CorpusStore::load(config.store_dir));
            auto index = std::make_shared<const sa::CompletionIndex>(sa::CompletionIndex::load(config.index_path));
            std::shared_ptr<sa::TelemetrySink> telemetry;
            if (!config.telemetry_path.empty()) telemetry = std::make_shared<sa::TelemetryLog>(config.telemetry_path);
            sa::AssistService service(config, store, index, telemetry);
            sa::HttpServer server(service);
            auto port = server.bind(config.host, config.port);
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cout << "listening on http://" << config.host << ':' << port << "/v1" << std::endl;
            server.listen();
            g_server = nullptr;
            return kOk;
        }
        if (*stats) {
            auto store = sa::CorpusStore::load(config.store_dir);
            auto index = sa::CompletionIndex::load(config.index_path);
            auto s = sa::compute_stats(store, index);
            std::cout << "question_count: " << s.question_count << '\n'
                      << "answer_count: " << s.answer_count << '\n'
                      << "snippet_count: " << s.snippet_count << '\n'
                      << "task_count: " << s.task_count << '\n';
            return kOk;
        }
        if (*bench) {
            using clock = std::chrono::steady_clock;
            auto start = clock::now();
            sa::CompletionIndex index;
            if (bench_index) {
                index = sa::CompletionIndex::load(*bench_index);
            } else {
                index = sa::CompletionIndex::build(sa::synthetic_entries(bench_tasks, bench_seed), bench_tasks);
            }
            auto built = clock::now();
            std::vector<sa::CompletionEntry> entries(index.entries().begin(), index.entries().end());
            auto queries = sa::synthetic_queries(entries, bench_queries, bench_seed + 1);
            auto lat = sa::measure_suggest(index, queries, config.suggest_limit_default);
            auto done = clock::now();
            std::cout << std::fixed << std::setprecision(3) << "tasks: " << index.entries().size() << '\n'
                      << "build_ms: " << ms(built - start) << '\n'
                      << "queries: " << lat.queries << '\n'
                      << "p50_ms: " << ms(lat.p50) << '\n'
                      << "p95_ms: " << ms(lat.p95) << '\n'
                      << "p99_ms: " << ms(lat.p99) << '\n'
                      << "max_ms: " << ms(lat.max) << '\n'
                      << "total_ms: " << ms(done - start) << '\n';
            return kOk;
        }
        if (*report) {
            std::cout << sa::format_table(sa::tabulate(sa::read_telemetry_file(telemetry_file)));
            return kOk;
        }
    } catch (const sa::ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const sa::NotFoundError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNoResult;
    } catch (const sa::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kOk;
}
