#include "snipassist/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string_view>
#include <unordered_set>

#include "snipassist/errors.hpp"
#include "snipassist/text.hpp"

namespace snipassist {

namespace {

constexpr std::array<std::string_view, 60> kVerbs = {
    "add",     "append",   "build",    "calculate", "call",    "cast",     "change",  "check",   "clear",
    "clone",   "close",    "compare",  "compile",   "compute", "concatenate", "configure", "connect", "convert",
    "copy",    "count",    "create",   "decode",    "delete",  "deserialize", "detect", "disable", "display",
    "download", "encode",  "encrypt",  "execute",   "extract", "fill",     "filter",  "find",    "format",
    "generate", "get",     "handle",   "hide",      "implement", "import", "initialize", "insert", "iterate",
    "load",    "map",      "merge",    "open",      "parse",   "print",    "read",    "remove",  "replace",
    "reverse", "save",     "send",     "sort",      "split",   "write"};

constexpr std::array<std::string_view, 64> kNouns = {
    "array",    "arraylist", "bitmap",   "buffer",   "button",   "byte",      "cache",    "character",
    "class",    "collection", "column",  "connection", "cookie", "date",      "directory", "element",
    "entity",   "enum",      "exception", "field",   "file",     "folder",    "font",     "frame",
    "hashmap",  "header",    "image",    "integer",  "interface", "iterator", "jar",      "jframe",
    "jpanel",   "json",      "key",      "label",    "line",     "list",      "listener", "map",
    "matrix",   "method",    "number",   "object",   "packet",   "panel",     "parameter", "path",
    "property", "query",     "queue",    "request",  "resource", "response", "row",      "set",
    "socket",   "stack",     "stream",   "string",   "table",    "thread",    "url",      "value"};

constexpr std::array<std::string_view, 24> kModifiers = {
    "random",  "text",    "binary", "empty",  "new",     "multiple", "nested",  "custom",
    "default", "local",   "remote", "static", "unique",  "current",  "whole",   "large",
    "xml",     "http",    "utf-8",  "sorted", "generic", "private",  "primitive", "mutable"};

constexpr std::array<std::string_view, 12> kPreps = {"to",   "from", "in",      "into", "with",   "by",
                                                     "for",  "on",   "without", "of",   "over",   "between"};

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

std::vector<CompletionEntry> synthetic_entries(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::unordered_set<std::string> seen;
    seen.reserve(count * 2);
    std::vector<CompletionEntry> out;
    out.reserve(count);
    std::string text;
    while (out.size() < count) {
        text.assign(kVerbs[pick(rng, kVerbs.size())]);
        text.push_back(' ');
        if (rng() % 3 == 0) {
            text.append(kModifiers[pick(rng, kModifiers.size())]);
            text.push_back(' ');
        }
        text.append(kNouns[pick(rng, kNouns.size())]);
        if (rng() % 5 != 0) {
            text.push_back(' ');
            text.append(kPreps[pick(rng, kPreps.size())]);
            text.push_back(' ');
            if (rng() % 4 == 0) {
                text.append(kModifiers[pick(rng, kModifiers.size())]);
                text.push_back(' ');
            }
            text.append(kNouns[pick(rng, kNouns.size())]);
        }
        if (!seen.insert(text).second) continue;
        // Geometric-ish source counts: most tasks come from one title.
        std::uint32_t sources = 1;
        while (sources < 5000 && rng() % 3 == 0) sources *= 2;
        out.push_back(CompletionEntry{text, sources});
    }
    return out;
}

std::vector<std::string> synthetic_queries(const std::vector<CompletionEntry>& entries, std::size_t count,
                                           std::uint64_t seed) {
    if (entries.empty()) throw ArgumentError("cannot draw queries from an empty entry list");
    std::mt19937_64 rng(seed);
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& text = entries[pick(rng, entries.size())].text;
        auto mode = rng() % 10;
        if (mode < 6) {
            out.push_back(text.substr(0, 1 + pick(rng, text.size())));
        } else if (mode < 9) {
            std::string q;
            for (auto tok : text::split_whitespace(text)) {
                if (rng() % 3 == 0) continue;
                if (!q.empty()) q.push_back(' ');
                q.append(tok.substr(0, 1 + pick(rng, tok.size())));
            }
            out.push_back(q.empty() ? text.substr(0, 1) : q);
        } else {
            out.push_back(text.substr(0, 1 + pick(rng, text.size())) + "zq");
        }
    }
    return out;
}

std::vector<std::string> synthetic_titles(std::size_t count, std::uint64_t seed) {
    static constexpr std::array<std::string_view, 28> kGlue = {
        "how",  "do",   "i",     "to",  "a",    "the",    "an",    "is",   "not",   "don't",
        "and",  "or",   "when",  "with", "my",  "this",   "it",    "?",    ",",     "java",
        "is",   "are",  "being", "can", "without", "()",  "foo.bar()", "ArrayList<Integer>"};
    std::mt19937_64 rng(seed);
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string title;
        auto words = 1 + pick(rng, 40);
        for (std::size_t w = 0; w < words; ++w) {
            if (!title.empty()) title.push_back(' ');
            switch (rng() % 6) {
                case 0:
                case 1: {
                    std::string verb(kVerbs[pick(rng, kVerbs.size())]);
                    auto form = rng() % 4;
                    if (form == 1) verb += "ing";
                    if (form == 2) verb += "ed";
                    title += verb;
                    break;
                }
                case 2: title += kNouns[pick(rng, kNouns.size())]; break;
                case 3: title += kPreps[pick(rng, kPreps.size())]; break;
                case 4: title += kModifiers[pick(rng, kModifiers.size())]; break;
                default: title += kGlue[pick(rng, kGlue.size())]; break;
            }
        }
        out.push_back(std::move(title));
    }
    return out;
}

LatencySummary measure_suggest(const CompletionIndex& index, const std::vector<std::string>& queries,
                               std::size_t limit) {
    using clock = std::chrono::steady_clock;
    LatencySummary summary;
    summary.queries = queries.size();
    if (queries.empty()) return summary;
    std::vector<std::chrono::nanoseconds> samples;
    samples.reserve(queries.size());
    for (const auto& q : queries) {
        auto start = clock::now();
        summary.results += index.suggest(q, limit).size();
        samples.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start));
    }
    for (auto s : samples) summary.total += s;
    std::sort(samples.begin(), samples.end());
    auto rank = [&](double p) {
        auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(samples.size())));
        return samples[std::clamp<std::size_t>(k, 1, samples.size()) - 1];
    };
    summary.p50 = rank(0.50);
    summary.p95 = rank(0.95);
    summary.p99 = rank(0.99);
    summary.max = samples.back();
    return summary;
}

}  // namespace snipassist
