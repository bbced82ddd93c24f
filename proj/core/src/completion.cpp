#include "snipassist/completion.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "snipassist/errors.hpp"
#include "snipassist/text.hpp"

namespace snipassist {

namespace {

constexpr std::string_view kIndexFormat = "snipassist-index";
constexpr int kIndexVersion = 1;

// Above this many candidates, walking entries in rank order and stopping at
// `limit` hits beats materializing and sorting the candidate set.
constexpr std::size_t kMaterializeLimit = 4096;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool token_prefix_match(std::string_view text, const std::vector<std::string_view>& query_tokens) {
    std::size_t j = 0;
    std::size_t pos = 0;
    while (j < query_tokens.size() && pos <= text.size()) {
        auto end = text.find(' ', pos);
        if (end == std::string_view::npos) end = text.size();
        if (text.substr(pos, end - pos).starts_with(query_tokens[j])) ++j;
        pos = end + 1;
    }
    return j == query_tokens.size();
}

bool is_normalized_text(std::string_view s) {
    if (s.empty() || s.front() == ' ' || s.back() == ' ') return false;
    if (s.find("  ") != std::string_view::npos) return false;
    return std::none_of(s.begin(), s.end(), [](char c) { return (c >= 'A' && c <= 'Z') || (is_space(c) && c != ' '); });
}

std::string format_time(std::chrono::system_clock::time_point tp) {
    auto t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

std::chrono::system_clock::time_point parse_time(const std::string& s) {
    std::tm tm{};
    std::istringstream in(s);
    in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    if (in.fail()) return {};
    return std::chrono::system_clock::from_time_t(timegm(&tm));
}

}  // namespace

std::string_view match_kind_name(MatchKind kind) {
    return kind == MatchKind::FullPrefix ? "full-prefix" : "token-prefix";
}

std::string normalize_query(std::string_view query) {
    std::string out;
    out.reserve(query.size());
    bool pending_space = false;
    for (char c : query) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
    }
    if (pending_space) out.push_back(' ');
    return out;
}

CompletionIndex CompletionIndex::build(const std::vector<TaskPhrase>& tasks) {
    std::vector<CompletionEntry> entries;
    entries.reserve(tasks.size());
    std::set<PostId> titles;
    for (const auto& t : tasks) {
        entries.push_back(CompletionEntry{t.text, static_cast<std::uint32_t>(t.sources.size())});
        titles.insert(t.sources.begin(), t.sources.end());
    }
    return build(std::move(entries), titles.size());
}

CompletionIndex CompletionIndex::build(std::vector<CompletionEntry> entries, std::size_t title_count) {
    for (const auto& e : entries) {
        if (!is_normalized_text(e.text)) throw ArgumentError("task text '" + e.text + "' is not normalized");
    }
    std::sort(entries.begin(), entries.end(),
              [](const CompletionEntry& l, const CompletionEntry& r) { return l.text < r.text; });
    auto dup = std::adjacent_find(entries.begin(), entries.end(),
                                  [](const CompletionEntry& l, const CompletionEntry& r) { return l.text == r.text; });
    if (dup != entries.end()) {
        throw ArgumentError("duplicate task text '" + dup->text + "'; merge tasks before building the index");
    }
    CompletionIndex index;
    index.entries_ = std::move(entries);
    index.stats_ = CorpusStats{index.entries_.size(), title_count};
    index.built_at_ = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
    index.finish_build();
    return index;
}

void CompletionIndex::finish_build() {
    const auto n = entries_.size();
    by_rank_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) by_rank_[i] = i;
    // Entries are text-sorted, so a stable sort on count keeps text order for ties.
    std::stable_sort(by_rank_.begin(), by_rank_.end(), [&](std::uint32_t l, std::uint32_t r) {
        return entries_[l].source_count > entries_[r].source_count;
    });
    rank_of_.assign(n, 0);
    for (std::uint32_t r = 0; r < n; ++r) rank_of_[by_rank_[r]] = r;

    std::unordered_map<std::string_view, std::vector<std::uint32_t>> map;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (auto tok : text::split(entries_[i].text, ' ')) {
            auto& list = map[tok];
            if (list.empty() || list.back() != i) list.push_back(i);
        }
    }
    tokens_.clear();
    tokens_.reserve(map.size());
    for (const auto& [tok, list] : map) tokens_.emplace_back(tok);
    std::sort(tokens_.begin(), tokens_.end());
    posting_offsets_.assign(1, 0);
    postings_.clear();
    for (const auto& tok : tokens_) {
        const auto& list = map.at(tok);
        postings_.insert(postings_.end(), list.begin(), list.end());
        posting_offsets_.push_back(static_cast<std::uint32_t>(postings_.size()));
    }
}

std::span<const std::uint32_t> CompletionIndex::postings(std::string_view token) const {
    auto it = std::lower_bound(tokens_.begin(), tokens_.end(), token);
    if (it == tokens_.end() || *it != token) return {};
    auto t = static_cast<std::size_t>(it - tokens_.begin());
    return std::span<const std::uint32_t>(postings_).subspan(posting_offsets_[t],
                                                             posting_offsets_[t + 1] - posting_offsets_[t]);
}

std::pair<std::size_t, std::size_t> CompletionIndex::token_range(std::string_view prefix) const {
    auto lo = std::lower_bound(tokens_.begin(), tokens_.end(), prefix);
    auto hi = std::partition_point(lo, tokens_.end(), [&](const std::string& t) { return t.starts_with(prefix); });
    return {static_cast<std::size_t>(lo - tokens_.begin()), static_cast<std::size_t>(hi - tokens_.begin())};
}

std::size_t CompletionIndex::postings_size(std::pair<std::size_t, std::size_t> range) const {
    return posting_offsets_[range.second] - posting_offsets_[range.first];
}

std::vector<Suggestion> CompletionIndex::suggest(std::string_view query, std::size_t limit) const {
    if (limit == 0) throw ArgumentError("suggest limit must be at least 1");
    std::vector<Suggestion> out;
    auto make = [&](std::uint32_t pos, MatchKind kind) {
        return Suggestion{entries_[pos].text, entries_[pos].source_count, kind};
    };

    const auto q = normalize_query(query);
    if (q.empty()) {
        for (std::size_t r = 0; r < std::min(limit, by_rank_.size()); ++r) {
            out.push_back(make(by_rank_[r], MatchKind::FullPrefix));
        }
        return out;
    }

    auto by_rank = [&](std::uint32_t l, std::uint32_t r) { return rank_of_[l] < rank_of_[r]; };

    // Full-prefix matches form one contiguous run of the text-sorted entries.
    auto lo_it = std::lower_bound(entries_.begin(), entries_.end(), q,
                                  [](const CompletionEntry& e, const std::string& v) { return e.text < v; });
    auto hi_it = std::partition_point(lo_it, entries_.end(),
                                      [&](const CompletionEntry& e) { return e.text.starts_with(q); });
    const auto lo = static_cast<std::uint32_t>(lo_it - entries_.begin());
    const auto hi = static_cast<std::uint32_t>(hi_it - entries_.begin());

    std::vector<std::uint32_t> picked;
    if (hi - lo <= kMaterializeLimit) {
        for (auto p = lo; p < hi; ++p) picked.push_back(p);
        auto take = std::min<std::size_t>(limit, picked.size());
        std::partial_sort(picked.begin(), picked.begin() + static_cast<std::ptrdiff_t>(take), picked.end(), by_rank);
        picked.resize(take);
    } else {
        for (auto pos : by_rank_) {
            if (pos >= lo && pos < hi) {
                picked.push_back(pos);
                if (picked.size() == limit) break;
            }
        }
    }
    for (auto pos : picked) out.push_back(make(pos, MatchKind::FullPrefix));
    if (out.size() == limit) return out;

    const auto need = limit - out.size();
    const auto query_tokens = text::split_whitespace(q);
    auto in_full = [&](std::uint32_t pos) { return pos >= lo && pos < hi; };

    // Every match holds, for each query token, some entry token under that
    // token's prefix range. Ranges are visited rarest first.
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (auto qt : query_tokens) ranges.push_back(token_range(qt));
    std::sort(ranges.begin(), ranges.end(),
              [&](const auto& l, const auto& r) { return postings_size(l) < postings_size(r); });
    const auto rarest = postings_size(ranges.front());
    if (rarest == 0) return out;

    auto verify = [&](std::uint32_t pos) { return !in_full(pos) && token_prefix_match(entries_[pos].text, query_tokens); };
    auto finish_from = [&](std::vector<std::uint32_t>& candidates) {
        for (auto pos : candidates) {
            if (verify(pos)) picked.push_back(pos);
        }
        auto take = std::min(need, picked.size());
        std::partial_sort(picked.begin(), picked.begin() + static_cast<std::ptrdiff_t>(take), picked.end(), by_rank);
        picked.resize(take);
    };

    picked.clear();
    if (rarest <= kMaterializeLimit * 4) {
        std::vector<std::uint32_t> candidates(postings_.begin() + posting_offsets_[ranges.front().first],
                                              postings_.begin() + posting_offsets_[ranges.front().second]);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        finish_from(candidates);
    } else {
        const std::size_t words = (entries_.size() + 63) / 64;
        thread_local std::vector<std::uint64_t> bits;
        thread_local std::vector<std::uint64_t> other;
        auto fill = [&](std::vector<std::uint64_t>& set, std::pair<std::size_t, std::size_t> range) {
            set.assign(words, 0);
            for (auto k = posting_offsets_[range.first]; k < posting_offsets_[range.second]; ++k) {
                set[postings_[k] >> 6] |= std::uint64_t{1} << (postings_[k] & 63);
            }
        };
        fill(bits, ranges.front());
        for (std::size_t i = 1; i < ranges.size(); ++i) {
            fill(other, ranges[i]);
            for (std::size_t w = 0; w < words; ++w) bits[w] &= other[w];
        }
        std::size_t count = 0;
        for (auto w : bits) count += static_cast<std::size_t>(std::popcount(w));

        if (count <= kMaterializeLimit * 4) {
            std::vector<std::uint32_t> candidates;
            candidates.reserve(count);
            for (std::size_t w = 0; w < words; ++w) {
                for (auto word = bits[w]; word != 0; word &= word - 1) {
                    candidates.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(word))));
                }
            }
            finish_from(candidates);
        } else {
            for (auto pos : by_rank_) {
                if ((bits[pos >> 6] >> (pos & 63) & 1) != 0 && verify(pos)) {
                    picked.push_back(pos);
                    if (picked.size() == need) break;
                }
            }
        }
    }
    for (auto pos : picked) out.push_back(make(pos, MatchKind::TokenPrefix));
    return out;
}

void CompletionIndex::write(std::ostream& out) const {
    out << kIndexFormat << ' ' << kIndexVersion << '\n'
        << "built_at " << format_time(built_at_) << '\n'
        << "task_count " << stats_.task_count << '\n'
        << "title_count " << stats_.title_count << '\n';
    for (const auto& e : entries_) out << e.text << '\t' << e.source_count << '\n';
}

CompletionIndex CompletionIndex::read(std::istream& in) {
    std::string line;
    auto header = [&](std::string_view key) {
        if (!std::getline(in, line) || !line.starts_with(key) || line.size() <= key.size() ||
            line[key.size()] != ' ') {
            throw IoError("index header is missing '" + std::string(key) + "'");
        }
        return line.substr(key.size() + 1);
    };
    if (header(kIndexFormat) != std::to_string(kIndexVersion)) throw IoError("unsupported index version");
    auto built_at = parse_time(header("built_at"));
    std::size_t task_count = 0;
    std::size_t title_count = 0;
    try {
        task_count = std::stoull(header("task_count"));
        title_count = std::stoull(header("title_count"));
    } catch (const std::logic_error&) {
        throw IoError("index header has a non-numeric count");
    }

    std::vector<CompletionEntry> entries;
    entries.reserve(task_count);
    std::size_t line_no = 4;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto tab = line.rfind('\t');
        if (tab == std::string::npos) throw IoError("index line " + std::to_string(line_no) + " has no tab");
        std::uint32_t count = 0;
        auto r = std::from_chars(line.data() + tab + 1, line.data() + line.size(), count);
        if (r.ec != std::errc{} || r.ptr != line.data() + line.size()) {
            throw IoError("index line " + std::to_string(line_no) + " has a bad source count");
        }
        entries.push_back(CompletionEntry{line.substr(0, tab), count});
    }
    if (entries.size() != task_count) throw IoError("index task_count does not match its entries");
    CompletionIndex index;
    try {
        index = build(std::move(entries), title_count);
    } catch (const ArgumentError& e) {
        throw IoError(std::string("corrupt index: ") + e.what());
    }
    index.built_at_ = built_at;
    return index;
}

void CompletionIndex::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write index '" + path.string() + "'");
    write(out);
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

CompletionIndex CompletionIndex::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open index '" + path.string() + "'");
    try {
        return read(in);
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

}  // namespace snipassist
