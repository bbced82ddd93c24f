#include "snipassist/telemetry.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "snipassist/errors.hpp"
#include "snipassist/text.hpp"

namespace snipassist {

namespace {

std::string sanitize(std::string_view field) {
    std::string out(field);
    for (auto& c : out) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return out;
}

std::size_t parse_count(std::string_view field, const char* name) {
    std::size_t value = 0;
    auto r = std::from_chars(field.data(), field.data() + field.size(), value);
    if (r.ec != std::errc{} || r.ptr != field.data() + field.size()) {
        throw IoError(std::string("telemetry: bad ") + name + " '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::string format_telemetry_line(const TelemetryRecord& r) {
    std::ostringstream out;
    out << sanitize(r.query) << '\t' << sanitize(r.origin) << '\t' << r.cycle_count << '\t'
        << (r.helpful ? "true" : "false") << '\t' << sanitize(r.timestamp) << '\t' << r.final_index << '\t'
        << r.snippet_count;
    return out.str();
}

TelemetryRecord parse_telemetry_line(std::string_view line) {
    auto fields = text::split(line, '\t');
    if (fields.size() != 7 && fields.size() != 5) {
        throw IoError("telemetry: expected 5 or 7 fields, got " + std::to_string(fields.size()));
    }
    TelemetryRecord r;
    r.query = std::string(fields[0]);
    r.origin = std::string(fields[1]);
    r.cycle_count = parse_count(fields[2], "cycle_count");
    if (fields[3] == "true") {
        r.helpful = true;
    } else if (fields[3] != "false") {
        throw IoError("telemetry: bad helpful flag '" + std::string(fields[3]) + "'");
    }
    r.timestamp = std::string(fields[4]);
    if (fields.size() == 7) {
        r.final_index = parse_count(fields[5], "final_index");
        r.snippet_count = parse_count(fields[6], "snippet_count");
    } else {
        r.snippet_count = 1;
    }
    return r;
}

std::vector<TelemetryRecord> read_telemetry(std::istream& in) {
    std::vector<TelemetryRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        records.push_back(parse_telemetry_line(line));
    }
    return records;
}

std::vector<TelemetryRecord> read_telemetry_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open telemetry file " + path.string());
    return read_telemetry(in);
}

TelemetryLog::TelemetryLog(std::filesystem::path path) : path_(std::move(path)) {}

void TelemetryLog::append(const TelemetryRecord& record) {
    auto line = format_telemetry_line(record);
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot append to telemetry file " + path_.string());
    out << line << '\n';
    out.flush();
    if (!out) throw IoError("write failed for telemetry file " + path_.string());
}

void MemoryTelemetry::append(const TelemetryRecord& record) {
    std::lock_guard lock(mutex_);
    records_.push_back(record);
}

std::vector<TelemetryRecord> MemoryTelemetry::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

TelemetryTable tabulate(const std::vector<TelemetryRecord>& records) {
    TelemetryTable table;
    for (const auto& r : records) {
        if (r.snippet_count == 0) {
            ++table.no_snippet;
            continue;
        }
        auto& row = table.by_origin[r.origin];
        if (r.helpful) {
            ++table.helpful;
            ++row.first;
        } else {
            ++table.unhelpful;
            ++row.second;
        }
    }
    return table;
}

std::string format_table(const TelemetryTable& table) {
    std::ostringstream out;
    out << "helpful\t" << table.helpful << '\n';
    out << "unhelpful\t" << table.unhelpful << '\n';
    out << "no code snippet\t" << table.no_snippet << '\n';
    out << "total\t" << table.total() << '\n';
    for (const auto& [origin, counts] : table.by_origin) {
        out << origin << "\thelpful " << counts.first << "\tunhelpful " << counts.second << '\n';
    }
    return out.str();
}

std::string utc_timestamp() {
    using namespace std::chrono;
    auto now = system_clock::now();
    auto secs = system_clock::to_time_t(now);
    auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[40];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

}  // namespace snipassist
