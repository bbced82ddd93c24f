#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace snipassist {

/// One rated invocation. Serialized as a tab-separated line in the column
/// order query, origin, cycle_count, helpful, timestamp, final_index,
/// snippet_count.
struct TelemetryRecord {
    std::string query;
    std::string origin;
    std::size_t cycle_count = 0;
    bool helpful = false;
    std::string timestamp;
    std::size_t final_index = 0;
    std::size_t snippet_count = 0;

    friend bool operator==(const TelemetryRecord&, const TelemetryRecord&) = default;
};

std::string format_telemetry_line(const TelemetryRecord& record);
/// Throws IoError on a malformed line.
TelemetryRecord parse_telemetry_line(std::string_view line);

std::vector<TelemetryRecord> read_telemetry(std::istream& in);
std::vector<TelemetryRecord> read_telemetry_file(const std::filesystem::path& path);

class TelemetrySink {
  public:
    virtual ~TelemetrySink() = default;
    virtual void append(const TelemetryRecord& record) = 0;
};

/// Append-only telemetry file. Each append opens, writes one line and flushes,
/// so a crash loses at most the record in flight.
class TelemetryLog final : public TelemetrySink {
  public:
    explicit TelemetryLog(std::filesystem::path path);
    void append(const TelemetryRecord& record) override;
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
    std::mutex mutex_;
};

class MemoryTelemetry final : public TelemetrySink {
  public:
    void append(const TelemetryRecord& record) override;
    std::vector<TelemetryRecord> records() const;

  private:
    mutable std::mutex mutex_;
    std::vector<TelemetryRecord> records_;
};

/// Helpful/unhelpful tally. Invocations that produced no snippet are counted
/// on their own row and not in either of the other two.
struct TelemetryTable {
    std::size_t helpful = 0;
    std::size_t unhelpful = 0;
    std::size_t no_snippet = 0;
    std::map<std::string, std::pair<std::size_t, std::size_t>> by_origin;  // helpful, unhelpful

    std::size_t total() const { return helpful + unhelpful + no_snippet; }
};

TelemetryTable tabulate(const std::vector<TelemetryRecord>& records);
std::string format_table(const TelemetryTable& table);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string utc_timestamp();

}  // namespace snipassist
