#ifndef BSOPT_INGEST_HPP
#define BSOPT_INGEST_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bsopt {

// Naive local time, seconds since 1970-01-01 00:00:00. The source
// datasets publish local clock hours and the 24 h / 168 h periodicity is
// clock-relative, so no timezone conversion is applied anywhere.
using Timestamp = std::int64_t;

constexpr std::int64_t kSecondsPerHour = 3600;

// Accepts "YYYY-MM-DD[T ]HH:MM[:SS[.frac]]" (also with '/' date
// separators) and bare "HH:MM[:SS]", which maps to day zero.
std::optional<Timestamp> parse_timestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SS"
std::string format_timestamp(Timestamp t);

inline std::int64_t hour_index(Timestamp t) {
    // Sessions never predate the epoch in practice; floor division kept
    // for safety with constructed test times.
    return t >= 0 ? t / kSecondsPerHour : (t - (kSecondsPerHour - 1)) / kSecondsPerHour;
}

// One charging-pile session. duration_minutes and energy_kwh feed the
// per-user feature vector (t_sum, v_sum).
struct ChargingSession {
    Timestamp start_time = 0;
    double duration_minutes = 0.0;
    double energy_kwh = 0.0;
    std::string region_id;
};

// Session counts per clock hour; index 0 corresponds to `origin`.
struct ArrivalSeries {
    std::vector<int> hourly_counts;
    Timestamp origin = 0;
};

struct PriceSeries {
    std::vector<double> hourly_price;
    bool daily_profile = true;  // 24 hour-of-day prices vs a full-horizon series
};

// Column-name mapping for session CSVs. Exactly one of `duration` / `end`
// is used: when `end` is non-empty, duration is derived as end - start.
struct SessionSchema {
    std::string start = "start";
    std::string duration = "duration_min";
    std::string end;
    std::string energy = "energy_kwh";
    std::string region = "region";          // optional column; skipped if absent
    std::string region_filter;              // keep only this region when non-empty
    double max_reject_fraction = 0.10;      // fail the parse above this
};

struct ParseReport {
    std::size_t total_rows = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::map<std::string, std::size_t> reject_reasons;
};

// Parses and validates a sessions CSV. Rows that fail to validate are
// counted per reason; the call fails once more than
// schema.max_reject_fraction of rows reject. Row order is preserved.
std::vector<ChargingSession> parse_sessions(const std::string& path, const SessionSchema& schema,
                                            ParseReport* report = nullptr);

// Buckets sessions per clock hour between the first and last start time;
// silent hours are explicit zeros.
ArrivalSeries hourly_arrivals(std::span<const ChargingSession> sessions);

// Loads a prices CSV (columns hour, price). Daily mode requires exactly
// the 24 hour-of-day rows; full mode requires consecutive hours 0..n-1
// with n >= 24. Negative prices are rejected.
PriceSeries load_prices(const std::string& path, bool daily = true);

// Canonical serialization (columns start,duration_min,energy_kwh,region).
// Numeric fields use shortest round-trip formatting, so
// parse -> write -> parse is bit-exact.
void write_sessions(const std::string& path, std::span<const ChargingSession> sessions);

void write_prices(const std::string& path, const PriceSeries& prices);

}  // namespace bsopt

#endif  // BSOPT_INGEST_HPP
