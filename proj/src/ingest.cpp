#include "bsopt/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bsopt/csv.hpp"
#include "bsopt/errors.hpp"

namespace bsopt {

namespace {

bool parse_uint_field(std::string_view s, std::size_t& pos, int digits_min, int digits_max, int& out) {
    int value = 0;
    int digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9' && digits < digits_max) {
        value = value * 10 + (s[pos] - '0');
        ++pos;
        ++digits;
    }
    if (digits < digits_min) return false;
    out = value;
    return true;
}

bool consume(std::string_view s, std::size_t& pos, char expected) {
    if (pos < s.size() && s[pos] == expected) {
        ++pos;
        return true;
    }
    return false;
}

// HH:MM[:SS[.frac]] starting at pos; fractional seconds are truncated.
bool parse_clock(std::string_view s, std::size_t& pos, std::int64_t& seconds_out) {
    int hh = 0, mm = 0, ss = 0;
    if (!parse_uint_field(s, pos, 1, 2, hh)) return false;
    if (!consume(s, pos, ':')) return false;
    if (!parse_uint_field(s, pos, 2, 2, mm)) return false;
    if (consume(s, pos, ':')) {
        if (!parse_uint_field(s, pos, 2, 2, ss)) return false;
        if (consume(s, pos, '.')) {
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        }
    }
    if (hh > 23 || mm > 59 || ss > 60) return false;
    seconds_out = std::int64_t(hh) * 3600 + std::int64_t(mm) * 60 + ss;
    return true;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    std::size_t pos = 0;
    std::int64_t day_seconds = 0;

    // A date prefix is present when the string has a 4-digit year and a
    // date separator; otherwise treat the whole string as a bare clock.
    const bool has_date = text.size() >= 10 && (text[4] == '-' || text[4] == '/');
    if (has_date) {
        int year = 0, month = 0, day = 0;
        const char sep = text[4];
        if (!parse_uint_field(text, pos, 4, 4, year)) return std::nullopt;
        if (!consume(text, pos, sep)) return std::nullopt;
        if (!parse_uint_field(text, pos, 1, 2, month)) return std::nullopt;
        if (!consume(text, pos, sep)) return std::nullopt;
        if (!parse_uint_field(text, pos, 1, 2, day)) return std::nullopt;
        const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                                              std::chrono::day{unsigned(day)}};
        if (!ymd.ok()) return std::nullopt;
        const auto days = std::chrono::sys_days(ymd).time_since_epoch().count();
        day_seconds = std::int64_t(days) * 86400;
        if (pos == text.size()) return day_seconds;  // date-only -> midnight
        if (!consume(text, pos, 'T') && !consume(text, pos, ' ')) return std::nullopt;
    }

    std::int64_t clock_seconds = 0;
    if (!parse_clock(text, pos, clock_seconds)) return std::nullopt;
    if (pos != text.size()) return std::nullopt;
    return day_seconds + clock_seconds;
}

std::string format_timestamp(Timestamp t) {
    const auto days = std::chrono::sys_days(std::chrono::floor<std::chrono::days>(std::chrono::sys_seconds{std::chrono::seconds{t}}));
    const std::chrono::year_month_day ymd{days};
    std::int64_t rem = t - std::chrono::sys_seconds{days}.time_since_epoch().count();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()), int(rem / 3600), int((rem % 3600) / 60), int(rem % 60));
    return buf;
}

std::vector<ChargingSession> parse_sessions(const std::string& path, const SessionSchema& schema,
                                            ParseReport* report) {
    const csv::Table table = csv::read_table(path);

    const auto start_col = table.column(schema.start);
    if (!start_col) throw DataError("sessions file " + path + ": missing column '" + schema.start + "'");
    const bool use_end = !schema.end.empty();
    std::optional<std::size_t> duration_col, end_col;
    if (use_end) {
        end_col = table.column(schema.end);
        if (!end_col) throw DataError("sessions file " + path + ": missing column '" + schema.end + "'");
    } else {
        duration_col = table.column(schema.duration);
        if (!duration_col) throw DataError("sessions file " + path + ": missing column '" + schema.duration + "'");
    }
    const auto energy_col = table.column(schema.energy);
    if (!energy_col) throw DataError("sessions file " + path + ": missing column '" + schema.energy + "'");
    const auto region_col = schema.region.empty() ? std::nullopt : table.column(schema.region);

    ParseReport local;
    std::vector<ChargingSession> sessions;
    sessions.reserve(table.rows.size());

    auto reject = [&local](const char* reason) { ++local.rejected; ++local.reject_reasons[reason]; };

    for (const auto& row : table.rows) {
        ++local.total_rows;
        auto field = [&row](std::size_t col) -> std::string_view {
            return col < row.size() ? std::string_view(row[col]) : std::string_view();
        };

        const auto start = parse_timestamp(field(*start_col));
        if (!start) {
            reject("bad_start_time");
            continue;
        }

        double duration = 0.0;
        if (use_end) {
            const auto end = parse_timestamp(field(*end_col));
            if (!end) {
                reject("bad_end_time");
                continue;
            }
            duration = double(*end - *start) / 60.0;
            if (duration < 0.0) {
                reject("end_before_start");
                continue;
            }
        } else {
            const auto d = csv::parse_double(field(*duration_col));
            if (!d || !std::isfinite(*d)) {
                reject("non_numeric_duration");
                continue;
            }
            if (*d < 0.0) {
                reject("negative_duration");
                continue;
            }
            duration = *d;
        }

        const auto energy = csv::parse_double(field(*energy_col));
        if (!energy || !std::isfinite(*energy)) {
            reject("non_numeric_energy");
            continue;
        }
        if (*energy < 0.0) {
            reject("negative_energy");
            continue;
        }

        ChargingSession s;
        s.start_time = *start;
        s.duration_minutes = duration;
        s.energy_kwh = *energy;
        if (region_col) s.region_id = std::string(field(*region_col));
        if (!schema.region_filter.empty() && s.region_id != schema.region_filter) continue;
        ++local.accepted;
        sessions.push_back(std::move(s));
    }

    if (report) *report = local;

    if (local.total_rows > 0 &&
        double(local.rejected) > schema.max_reject_fraction * double(local.total_rows)) {
        std::ostringstream msg;
        msg << "sessions file " << path << ": " << local.rejected << " of " << local.total_rows
            << " rows rejected (threshold " << schema.max_reject_fraction * 100.0 << "%):";
        for (const auto& [reason, count] : local.reject_reasons) msg << " " << reason << "=" << count;
        throw DataError(msg.str());
    }
    return sessions;
}

ArrivalSeries hourly_arrivals(std::span<const ChargingSession> sessions) {
    if (sessions.empty()) throw DataError("hourly_arrivals: no sessions");
    std::int64_t min_hour = hour_index(sessions.front().start_time);
    std::int64_t max_hour = min_hour;
    for (const auto& s : sessions) {
        const auto h = hour_index(s.start_time);
        min_hour = std::min(min_hour, h);
        max_hour = std::max(max_hour, h);
    }
    ArrivalSeries series;
    series.origin = min_hour * kSecondsPerHour;
    series.hourly_counts.assign(std::size_t(max_hour - min_hour + 1), 0);
    for (const auto& s : sessions) {
        ++series.hourly_counts[std::size_t(hour_index(s.start_time) - min_hour)];
    }
    return series;
}

PriceSeries load_prices(const std::string& path, bool daily) {
    const csv::Table table = csv::read_table(path);
    const auto hour_col = table.column("hour");
    const auto price_col = table.column("price");
    if (!hour_col || !price_col) throw DataError("prices file " + path + ": requires columns 'hour' and 'price'");

    std::vector<std::pair<long long, double>> entries;
    entries.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        if (row.size() <= std::max(*hour_col, *price_col)) throw DataError("prices file " + path + ": short row");
        const auto hour = csv::parse_int(row[*hour_col]);
        const auto price = csv::parse_double(row[*price_col]);
        if (!hour || !price || !std::isfinite(*price)) throw DataError("prices file " + path + ": non-numeric row");
        if (*price < 0.0) throw DataError("prices file " + path + ": negative price at hour " + std::to_string(*hour));
        entries.emplace_back(*hour, *price);
    }

    const std::size_t expected = daily ? 24 : entries.size();
    if (daily && entries.size() != 24) {
        throw DataError("prices file " + path + ": daily profile requires exactly 24 rows, got " +
                        std::to_string(entries.size()));
    }
    if (!daily && entries.size() < 24) {
        throw DataError("prices file " + path + ": full-horizon series requires at least 24 rows, got " +
                        std::to_string(entries.size()));
    }

    std::sort(entries.begin(), entries.end());
    PriceSeries series;
    series.daily_profile = daily;
    series.hourly_price.resize(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        if (entries[i].first != static_cast<long long>(i)) {
            throw DataError("prices file " + path + ": hours must be consecutive from 0 (missing hour " +
                            std::to_string(i) + ")");
        }
        series.hourly_price[i] = entries[i].second;
    }
    return series;
}

void write_sessions(const std::string& path, std::span<const ChargingSession> sessions) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "start,duration_min,energy_kwh,region\n";
    for (const auto& s : sessions) {
        out << format_timestamp(s.start_time) << ',' << csv::format_double(s.duration_minutes) << ','
            << csv::format_double(s.energy_kwh) << ',' << s.region_id << '\n';
    }
}

void write_prices(const std::string& path, const PriceSeries& prices) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "hour,price\n";
    for (std::size_t h = 0; h < prices.hourly_price.size(); ++h) {
        out << h << ',' << csv::format_double(prices.hourly_price[h]) << '\n';
    }
}

}  // namespace bsopt
