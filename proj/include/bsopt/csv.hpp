#ifndef BSOPT_CSV_HPP
#define BSOPT_CSV_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bsopt::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a named column, or nullopt.
    std::optional<std::size_t> column(std::string_view name) const;
};

// Reads a comma-separated file with a header line. Handles double-quoted
// fields (embedded commas, doubled quotes); does not handle embedded
// newlines. Throws DataError if the file cannot be opened.
Table read_table(const std::string& path);

// Splits one CSV line, honoring double quotes.
std::vector<std::string> split_line(std::string_view line);

// Locale-independent numeric parsing (dot decimal separator). The whole
// field must be consumed; surrounding whitespace is trimmed first.
std::optional<double> parse_double(std::string_view field);
std::optional<long long> parse_int(std::string_view field);

// Shortest round-trip formatting for doubles (std::to_chars).
std::string format_double(double value);

}  // namespace bsopt::csv

#endif  // BSOPT_CSV_HPP
