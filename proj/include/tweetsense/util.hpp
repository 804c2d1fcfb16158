#ifndef TWEETSENSE_UTIL_HPP
#define TWEETSENSE_UTIL_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tweetsense {

// ---------------------------------------------------------------------------
// Calendar dates
// ---------------------------------------------------------------------------

// Validated calendar date (proleptic Gregorian, UTC by convention).
struct Date {
    int year = 0;
    int month = 0; // 1..12
    int day = 0;   // 1..days_in_month

    auto operator<=>(const Date&) const = default;

    // "YYYY-MM-DD"
    std::string iso() const;
    // "YYYY-MM"
    std::string month_key() const;
};

int days_in_month(int year, int month);
bool is_valid_date(int year, int month, int day);

// Strict ISO-8601 (YYYY-MM-DD).
std::optional<Date> parse_date_iso(std::string_view s);
// ISO first, then M/D/YY and M/D/YYYY (two-digit years map to 2000..2099).
std::optional<Date> parse_date_lenient(std::string_view s);

// ---------------------------------------------------------------------------
// Strings (ASCII semantics; non-ASCII bytes pass through untouched)
// ---------------------------------------------------------------------------

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
bool is_ascii_punct(char c);
// Whitespace split, empty chunks dropped.
std::vector<std::string> split_whitespace(std::string_view s);
std::vector<std::string> split_on(std::string_view s, char sep);
// True if s has at least one ASCII letter and no lowercase ASCII letter.
bool is_upper_token(std::string_view s);

// Fixed-point decimal rendering used for byte-stable CSV output.
std::string format_fixed(double value, int decimals);

// ---------------------------------------------------------------------------
// CSV (RFC 4180: quoted fields, doubled quotes, embedded separators/newlines)
// ---------------------------------------------------------------------------

class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Reads one record; false at end of input. Tracks the 1-based line number
    // on which the record started (multi-line quoted fields advance it).
    bool next(std::vector<std::string>& fields);
    std::size_t record_line() const { return record_line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
    std::size_t record_line_ = 0;
};

std::string csv_escape(std::string_view field);

// ---------------------------------------------------------------------------
// SHA-256 (content hashing of report files)
// ---------------------------------------------------------------------------

std::string sha256_hex(std::string_view bytes);
std::string sha256_file_hex(const std::string& path);

// Whole-file read; throws DataError when unreadable.
std::string read_file(const std::string& path);

} // namespace tweetsense

#endif
