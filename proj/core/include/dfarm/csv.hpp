#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dfarm::csv {

using Record = std::vector<std::string>;

// RFC-4180 reader. Accepts LF or CRLF line ends and quoted fields spanning
// lines. Each record carries the 1-based line number where it starts.
struct ParsedRecord {
    std::size_t line;
    Record fields;
};

std::vector<ParsedRecord> parse(std::string_view text);
std::vector<ParsedRecord> read_file(const std::string& path);
std::string read_text(const std::string& path);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);
void write_record(std::ostream& out, const Record& record);

void write_file(const std::string& path, const std::string& contents);

// Shortest decimal that round-trips is not stable across libraries, so reals
// are always written with 17 significant digits.
std::string format_real(double value);
// Human-oriented formatting with `digits` significant digits.
std::string format_short(double value, int digits = 6);

bool parse_real(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

}  // namespace dfarm::csv
