#include "dfarm/csv.hpp"

#include "dfarm/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dfarm::csv {

std::vector<ParsedRecord> parse(std::string_view text) {
    std::vector<ParsedRecord> records;
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        ParsedRecord record{line, {}};
        std::string field;
        bool in_quotes = false;
        bool field_was_quoted = false;
        bool done = false;
        while (!done) {
            if (i >= n) {
                if (in_quotes) throw ParseError(record.line, "unterminated quoted field");
                record.fields.push_back(std::move(field));
                break;
            }
            const char c = text[i];
            if (in_quotes) {
                if (c == '"') {
                    if (i + 1 < n && text[i + 1] == '"') {
                        field.push_back('"');
                        i += 2;
                    } else {
                        in_quotes = false;
                        ++i;
                    }
                } else {
                    if (c == '\n') ++line;
                    field.push_back(c);
                    ++i;
                }
                continue;
            }
            switch (c) {
            case '"':
                if (!field.empty() || field_was_quoted)
                    throw ParseError(line, "quote inside unquoted field");
                in_quotes = true;
                field_was_quoted = true;
                ++i;
                break;
            case ',':
                record.fields.push_back(std::move(field));
                field.clear();
                field_was_quoted = false;
                ++i;
                break;
            case '\r':
                ++i;
                if (i < n && text[i] == '\n') ++i;
                record.fields.push_back(std::move(field));
                ++line;
                done = true;
                break;
            case '\n':
                ++i;
                record.fields.push_back(std::move(field));
                ++line;
                done = true;
                break;
            default:
                if (field_was_quoted) throw ParseError(line, "characters after closing quote");
                field.push_back(c);
                ++i;
            }
        }
        // Blank lines carry no record.
        if (record.fields.size() == 1 && record.fields[0].empty()) continue;
        records.push_back(std::move(record));
    }
    return records;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<ParsedRecord> read_file(const std::string& path) { return parse(read_text(path)); }

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_record(std::ostream& out, const Record& record) {
    for (std::size_t i = 0; i < record.size(); ++i) {
        if (i) out << ',';
        out << escape(record[i]);
    }
    out << '\n';
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << contents;
    if (!out) throw Error("write failed for " + path);
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_short(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

bool parse_real(std::string_view text, double& out) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out,
                                           std::chars_format::general);
    return ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_int(std::string_view text, long long& out) {
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace dfarm::csv
