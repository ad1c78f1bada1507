#include "dfarm/doe/design.hpp"

#include "dfarm/csv.hpp"
#include "dfarm/error.hpp"

#include <sstream>

namespace dfarm::doe {

namespace {

std::string cell_text(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return csv::format_real(*d);
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
    return std::get<std::string>(cell);
}

Cell parse_cell(const FactorSpec& factor, const std::string& text, std::size_t line) {
    const auto fail = [&](const char* what) -> Cell {
        throw ParseError(line, "factor '" + factor.name + "': " + what + " '" + text + "'");
    };
    if (std::holds_alternative<Continuous>(factor.kind)) {
        double v = 0.0;
        if (!csv::parse_real(text, v)) return fail("not a real number");
        return v;
    }
    if (std::holds_alternative<Integer>(factor.kind)) {
        long long v = 0;
        if (!csv::parse_int(text, v)) return fail("not an integer");
        return static_cast<std::int64_t>(v);
    }
    if (std::holds_alternative<Boolean>(factor.kind)) {
        if (text == "true") return true;
        if (text == "false") return false;
        return fail("not a boolean token");
    }
    return text;
}

}  // namespace

std::string design_to_csv(const Design& design) {
    std::ostringstream out;
    csv::Record header;
    for (const auto& f : design.factors) header.push_back(f.name);
    csv::write_record(out, header);
    for (const auto& row : design.rows) {
        csv::Record rec;
        rec.reserve(row.size());
        for (const auto& cell : row) rec.push_back(cell_text(cell));
        csv::write_record(out, rec);
    }
    return out.str();
}

Design design_from_csv(std::string_view text, std::vector<FactorSpec> factors) {
    validate_factors(factors);
    const auto records = csv::parse(text);
    if (records.empty()) throw ParseError(1, "missing header row");

    const auto& header = records.front();
    bool header_ok = header.fields.size() == factors.size();
    for (std::size_t j = 0; header_ok && j < factors.size(); ++j) header_ok = header.fields[j] == factors[j].name;
    if (!header_ok) {
        std::string expected;
        for (const auto& f : factors) expected += (expected.empty() ? "" : ",") + f.name;
        throw ParseError(header.line, "missing or mismatched header row (expected " + expected + ")");
    }

    Design design{std::move(factors), {}, 0};
    design.rows.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != design.factors.size())
            throw ParseError(rec.line, "expected " + std::to_string(design.factors.size()) + " fields, found " +
                                           std::to_string(rec.fields.size()));
        Row row;
        row.reserve(rec.fields.size());
        for (std::size_t j = 0; j < rec.fields.size(); ++j)
            row.push_back(parse_cell(design.factors[j], rec.fields[j], rec.line));
        design.rows.push_back(std::move(row));
    }
    return design;
}

void write_design(const Design& design, const std::string& path) {
    const auto report = validate_design(design);
    if (!report.ok()) {
        const auto& v = report.violations.front();
        throw DomainError("design row " + std::to_string(v.row) + ", factor '" + v.factor + "': " + v.message);
    }
    csv::write_file(path, design_to_csv(design));
}

Design read_design(const std::string& path, std::vector<FactorSpec> factors) {
    return design_from_csv(csv::read_text(path), std::move(factors));
}

}  // namespace dfarm::doe
