#include "dfarm/table.hpp"

#include "dfarm/csv.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace dfarm {

const char* to_string(RowStatus status) noexcept {
    return status == RowStatus::ok ? "ok" : "failed";
}

DataColumn DataColumn::numeric(std::string name, std::vector<double> values) {
    for (double v : values)
        if (std::isinf(v)) throw DomainError("column '" + name + "' holds a non-finite value");
    DataColumn col;
    col.name_ = std::move(name);
    col.kind_ = Kind::numeric;
    col.numbers_ = std::move(values);
    return col;
}

DataColumn DataColumn::categorical(std::string name, std::vector<std::optional<std::string>> values) {
    DataColumn col;
    col.name_ = std::move(name);
    col.kind_ = Kind::categorical;
    col.labels_ = std::move(values);
    return col;
}

DataColumn DataColumn::categorical(std::string name, const std::vector<std::string>& values) {
    return categorical(std::move(name), std::vector<std::optional<std::string>>(values.begin(), values.end()));
}

std::size_t DataColumn::size() const noexcept {
    return kind_ == Kind::numeric ? numbers_.size() : labels_.size();
}

bool DataColumn::is_missing(std::size_t row) const {
    return kind_ == Kind::numeric ? std::isnan(numbers_.at(row)) : !labels_.at(row).has_value();
}

std::size_t DataColumn::missing_count() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < size(); ++i) count += is_missing(i);
    return count;
}

std::span<const double> DataColumn::numbers() const {
    if (kind_ != Kind::numeric) throw InvalidArgument("column '" + name_ + "' is not numeric");
    return numbers_;
}

const std::vector<std::optional<std::string>>& DataColumn::labels() const {
    if (kind_ != Kind::categorical) throw InvalidArgument("column '" + name_ + "' is not categorical");
    return labels_;
}

std::vector<double> DataColumn::present_numbers() const {
    std::vector<double> out;
    out.reserve(numbers().size());
    for (double v : numbers_)
        if (!std::isnan(v)) out.push_back(v);
    return out;
}

std::vector<std::string> DataColumn::levels() const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& label : labels())
        if (label && seen.insert(*label).second) out.push_back(*label);
    return out;
}

std::string DataColumn::cell_text(std::size_t row) const {
    if (is_missing(row)) return {};
    return kind_ == Kind::numeric ? csv::format_real(numbers_[row]) : *labels_[row];
}

DataColumn DataColumn::select(std::span<const std::size_t> rows) const {
    DataColumn out;
    out.name_ = name_;
    out.kind_ = kind_;
    for (std::size_t r : rows) {
        if (kind_ == Kind::numeric)
            out.numbers_.push_back(numbers_.at(r));
        else
            out.labels_.push_back(labels_.at(r));
    }
    return out;
}

void DataColumn::append(const DataColumn& other) {
    if (other.kind_ != kind_ || other.name_ != name_)
        throw ContractViolation("cannot append column '" + other.name_ + "' to '" + name_ + "'");
    numbers_.insert(numbers_.end(), other.numbers_.begin(), other.numbers_.end());
    labels_.insert(labels_.end(), other.labels_.begin(), other.labels_.end());
}

void DataColumn::push_missing() {
    if (kind_ == Kind::numeric)
        numbers_.push_back(std::nan(""));
    else
        labels_.emplace_back(std::nullopt);
}

bool DataColumn::operator==(const DataColumn& other) const {
    if (name_ != other.name_ || kind_ != other.kind_ || size() != other.size()) return false;
    if (kind_ == Kind::categorical) return labels_ == other.labels_;
    for (std::size_t i = 0; i < numbers_.size(); ++i) {
        const double a = numbers_[i], b = other.numbers_[i];
        if (std::isnan(a) != std::isnan(b)) return false;
        if (!std::isnan(a) && a != b) return false;
    }
    return true;
}

ResultTable::ResultTable(std::vector<std::size_t> index, std::vector<RowStatus> status)
    : index_(std::move(index)), status_(std::move(status)) {
    if (status_.empty()) status_.assign(index_.size(), RowStatus::ok);
    if (status_.size() != index_.size()) throw ContractViolation("status and index lengths differ");
}

void ResultTable::set_status(std::size_t row, RowStatus status) { status_.at(row) = status; }

std::size_t ResultTable::ok_count() const {
    return static_cast<std::size_t>(std::count(status_.begin(), status_.end(), RowStatus::ok));
}

void ResultTable::add_column(DataColumn column) {
    if (column.name() == kIndexColumn || column.name() == kStatusColumn)
        throw ContractViolation("column name '" + column.name() + "' is reserved");
    if (has_column(column.name())) throw ContractViolation("duplicate column '" + column.name() + "'");
    if (column.size() != rows())
        throw ContractViolation("column '" + column.name() + "' has " + std::to_string(column.size()) +
                                " rows, table has " + std::to_string(rows()));
    columns_.push_back(std::move(column));
}

bool ResultTable::has_column(std::string_view name) const {
    return std::any_of(columns_.begin(), columns_.end(), [&](const DataColumn& c) { return c.name() == name; });
}

const DataColumn& ResultTable::column(std::string_view name) const {
    for (const auto& c : columns_)
        if (c.name() == name) return c;
    throw ConfigError("no column named '" + std::string(name) + "'");
}

void ResultTable::append(const ResultTable& other) {
    if (columns_.empty() && index_.empty()) {
        *this = other;
        return;
    }
    // Columns are matched by name; a column absent on one side is padded with
    // missing values so failed chunks without outputs can still be merged.
    for (const auto& oc : other.columns_) {
        if (has_column(oc.name())) {
            if (column(oc.name()).kind() != oc.kind())
                throw ContractViolation("column '" + oc.name() + "' changed kind between tables");
            continue;
        }
        DataColumn pad = oc.is_numeric() ? DataColumn::numeric(oc.name(), {})
                                         : DataColumn::categorical(oc.name(), std::vector<std::optional<std::string>>{});
        for (std::size_t r = 0; r < rows(); ++r) pad.push_missing();
        columns_.push_back(std::move(pad));
    }
    for (auto& c : columns_) {
        const auto it = std::find_if(other.columns_.begin(), other.columns_.end(),
                                     [&](const DataColumn& oc) { return oc.name() == c.name(); });
        if (it != other.columns_.end()) {
            c.append(*it);
        } else {
            for (std::size_t r = 0; r < other.rows(); ++r) c.push_missing();
        }
    }
    index_.insert(index_.end(), other.index_.begin(), other.index_.end());
    status_.insert(status_.end(), other.status_.begin(), other.status_.end());
}

ResultTable ResultTable::slice(std::size_t first, std::size_t count) const {
    if (first > rows()) first = rows();
    count = std::min(count, rows() - first);
    std::vector<std::size_t> rows_sel(count);
    for (std::size_t i = 0; i < count; ++i) rows_sel[i] = first + i;
    return select(rows_sel);
}

ResultTable ResultTable::select(std::span<const std::size_t> rows_sel) const {
    ResultTable out;
    for (std::size_t r : rows_sel) {
        out.index_.push_back(index_.at(r));
        out.status_.push_back(status_.at(r));
    }
    for (const auto& c : columns_) out.columns_.push_back(c.select(rows_sel));
    return out;
}

ResultTable ResultTable::ok_rows() const {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < rows(); ++i)
        if (status_[i] == RowStatus::ok) keep.push_back(i);
    return select(keep);
}

void ResultTable::validate() const {
    if (status_.size() != index_.size()) throw ContractViolation("status column length differs from index");
    for (const auto& c : columns_)
        if (c.size() != rows()) throw ContractViolation("column '" + c.name() + "' length differs from index");
    std::unordered_set<std::size_t> seen;
    for (std::size_t idx : index_)
        if (!seen.insert(idx).second) throw ContractViolation("duplicate row index " + std::to_string(idx));
}

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    csv::Record header{std::string(kIndexColumn), std::string(kStatusColumn)};
    for (const auto& c : columns_) header.push_back(c.name());
    csv::write_record(out, header);
    for (std::size_t r = 0; r < rows(); ++r) {
        csv::Record rec{std::to_string(index_[r]), to_string(status_[r])};
        for (const auto& c : columns_) rec.push_back(c.cell_text(r));
        csv::write_record(out, rec);
    }
    return out.str();
}

ResultTable ResultTable::from_csv(std::string_view text) {
    const auto records = csv::parse(text);
    if (records.empty()) throw ParseError(1, "missing header row");
    const auto& header = records.front().fields;
    const std::size_t width = header.size();
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].fields.size() != width)
            throw ParseError(records[i].line, "expected " + std::to_string(width) + " fields, found " +
                                                  std::to_string(records[i].fields.size()));
    const std::size_t n = records.size() - 1;

    std::vector<std::size_t> index(n);
    std::vector<RowStatus> status(n, RowStatus::ok);
    bool have_index = false;
    ResultTable table;
    std::vector<DataColumn> cols;

    for (std::size_t c = 0; c < width; ++c) {
        const std::string& name = header[c];
        if (name == kIndexColumn) {
            have_index = true;
            for (std::size_t r = 0; r < n; ++r) {
                long long v = 0;
                if (!csv::parse_int(records[r + 1].fields[c], v) || v < 0)
                    throw ParseError(records[r + 1].line, "bad _index value '" + records[r + 1].fields[c] + "'");
                index[r] = static_cast<std::size_t>(v);
            }
            continue;
        }
        if (name == kStatusColumn) {
            for (std::size_t r = 0; r < n; ++r) {
                const auto& cell = records[r + 1].fields[c];
                if (cell == "ok")
                    status[r] = RowStatus::ok;
                else if (cell == "failed")
                    status[r] = RowStatus::failed;
                else
                    throw ParseError(records[r + 1].line, "bad _status value '" + cell + "'");
            }
            continue;
        }
        bool numeric = true;
        std::vector<double> values(n);
        for (std::size_t r = 0; r < n && numeric; ++r) {
            const auto& cell = records[r + 1].fields[c];
            if (cell.empty())
                values[r] = std::nan("");
            else if (!csv::parse_real(cell, values[r]))
                numeric = false;
        }
        if (numeric) {
            cols.push_back(DataColumn::numeric(name, std::move(values)));
        } else {
            std::vector<std::optional<std::string>> labels(n);
            for (std::size_t r = 0; r < n; ++r) {
                const auto& cell = records[r + 1].fields[c];
                if (!cell.empty()) labels[r] = cell;
            }
            cols.push_back(DataColumn::categorical(name, std::move(labels)));
        }
    }
    if (!have_index)
        for (std::size_t r = 0; r < n; ++r) index[r] = r;

    table = ResultTable(std::move(index), std::move(status));
    for (auto& c : cols) table.add_column(std::move(c));
    table.validate();
    return table;
}

ResultTable ResultTable::read_csv(const std::string& path) {
    return from_csv(csv::read_text(path));
}

void ResultTable::write_csv(const std::string& path) const { csv::write_file(path, to_csv()); }

}  // namespace dfarm
