#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dfarm {

enum class RowStatus { ok, failed };

const char* to_string(RowStatus status) noexcept;

// One named column of either finite reals or category labels. Missing numeric
// values are NaN; missing labels are std::nullopt.
class DataColumn {
public:
    enum class Kind { numeric, categorical };

    DataColumn() = default;

    static DataColumn numeric(std::string name, std::vector<double> values);
    static DataColumn categorical(std::string name, std::vector<std::optional<std::string>> values);
    static DataColumn categorical(std::string name, const std::vector<std::string>& values);

    const std::string& name() const noexcept { return name_; }
    Kind kind() const noexcept { return kind_; }
    bool is_numeric() const noexcept { return kind_ == Kind::numeric; }
    std::size_t size() const noexcept;
    bool is_missing(std::size_t row) const;
    std::size_t missing_count() const;

    std::span<const double> numbers() const;
    const std::vector<std::optional<std::string>>& labels() const;

    // Non-missing numeric values in row order.
    std::vector<double> present_numbers() const;
    // Distinct labels in order of first appearance.
    std::vector<std::string> levels() const;

    // Textual cell for CSV output; empty when missing.
    std::string cell_text(std::size_t row) const;

    DataColumn select(std::span<const std::size_t> rows) const;
    void append(const DataColumn& other);
    void push_missing();

    bool operator==(const DataColumn& other) const;

private:
    std::string name_;
    Kind kind_ = Kind::numeric;
    std::vector<double> numbers_;
    std::vector<std::optional<std::string>> labels_;
};

// Row-aligned simulation outputs. Every row carries the design-row index it
// came from and an execution status; failed rows stay in the table.
class ResultTable {
public:
    static constexpr std::string_view kIndexColumn = "_index";
    static constexpr std::string_view kStatusColumn = "_status";

    ResultTable() = default;
    explicit ResultTable(std::vector<std::size_t> index, std::vector<RowStatus> status = {});

    std::size_t rows() const noexcept { return index_.size(); }
    bool empty() const noexcept { return index_.empty(); }
    const std::vector<std::size_t>& index() const noexcept { return index_; }
    const std::vector<RowStatus>& status() const noexcept { return status_; }
    void set_status(std::size_t row, RowStatus status);
    std::size_t ok_count() const;

    void add_column(DataColumn column);
    bool has_column(std::string_view name) const;
    const DataColumn& column(std::string_view name) const;
    const std::vector<DataColumn>& columns() const noexcept { return columns_; }

    // Appends the rows of `other`. Columns are matched by name; a column
    // present on only one side is padded with missing values. A kind mismatch
    // is a ContractViolation.
    void append(const ResultTable& other);
    ResultTable slice(std::size_t first, std::size_t count) const;
    ResultTable select(std::span<const std::size_t> rows) const;
    ResultTable ok_rows() const;

    // Throws ContractViolation on unequal lengths or duplicate indices.
    void validate() const;

    std::string to_csv() const;
    // Reserved columns are optional on input: a missing `_index` becomes
    // 0..n-1 and a missing `_status` means every row is ok. A column is numeric
    // when every non-empty cell parses as a finite real.
    static ResultTable from_csv(std::string_view text);
    static ResultTable read_csv(const std::string& path);
    void write_csv(const std::string& path) const;

    bool operator==(const ResultTable& other) const = default;

private:
    std::vector<std::size_t> index_;
    std::vector<RowStatus> status_;
    std::vector<DataColumn> columns_;
};

}  // namespace dfarm
