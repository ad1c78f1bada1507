#include "common.hpp"

#include "dfarm/csv.hpp"
#include "dfarm/error.hpp"

#include <filesystem>
#include <ostream>

namespace dfarm::cli {

std::string read_text_file(const std::string& path) { return csv::read_text(path); }

void emit(Context& ctx, const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        ctx.out << text;
        return;
    }
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) ensure_directory(parent.string());
    csv::write_file(path, text);
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw Error("cannot create directory " + path + ": " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

ResultTable load_table(const std::string& path, bool include_failed) {
    ResultTable t = ResultTable::read_csv(path);
    return include_failed ? t : t.ok_rows();
}

std::string format_number(double v) { return csv::format_short(v, 15); }

}  // namespace dfarm::cli
