#pragma once

#include "dfarm/table.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfarm::cli {

// Bad flag combinations found after parsing; exit code 1 like parse errors.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::function<void()> action;
};

void add_doe_command(CLI::App& app, Context& ctx);
void add_run_command(CLI::App& app, Context& ctx);
void add_analyze_command(CLI::App& app, Context& ctx);
void add_model_command(CLI::App& app, Context& ctx);
void add_geo_command(CLI::App& app, Context& ctx);
void add_casestudy_command(CLI::App& app, Context& ctx);

std::string read_text_file(const std::string& path);
// Writes to `path`, or to ctx.out when the path is empty or "-".
void emit(Context& ctx, const std::string& path, const std::string& text);
// Creates the directory (and parents) when missing.
void ensure_directory(const std::string& path);
std::string join_path(const std::string& dir, const std::string& name);

ResultTable load_table(const std::string& path, bool include_failed);
std::string format_number(double v);

}  // namespace dfarm::cli
