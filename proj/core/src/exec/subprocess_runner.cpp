#include "dfarm/exec/controller.hpp"

#include "dfarm/csv.hpp"
#include "dfarm/error.hpp"

#include <atomic>
#include <cerrno>
#include <filesystem>
#include <sstream>

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace dfarm::exec {

namespace {

std::string chunk_to_csv(const doe::DesignChunk& chunk) {
    doe::Design tmp{{chunk.factors.begin(), chunk.factors.end()}, {chunk.rows.begin(), chunk.rows.end()}, 0};
    const auto body = doe::design_to_csv(tmp);
    // Prefix every record with the design-row index.
    std::ostringstream out;
    const auto records = csv::parse(body);
    for (std::size_t r = 0; r < records.size(); ++r) {
        csv::Record rec;
        rec.push_back(r == 0 ? std::string(ResultTable::kIndexColumn) : std::to_string(chunk.index(r - 1)));
        rec.insert(rec.end(), records[r].fields.begin(), records[r].fields.end());
        csv::write_record(out, rec);
    }
    return out.str();
}

int run_shell(const std::string& command, const std::string& in_path, const std::string& out_path) {
    // The paths travel as positional parameters so they never need quoting.
    const std::string script = command + " \"$1\" \"$2\"";
    std::vector<std::string> args{"/bin/sh", "-c", script, "dfarm-runner", in_path, out_path};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    argv.push_back(nullptr);

    pid_t pid = 0;
    if (posix_spawn(&pid, "/bin/sh", nullptr, nullptr, argv.data(), environ) != 0)
        throw Error("failed to spawn runner command: " + command);
    int status = 0;
    while (waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) throw Error("waitpid failed for runner command");
    }
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

std::filesystem::path scratch_path(std::size_t first_index, const char* suffix) {
    static std::atomic<unsigned> counter{0};
    const auto name = "dfarm-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" +
                      std::to_string(first_index) + suffix;
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

Runner subprocess_runner(std::string command) {
    if (command.empty()) throw ConfigError("subprocess runner needs a command");
    return [command = std::move(command)](const doe::DesignChunk& chunk) {
        const auto in_path = scratch_path(chunk.first_index, "-in.csv");
        const auto out_path = scratch_path(chunk.first_index, "-out.csv");
        csv::write_file(in_path.string(), chunk_to_csv(chunk));

        const int code = run_shell(command, in_path.string(), out_path.string());
        std::error_code ignore;
        std::filesystem::remove(in_path, ignore);

        if (code != 0) {
            std::filesystem::remove(out_path, ignore);
            std::vector<std::size_t> index(chunk.size());
            for (std::size_t i = 0; i < chunk.size(); ++i) index[i] = chunk.index(i);
            return ResultTable(std::move(index), std::vector<RowStatus>(chunk.size(), RowStatus::failed));
        }
        ResultTable out;
        bool has_index = false;
        try {
            const std::string text = csv::read_text(out_path.string());
            const auto records = csv::parse(text);
            if (!records.empty())
                for (const auto& f : records.front().fields) has_index = has_index || f == ResultTable::kIndexColumn;
            out = ResultTable::from_csv(text);
        } catch (const Error& e) {
            std::filesystem::remove(out_path, ignore);
            throw ContractViolation(std::string("runner output unreadable: ") + e.what());
        }
        std::filesystem::remove(out_path, ignore);
        if (has_index || out.rows() != chunk.size()) return out;
        // No `_index` column: rows follow the chunk order.
        std::vector<std::size_t> index(chunk.size());
        for (std::size_t i = 0; i < chunk.size(); ++i) index[i] = chunk.index(i);
        ResultTable aligned(std::move(index), out.status());
        for (const auto& column : out.columns()) aligned.add_column(column);
        return aligned;
    };
}

}  // namespace dfarm::exec
