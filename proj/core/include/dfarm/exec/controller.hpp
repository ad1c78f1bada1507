#pragma once

#include "dfarm/doe/design.hpp"
#include "dfarm/error.hpp"
#include "dfarm/table.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dfarm::exec {

// Executes a chunk of design rows. The returned table must hold exactly one
// row per input row, in input order, with `_index` equal to the design-row
// index. Failed executions are reported as rows with status failed.
using Runner = std::function<ResultTable(const doe::DesignChunk&)>;

// Called after every chunk with the cumulative results after and before that
// chunk. Must return false when `previous` is empty.
using StopCriterion = std::function<bool(const ResultTable& current, const ResultTable& previous)>;

enum class StopReason { criterion_met, design_exhausted };

const char* to_string(StopReason reason) noexcept;

struct ExecutionReport {
    std::size_t chunks_executed = 0;
    std::size_t rows_executed = 0;
    std::size_t chunk_size = 0;
    StopReason stop_reason = StopReason::design_exhausted;
    std::optional<std::size_t> stop_chunk;  // 1-based, set when criterion_met
    std::vector<double> chunk_seconds;
};

// Raised when the stop criterion throws; carries the chunk number.
class CriterionError : public Error {
public:
    CriterionError(std::size_t chunk, const std::string& what)
        : Error("stop criterion failed after chunk " + std::to_string(chunk) + ": " + what), chunk_(chunk) {}
    std::size_t chunk() const noexcept { return chunk_; }

private:
    std::size_t chunk_;
};

// Splits the design in row order into ceil(n / chunk_size) chunks and runs
// them one after another, evaluating `criterion` on cumulative results after
// each chunk. Stops at the first chunk where the criterion returns true.
std::pair<ResultTable, ExecutionReport> run_batches(const doe::Design& design, const Runner& runner,
                                                    const StopCriterion& criterion, std::size_t chunk_size);

// Stops when |m_now - m_prev| / max(|m_prev|, floor) < epsilon, where the
// means run over ok rows of the cumulative tables. A missing metric column is
// a ConfigError on the first call; an undefined mean (no ok rows) never stops.
StopCriterion mean_convergence_criterion(std::string metric, double epsilon, double floor);

StopCriterion never_stop();

// Mean of `metric` over ok rows with a present value; NaN when there are none.
double ok_mean(const ResultTable& table, const std::string& metric);

// Echoes every factor of the chunk back as a result column (booleans as 0/1).
ResultTable echo_runner(const doe::DesignChunk& chunk);

// Runs an external command per chunk: the chunk is written as a design CSV
// with a leading `_index` column to a temporary path, the command is invoked
// as `<command> <in.csv> <out.csv>`, and the result CSV is read back. A result
// without `_index` is matched to the chunk by row order. A nonzero exit
// status marks every row of the chunk failed.
Runner subprocess_runner(std::string command);

}  // namespace dfarm::exec
