#include "dfarm/exec/controller.hpp"

#include "dfarm/error.hpp"

#include <chrono>
#include <cmath>

namespace dfarm::exec {

const char* to_string(StopReason reason) noexcept {
    return reason == StopReason::criterion_met ? "criterion_met" : "design_exhausted";
}

namespace {

void check_alignment(const ResultTable& out, const doe::DesignChunk& chunk, std::size_t chunk_no) {
    const auto where = [&] { return "runner output for chunk " + std::to_string(chunk_no) + ": "; };
    if (out.rows() != chunk.size())
        throw ContractViolation(where() + "expected " + std::to_string(chunk.size()) + " rows, got " +
                                std::to_string(out.rows()));
    try {
        out.validate();
    } catch (const ContractViolation& e) {
        throw ContractViolation(where() + e.what());
    }
    for (std::size_t i = 0; i < out.rows(); ++i)
        if (out.index()[i] != chunk.index(i))
            throw ContractViolation(where() + "row " + std::to_string(i) + " carries index " +
                                    std::to_string(out.index()[i]) + ", expected " +
                                    std::to_string(chunk.index(i)));
}

}  // namespace

std::pair<ResultTable, ExecutionReport> run_batches(const doe::Design& design, const Runner& runner,
                                                    const StopCriterion& criterion, std::size_t chunk_size) {
    if (chunk_size == 0) throw InvalidArgument("chunk_size must be at least 1");
    if (design.rows.empty()) throw InvalidArgument("cannot execute an empty design");
    if (!runner) throw InvalidArgument("no runner configured");

    ExecutionReport report;
    report.chunk_size = chunk_size;
    ResultTable cumulative;
    const std::size_t n = design.rows.size();

    for (std::size_t first = 0; first < n; first += chunk_size) {
        const std::size_t count = std::min(chunk_size, n - first);
        const std::size_t chunk_no = report.chunks_executed + 1;
        const doe::DesignChunk chunk{design.factors, std::span(design.rows).subspan(first, count), first};

        const auto start = std::chrono::steady_clock::now();
        ResultTable out = runner(chunk);
        const auto stop = std::chrono::steady_clock::now();
        check_alignment(out, chunk, chunk_no);

        ResultTable previous = cumulative;
        try {
            cumulative.append(out);
        } catch (const ContractViolation& e) {
            throw ContractViolation("runner output for chunk " + std::to_string(chunk_no) +
                                    " changed schema: " + e.what());
        }
        report.chunks_executed = chunk_no;
        report.rows_executed += count;
        report.chunk_seconds.push_back(std::chrono::duration<double>(stop - start).count());

        bool halt = false;
        if (criterion) {
            try {
                halt = criterion(cumulative, previous);
            } catch (const std::exception& e) {
                throw CriterionError(chunk_no, e.what());
            }
        }
        if (halt) {
            report.stop_reason = StopReason::criterion_met;
            report.stop_chunk = chunk_no;
            return {std::move(cumulative), std::move(report)};
        }
    }
    report.stop_reason = StopReason::design_exhausted;
    return {std::move(cumulative), std::move(report)};
}

double ok_mean(const ResultTable& table, const std::string& metric) {
    const auto& col = table.column(metric);
    if (!col.is_numeric()) throw ConfigError("metric column '" + metric + "' is not numeric");
    const auto values = col.numbers();
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (table.status()[i] != RowStatus::ok || std::isnan(values[i])) continue;
        sum += values[i];
        ++count;
    }
    return count ? sum / static_cast<double>(count) : std::nan("");
}

StopCriterion mean_convergence_criterion(std::string metric, double epsilon, double floor) {
    if (!(epsilon > 0.0)) throw InvalidArgument("convergence epsilon must be positive");
    if (!(floor > 0.0)) throw InvalidArgument("convergence floor must be positive");
    return [metric = std::move(metric), epsilon, floor](const ResultTable& current, const ResultTable& previous) {
        if (!current.has_column(metric))
            throw ConfigError("stop criterion metric '" + metric + "' is not a result column");
        if (previous.empty()) return false;
        const double now = ok_mean(current, metric);
        const double before = ok_mean(previous, metric);
        if (std::isnan(now) || std::isnan(before)) return false;
        return std::abs(now - before) / std::max(std::abs(before), floor) < epsilon;
    };
}

StopCriterion never_stop() {
    return [](const ResultTable&, const ResultTable&) { return false; };
}

ResultTable echo_runner(const doe::DesignChunk& chunk) {
    std::vector<std::size_t> index(chunk.size());
    for (std::size_t i = 0; i < chunk.size(); ++i) index[i] = chunk.index(i);
    ResultTable out(std::move(index));
    for (std::size_t j = 0; j < chunk.factors.size(); ++j) {
        const auto& f = chunk.factors[j];
        if (std::holds_alternative<doe::Categorical>(f.kind)) {
            std::vector<std::optional<std::string>> labels;
            for (const auto& row : chunk.rows) labels.emplace_back(std::get<std::string>(row[j]));
            out.add_column(DataColumn::categorical(f.name, std::move(labels)));
        } else {
            std::vector<double> values;
            for (const auto& row : chunk.rows) values.push_back(doe::cell_as_real(row[j]));
            out.add_column(DataColumn::numeric(f.name, std::move(values)));
        }
    }
    return out;
}

}  // namespace dfarm::exec
