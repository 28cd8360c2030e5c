#pragma once

// Consensus sweep: run a chosen algorithm at several column budgets R, many
// runs each, and summarize disagreement statistics relative to the full
// column set. Results are a pure function of (matrix, config); the thread
// count only changes wall-clock numbers.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "algorithms.hpp"
#include "core.hpp"
#include "io.hpp"
#include "objective.hpp"
#include "random.hpp"
#include "similarity.hpp"

namespace conclust {

// Outlier handling for per-run disagreements: clamp into a window around the
// median before averaging. Mad uses the median absolute deviation (window
// median +- 2 MAD); MedianMultiple uses the median itself (window
// median +- 2 median).
enum class ClampRule { Mad, MedianMultiple };

inline const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names{"pivot", "pivot+ils", "pivot+ls", "vote",
                                                "best-of"};
    return names;
}

struct SweepConfig {
    std::string algorithm = "pivot";
    std::vector<std::size_t> r_values;  // may omit k; the full set is always run
    std::size_t runs = 10;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    ClampRule clamp_rule = ClampRule::Mad;
};

struct SummaryRow {
    std::size_t samples = 0;  // R
    double mean = 0.0;        // clamped mean disagreement
    double stddev = 0.0;      // sample standard deviation of clamped values
    double mean_ms = 0.0;
    double ratio_to_full = 0.0;
};

namespace detail {

inline double median_of(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

inline std::vector<double> clamp_values(std::span<const Cost> raw, ClampRule rule) {
    std::vector<double> xs(raw.begin(), raw.end());
    const double center = median_of(xs);
    double radius = 0.0;
    if (rule == ClampRule::Mad) {
        std::vector<double> dev(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) dev[i] = std::abs(xs[i] - center);
        radius = 2.0 * median_of(dev);
    } else {
        radius = 2.0 * center;
    }
    for (double& x : xs) x = std::clamp(x, center - radius, center + radius);
    return xs;
}

inline double mean_of(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

// Sample standard deviation; zero for a single value.
inline double stddev_of(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double sq = 0.0;
    for (double x : xs) sq += (x - m) * (x - m);
    return std::sqrt(sq / static_cast<double>(xs.size() - 1));
}

struct RunOutcome {
    Cost disagreement = 0;
    double wall_ms = 0.0;
};

// One run: draw R columns, cluster them, score against the full matrix.
// Only the clustering step is timed. The rng stream order (sample, then
// algorithm draws) is part of the format: pivot draws inside best-of see the
// same stream as a plain pivot run with the same seed.
inline RunOutcome execute_run(const LabelMatrix& m, const std::string& algorithm,
                              std::size_t r, std::uint64_t run_seed) {
    RandomSource rng(run_seed);
    const LabelMatrix sampled = sample_columns(m, r, rng);
    const LabelOracle oracle(sampled);

    const auto start = std::chrono::steady_clock::now();
    Clustering result;
    if (algorithm == "pivot") {
        result = pivot(oracle, rng);
    } else if (algorithm == "pivot+ils") {
        const Clustering first = pivot(oracle, rng);
        result = inner_local_search(oracle, first, rng);
    } else if (algorithm == "pivot+ls") {
        const Clustering first = pivot(oracle, rng);
        const Permutation order = random_permutation(oracle.size(), rng);
        result = local_search_pass(oracle, first, order);
    } else if (algorithm == "vote") {
        result = vote(oracle, rng);
    } else if (algorithm == "best-of") {
        const Clustering candidates[2] = {pivot(oracle, rng), pick_random_input(m, rng)};
        result = best_of(candidates, m);
    } else {
        throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
    }
    const auto stop = std::chrono::steady_clock::now();

    RunOutcome out;
    out.disagreement = total_disagreement(result, m);
    out.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return out;
}

} // namespace detail

// One report per distinct R, ascending, with the full set (R = k) always
// present. Run (row, i) uses seed cfg.seed + row*runs + i, where row indexes
// the sorted R list, so results do not depend on cfg.threads.
inline std::vector<RunReport> run_consensus_sweep(const LabelMatrix& m, const SweepConfig& cfg) {
    const auto& names = algorithm_names();
    if (std::find(names.begin(), names.end(), cfg.algorithm) == names.end())
        throw std::invalid_argument("unknown algorithm '" + cfg.algorithm + "'");
    if (cfg.runs == 0) throw std::invalid_argument("runs must be positive");
    if (cfg.threads == 0) throw std::invalid_argument("threads must be positive");

    const std::size_t k = m.columns();
    std::vector<std::size_t> r_list(cfg.r_values);
    r_list.push_back(k);
    std::sort(r_list.begin(), r_list.end());
    r_list.erase(std::unique(r_list.begin(), r_list.end()), r_list.end());
    for (std::size_t r : r_list) {
        if (r == 0) throw std::invalid_argument("R must be positive");
        if (r > k)
            throw std::invalid_argument("R = " + std::to_string(r) + " exceeds the " +
                                        std::to_string(k) + " available columns");
    }

    std::vector<RunReport> reports(r_list.size());
    for (std::size_t row = 0; row < r_list.size(); ++row) {
        reports[row].algorithm = cfg.algorithm;
        reports[row].columns_used = r_list[row];
        reports[row].seed = cfg.seed;
        reports[row].runs = cfg.runs;
        reports[row].disagreements.assign(cfg.runs, 0);
        reports[row].wall_ms.assign(cfg.runs, 0.0);
    }

    const std::size_t total = r_list.size() * cfg.runs;
    std::atomic<std::size_t> cursor{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t idx = cursor.fetch_add(1);
            if (idx >= total) return;
            const std::size_t row = idx / cfg.runs;
            const std::size_t i = idx % cfg.runs;
            const auto outcome =
                detail::execute_run(m, cfg.algorithm, r_list[row], cfg.seed + idx);
            reports[row].disagreements[i] = outcome.disagreement;
            reports[row].wall_ms[i] = outcome.wall_ms;
        }
    };

    if (cfg.threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < cfg.threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return reports;
}

// Disagreement statistics per report, clamped by `rule`, with the ratio of
// each clamped mean to the full baseline's clamped mean. Both means zero
// gives ratio 1.
inline std::vector<SummaryRow> summarize(std::span<const RunReport> reports,
                                         const RunReport& full_baseline,
                                         ClampRule rule = ClampRule::Mad) {
    if (reports.empty()) throw std::invalid_argument("summarize: no reports");
    if (full_baseline.disagreements.empty())
        throw std::invalid_argument("summarize: baseline has no runs");
    const double full_mean = detail::mean_of(detail::clamp_values(full_baseline.disagreements, rule));

    std::vector<SummaryRow> rows;
    rows.reserve(reports.size());
    for (const RunReport& report : reports) {
        if (report.disagreements.empty())
            throw std::invalid_argument("summarize: report has no runs");
        const auto clamped = detail::clamp_values(report.disagreements, rule);
        SummaryRow row;
        row.samples = report.columns_used;
        row.mean = detail::mean_of(clamped);
        row.stddev = detail::stddev_of(clamped);
        row.mean_ms = detail::mean_of(report.wall_ms);
        row.ratio_to_full = (row.mean == 0.0 && full_mean == 0.0) ? 1.0 : row.mean / full_mean;
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(),
              [](const SummaryRow& a, const SummaryRow& b) { return a.samples < b.samples; });
    return rows;
}

inline std::string summary_csv(std::span<const SummaryRow> rows) {
    std::string out = "R,mean,std,mean_ms,ratio_to_full\n";
    char line[160];
    for (const SummaryRow& row : rows) {
        std::snprintf(line, sizeof line, "%zu,%.6f,%.6f,%.6f,%.6f\n", row.samples, row.mean,
                      row.stddev, row.mean_ms, row.ratio_to_full);
        out += line;
    }
    return out;
}

} // namespace conclust
