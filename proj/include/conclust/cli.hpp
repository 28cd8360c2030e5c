#pragma once

// Command-line front end. run_cli is the whole program: the binary's main
// just forwards argv, and tests drive subcommands in-process through the
// same entry point. Exit codes: 0 success, 2 validation or parse failure,
// 3 I/O or resource failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <new>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algorithms.hpp"
#include "bounds.hpp"
#include "core.hpp"
#include "datagen.hpp"
#include "io.hpp"
#include "objective.hpp"
#include "similarity.hpp"
#include "sweep.hpp"

namespace conclust {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return std::move(buffer).str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// Timing comparison between the quadratic precompute path and the on-the-fly
// label oracle, pivot runs with identical seeds on both.
struct BenchResult {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t runs = 0;
    std::uint64_t seed = 0;
    std::size_t label_bytes = 0;
    std::size_t precompute_bytes = 0;
    double prep_ms = 0.0;
    double precompute_ms = 0.0;
    std::vector<double> onthefly_ms;
    std::vector<double> precomputed_ms;
    bool results_match = true;
    std::vector<std::size_t> clusters;  // per run, identical on both paths
};

inline BenchResult run_bench(const LabelMatrix& m, std::size_t runs, std::uint64_t seed) {
    if (runs == 0) throw std::invalid_argument("bench: runs must be positive");
    using clock = std::chrono::steady_clock;
    const auto ms_between = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };

    BenchResult result;
    result.n = m.nodes();
    result.k = m.columns();
    result.runs = runs;
    result.seed = seed;
    result.label_bytes = m.nodes() * m.columns() * sizeof(Label);
    result.precompute_bytes = m.nodes() * (m.nodes() - 1) / 2 * sizeof(float);

    // label prep: assemble the node-major matrix from the k input clusterings
    std::vector<Clustering> columns;
    columns.reserve(m.columns());
    for (std::size_t j = 0; j < m.columns(); ++j) columns.push_back(m.column(j));
    const auto prep_start = clock::now();
    const LabelMatrix prepared = LabelMatrix::from_columns(columns);
    const auto prep_stop = clock::now();
    result.prep_ms = ms_between(prep_start, prep_stop);

    const LabelOracle direct(prepared);
    std::vector<Clustering> first_results;
    first_results.reserve(runs);
    for (std::size_t i = 0; i < runs; ++i) {
        RandomSource rng(seed + i);
        const Permutation order = random_permutation(prepared.nodes(), rng);
        const auto start = clock::now();
        Clustering c = pivot_in_order(direct, order);
        const auto stop = clock::now();
        result.onthefly_ms.push_back(ms_between(start, stop));
        result.clusters.push_back(c.cluster_count);
        first_results.push_back(std::move(c));
    }

    const auto pre_start = clock::now();
    const PrecomputedMatrix dense = precompute(prepared);
    const auto pre_stop = clock::now();
    result.precompute_ms = ms_between(pre_start, pre_stop);

    for (std::size_t i = 0; i < runs; ++i) {
        RandomSource rng(seed + i);
        const Permutation order = random_permutation(prepared.nodes(), rng);
        const auto start = clock::now();
        const Clustering c = pivot_in_order(dense, order);
        const auto stop = clock::now();
        result.precomputed_ms.push_back(ms_between(start, stop));
        if (!(c == first_results[i])) result.results_match = false;
    }
    return result;
}

inline std::string format_bench(const BenchResult& r) {
    const auto ms = [](double value) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.3f", value);
        return std::string(buf);
    };
    double fly_total = r.prep_ms;
    for (double t : r.onthefly_ms) fly_total += t;
    double pre_total = r.precompute_ms;
    for (double t : r.precomputed_ms) pre_total += t;

    std::string out;
    out += "n " + std::to_string(r.n) + "\n";
    out += "k " + std::to_string(r.k) + "\n";
    out += "runs " + std::to_string(r.runs) + "\n";
    out += "seed " + std::to_string(r.seed) + "\n";
    out += "label_bytes " + std::to_string(r.label_bytes) + "\n";
    out += "precompute_bytes " + std::to_string(r.precompute_bytes) + "\n";
    out += "prep_ms " + ms(r.prep_ms) + "\n";
    out += "precompute_ms " + ms(r.precompute_ms) + "\n";
    out += "onthefly_ms";
    for (double t : r.onthefly_ms) out += " " + ms(t);
    out += "\nprecomputed_ms";
    for (double t : r.precomputed_ms) out += " " + ms(t);
    out += "\nonthefly_total_ms " + ms(fly_total) + "\n";
    out += "precomputed_total_ms " + ms(pre_total) + "\n";
    out += "results_match " + std::string(r.results_match ? "1" : "0") + "\n";
    out += "clusters";
    for (std::size_t c : r.clusters) out += " " + std::to_string(c);
    out += "\n";
    return out;
}

namespace detail {

inline ClampRule parse_clamp_rule(const std::string& name) {
    if (name == "mad") return ClampRule::Mad;
    if (name == "median-multiple") return ClampRule::MedianMultiple;
    throw std::invalid_argument("unknown clamp rule '" + name + "'");
}

inline void cmd_consensus(const std::string& input, const std::string& out_dir,
                          SweepConfig cfg, const std::string& clamp_name, std::ostream& out) {
    cfg.clamp_rule = parse_clamp_rule(clamp_name);
    const LabelMatrix m = read_label_matrix(read_file(input));
    std::vector<RunReport> reports = run_consensus_sweep(m, cfg);

    const auto full = std::find_if(reports.begin(), reports.end(), [&](const RunReport& r) {
        return r.columns_used == m.columns();
    });
    const std::vector<SummaryRow> rows = summarize(reports, *full, cfg.clamp_rule);
    for (auto& report : reports) {
        const auto row = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& s) {
            return s.samples == report.columns_used;
        });
        report.ratio_to_full = row->ratio_to_full;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
    for (const auto& report : reports)
        write_file(std::filesystem::path(out_dir) /
                       ("report_R" + std::to_string(report.columns_used) + ".txt"),
                   write_report(report));
    const std::string csv = summary_csv(rows);
    write_file(std::filesystem::path(out_dir) / "summary.csv", csv);
    out << csv;
}

inline void cmd_bound(const std::vector<std::uint64_t>& r_values, const std::string& out_path,
                      std::ostream& out) {
    const std::vector<BoundRow> rows = bound_table(r_values);
    const std::string csv = bound_table_csv(rows);
    if (out_path.empty())
        out << csv;
    else
        write_file(out_path, csv);
}

inline void cmd_gen_binary(std::size_t rows, std::size_t cols, double mean, double corr,
                           std::uint64_t seed, const std::string& out_path) {
    BinarySpec spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.mean = mean;
    spec.corr = corr;
    spec.seed = seed;
    write_file(out_path, write_label_matrix(gen_correlated_binary(spec)));
}

inline void cmd_gen_graph(const std::string& graph_path, std::size_t n, std::size_t runs,
                          std::uint64_t seed, const std::string& out_path) {
    if (n == 0) throw std::invalid_argument("gen: need a positive node count");
    const auto edges = read_edge_list(read_file(graph_path), n);
    const GraphAdjacency graph(n, edges);
    RandomSource rng(seed);
    write_file(out_path, write_label_matrix(gen_from_graph(graph, runs, rng)));
}

inline void cmd_ingest(const std::string& input, const std::vector<std::size_t>& drop_cols,
                       bool header, const std::string& out_path) {
    const std::set<std::size_t> drop(drop_cols.begin(), drop_cols.end());
    const LabelMatrix m = ingest_categorical(read_file(input), drop, header);
    write_file(out_path, write_label_matrix(m));
}

inline void cmd_eval(const std::string& input, const std::string& clustering_path,
                     std::ostream& out) {
    const LabelMatrix m = read_label_matrix(read_file(input));
    const Clustering c = read_clustering(read_file(clustering_path));
    if (c.size() != m.nodes())
        throw std::invalid_argument("clustering has " + std::to_string(c.size()) +
                                    " nodes, matrix has " + std::to_string(m.nodes()));
    out << total_disagreement(c, m) << "\n";
}

inline void cmd_bench(const std::string& input, std::size_t runs, std::uint64_t seed,
                      bool allow_quadratic, std::size_t cap_mb, const std::string& out_path,
                      std::ostream& out) {
    const LabelMatrix m = read_label_matrix(read_file(input));
    const std::size_t needed = m.nodes() * (m.nodes() - 1) / 2 * sizeof(float);
    if (!allow_quadratic && needed > cap_mb * std::size_t(1) * 1024 * 1024)
        throw std::invalid_argument(
            "precomputing " + std::to_string(m.nodes()) + " nodes needs " +
            std::to_string(needed / (1024 * 1024)) + " MiB, above the " + std::to_string(cap_mb) +
            " MiB cap; pass --allow-quadratic to override");
    const std::string text = format_bench(run_bench(m, runs, seed));
    if (!out_path.empty()) write_file(out_path, text);
    out << text;
}

} // namespace detail

// args: argv without the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"consensus clustering over on-the-fly similarity oracles"};
    app.require_subcommand(1);

    // consensus
    auto* consensus = app.add_subcommand("consensus", "run a sampling sweep and summarize it");
    std::string co_input, co_out, co_algo = "pivot", co_clamp = "mad";
    SweepConfig cfg;
    consensus->add_option("--input", co_input, "label-matrix file")->required();
    consensus->add_option("--algo", co_algo, "pivot, pivot+ils, pivot+ls, vote, best-of");
    consensus->add_option("--r-values", cfg.r_values, "column budgets R (full set always added)")
        ->delimiter(',');
    consensus->add_option("--runs", cfg.runs, "runs per R (default 10)");
    consensus->add_option("--seed", cfg.seed, "base seed (default 0)");
    consensus->add_option("--threads", cfg.threads, "worker threads (default 1)");
    consensus->add_option("--clamp-rule", co_clamp, "mad or median-multiple");
    consensus->add_option("--out", co_out, "output directory")->required();

    // bound
    auto* bound = app.add_subcommand("bound", "tabulate sampling penalties g(R) and bounds");
    std::vector<std::uint64_t> bo_r;
    std::string bo_out;
    bound->add_option("--r-values", bo_r, "sample counts")->required()->delimiter(',');
    bound->add_option("--out", bo_out, "CSV file (default stdout)");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic label matrix");
    std::string ge_graph, ge_out;
    std::size_t ge_rows = 0, ge_cols = 0, ge_n = 0, ge_runs = 0;
    double ge_mean = 0.5, ge_corr = 0.0;
    std::uint64_t ge_seed = 0;
    gen->add_option("--rows", ge_rows, "nodes (binary model)");
    gen->add_option("--cols", ge_cols, "columns (binary model)");
    gen->add_option("--mean", ge_mean, "marginal P(1) (binary model)");
    gen->add_option("--corr", ge_corr, "pairwise column correlation (binary model)");
    gen->add_option("--graph", ge_graph, "edge-list file (graph model)");
    gen->add_option("--n", ge_n, "nodes (graph model)");
    gen->add_option("--runs", ge_runs, "pivot runs = columns (graph model)");
    gen->add_option("--seed", ge_seed, "seed (default 0)");
    gen->add_option("--out", ge_out, "label-matrix file")->required();

    // ingest
    auto* ingest = app.add_subcommand("ingest", "turn a categorical CSV into a label matrix");
    std::string in_input, in_out;
    std::vector<std::size_t> in_drop;
    bool in_header = false;
    ingest->add_option("--input", in_input, "CSV file")->required();
    ingest->add_option("--drop-cols", in_drop, "0-based columns to drop")->delimiter(',');
    ingest->add_flag("--header", in_header, "first line is a header");
    ingest->add_option("--out", in_out, "label-matrix file")->required();

    // eval
    auto* eval = app.add_subcommand("eval", "total disagreement of a clustering");
    std::string ev_input, ev_clustering;
    eval->add_option("--input", ev_input, "label-matrix file")->required();
    eval->add_option("--clustering", ev_clustering, "clustering file, one label per line")
        ->required();

    // bench
    auto* bench = app.add_subcommand("bench", "compare precompute against on-the-fly queries");
    std::string be_input, be_out;
    std::size_t be_runs = 10, be_cap = 512;
    std::uint64_t be_seed = 0;
    bool be_allow = false;
    bench->add_option("--input", be_input, "label-matrix file")->required();
    bench->add_option("--runs", be_runs, "pivot runs per path (default 10)");
    bench->add_option("--seed", be_seed, "base seed (default 0)");
    bench->add_flag("--allow-quadratic", be_allow, "ignore the precompute memory cap");
    bench->add_option("--precompute-cap-mb", be_cap, "cap in MiB (default 512)");
    bench->add_option("--out", be_out, "also write the report here");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*consensus) {
            cfg.algorithm = co_algo;
            detail::cmd_consensus(co_input, co_out, cfg, co_clamp, out);
        } else if (*bound) {
            detail::cmd_bound(bo_r, bo_out, out);
        } else if (*gen) {
            if (!ge_graph.empty()) {
                detail::cmd_gen_graph(ge_graph, ge_n, ge_runs, ge_seed, ge_out);
            } else {
                detail::cmd_gen_binary(ge_rows, ge_cols, ge_mean, ge_corr, ge_seed, ge_out);
            }
        } else if (*ingest) {
            detail::cmd_ingest(in_input, in_drop, in_header, in_out);
        } else if (*eval) {
            detail::cmd_eval(ev_input, ev_clustering, out);
        } else if (*bench) {
            detail::cmd_bench(be_input, be_runs, be_seed, be_allow, be_cap, be_out, out);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace conclust
