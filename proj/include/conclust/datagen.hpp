#pragma once

// Synthetic instance generators: equicorrelated binary label matrices with
// exact target marginals, and matrices assembled from repeated pivot runs on
// a graph.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "algorithms.hpp"
#include "core.hpp"
#include "random.hpp"
#include "similarity.hpp"

namespace conclust {

struct BinarySpec {
    std::size_t rows = 0;
    std::size_t cols = 0;
    double mean = 0.5;   // marginal P(entry = 1), in (0,1)
    double corr = 0.0;   // pairwise correlation between columns of a row, in [0,1]
    std::uint64_t seed = 0;
};

// Shared-component mixture: per row draw Z ~ Bern(mean); per entry, with
// probability sqrt(corr) copy Z, otherwise draw a fresh Bern(mean). Each
// entry is marginally Bern(mean) and any two entries of a row have
// correlation exactly corr (the shared indicator contributes
// sqrt(corr)^2 = corr). Rows are independent, each generated from its own
// split stream so the matrix is reproducible row by row.
inline LabelMatrix gen_correlated_binary(const BinarySpec& spec) {
    if (spec.rows == 0) throw std::invalid_argument("gen_correlated_binary: rows must be positive");
    if (spec.cols == 0) throw std::invalid_argument("gen_correlated_binary: cols must be positive");
    if (!(spec.mean > 0.0 && spec.mean < 1.0))
        throw std::invalid_argument("gen_correlated_binary: mean must lie strictly inside (0,1)");
    if (!(spec.corr >= 0.0 && spec.corr <= 1.0))
        throw std::invalid_argument("gen_correlated_binary: corr must lie in [0,1]");

    const double share = std::sqrt(spec.corr);
    const RandomSource base(spec.seed);
    std::vector<Label> data(spec.rows * spec.cols);
    for (std::size_t v = 0; v < spec.rows; ++v) {
        RandomSource rng = base.split(v);
        const Label shared = rng.bernoulli(spec.mean) ? 1 : 0;
        for (std::size_t j = 0; j < spec.cols; ++j) {
            const bool copy = rng.bernoulli(share);
            const Label fresh = rng.bernoulli(spec.mean) ? 1 : 0;
            data[v * spec.cols + j] = copy ? shared : fresh;
        }
    }
    return LabelMatrix(spec.rows, spec.cols, std::move(data));
}

// k = runs columns, column j the result of one pivot run on the graph's 0/1
// similarity with its own split stream.
inline LabelMatrix gen_from_graph(const GraphAdjacency& graph, std::size_t runs,
                                  RandomSource& rng) {
    if (runs == 0) throw std::invalid_argument("gen_from_graph: runs must be positive");
    const GraphOracle oracle(graph);
    std::vector<Clustering> columns;
    columns.reserve(runs);
    for (std::size_t r = 0; r < runs; ++r) {
        RandomSource run_rng = rng.split(r);
        columns.push_back(pivot(oracle, run_rng));
    }
    return LabelMatrix::from_columns(columns);
}

} // namespace conclust
