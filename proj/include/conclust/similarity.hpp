#pragma once

// Similarity oracles. The label oracle answers queries from the label matrix
// in O(k) time and needs no storage beyond the matrix itself; the
// precomputed matrix trades Theta(n^2) floats for O(1) queries; the graph
// oracle views an unweighted graph as a 0/1 similarity. Column sampling
// restricts the label oracle to a random subset of input clusterings.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "core.hpp"
#include "random.hpp"

namespace conclust {

// Answers s(u,v) = (#columns assigning u and v the same label) / k directly
// from the matrix rows.
class LabelOracle {
public:
    explicit LabelOracle(const LabelMatrix& m) : m_(&m) {}

    std::size_t size() const { return m_->nodes(); }
    std::uint32_t scale() const { return static_cast<std::uint32_t>(m_->columns()); }

    std::uint32_t match_count(NodeId u, NodeId v) const {
        const auto ru = m_->row(u);
        const auto rv = m_->row(v);
        std::uint32_t matches = 0;
        for (std::size_t j = 0; j < ru.size(); ++j) matches += (ru[j] == rv[j]);
        return matches;
    }

    double query(NodeId u, NodeId v) const {
        return static_cast<double>(match_count(u, v)) / static_cast<double>(scale());
    }

private:
    const LabelMatrix* m_;
};

inline double label_similarity(const LabelMatrix& m, NodeId u, NodeId v) {
    return LabelOracle(m).query(u, v);
}

// Distinct column indices, ascending.
struct ColumnSample {
    std::vector<std::size_t> chosen;
};

// R distinct columns uniformly without replacement (partial Fisher-Yates).
inline ColumnSample draw_column_sample(std::size_t k, std::size_t r, RandomSource& rng) {
    if (r == 0) throw std::invalid_argument("draw_column_sample: need at least one column");
    if (r > k) throw std::invalid_argument("draw_column_sample: sample size exceeds column count");
    std::vector<std::size_t> pool(k);
    for (std::size_t i = 0; i < k; ++i) pool[i] = i;
    for (std::size_t i = 0; i < r; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(k - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(r);
    std::sort(pool.begin(), pool.end());
    return ColumnSample{std::move(pool)};
}

inline LabelMatrix select_columns(const LabelMatrix& m, const ColumnSample& sample) {
    if (sample.chosen.empty())
        throw std::invalid_argument("select_columns: empty sample");
    const std::size_t n = m.nodes();
    const std::size_t r = sample.chosen.size();
    std::vector<Label> data(n * r);
    for (std::size_t v = 0; v < n; ++v) {
        const auto row = m.row(static_cast<NodeId>(v));
        for (std::size_t i = 0; i < r; ++i) {
            const std::size_t col = sample.chosen[i];
            if (col >= m.columns())
                throw std::invalid_argument("select_columns: column index out of range");
            data[v * r + i] = row[col];
        }
    }
    return LabelMatrix(n, r, std::move(data));
}

inline LabelMatrix sample_columns(const LabelMatrix& m, std::size_t r, RandomSource& rng) {
    const ColumnSample sample = draw_column_sample(m.columns(), r, rng);
    return select_columns(m, sample);
}

// All pairwise similarities materialized as floats (upper triangle).
// Quadratic in n; only worth it when n is small or queries vastly outnumber
// pairs. Exact match counts are recovered by rounding, which is safe for
// k < 2^24.
class PrecomputedMatrix {
public:
    static PrecomputedMatrix from_labels(const LabelMatrix& m) {
        PrecomputedMatrix p;
        p.n_ = m.nodes();
        p.k_ = static_cast<std::uint32_t>(m.columns());
        p.tri_.resize(p.n_ * (p.n_ - 1) / 2);
        const LabelOracle oracle(m);
        std::size_t idx = 0;
        for (NodeId u = 0; u + 1 < p.n_; ++u)
            for (NodeId v = u + 1; v < p.n_; ++v)
                p.tri_[idx++] = static_cast<float>(oracle.query(u, v));
        return p;
    }

    std::size_t size() const { return n_; }
    std::uint32_t scale() const { return k_; }

    float stored(NodeId u, NodeId v) const {
        if (u >= n_ || v >= n_)
            throw std::invalid_argument("PrecomputedMatrix: node index out of range");
        if (u == v) return 1.0f;
        if (u > v) std::swap(u, v);
        // index into row u of the strictly-upper triangle
        const std::size_t base = std::size_t(u) * (2 * n_ - u - 1) / 2;
        return tri_[base + (v - u - 1)];
    }

    double query(NodeId u, NodeId v) const { return stored(u, v); }

    std::uint32_t match_count(NodeId u, NodeId v) const {
        return static_cast<std::uint32_t>(
            std::llround(static_cast<double>(stored(u, v)) * static_cast<double>(k_)));
    }

private:
    std::size_t n_ = 0;
    std::uint32_t k_ = 0;
    std::vector<float> tri_;
};

inline PrecomputedMatrix precompute(const LabelMatrix& m) {
    return PrecomputedMatrix::from_labels(m);
}

// Undirected simple graph, neighbor lists sorted for O(log deg) membership
// tests.
class GraphAdjacency {
public:
    GraphAdjacency(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) : n_(n) {
        if (n_ == 0) throw std::invalid_argument("GraphAdjacency: need at least one node");
        adj_.assign(n_, {});
        for (const auto& [u, v] : edges) {
            if (u >= n_ || v >= n_)
                throw std::invalid_argument("GraphAdjacency: endpoint out of range");
            if (u == v)
                throw std::invalid_argument("GraphAdjacency: self loop");
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& list : adj_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
    }

    std::size_t size() const { return n_; }

    std::span<const NodeId> neighbors(NodeId v) const {
        if (v >= n_) throw std::invalid_argument("GraphAdjacency: node index out of range");
        return adj_[v];
    }

    std::size_t degree(NodeId v) const { return neighbors(v).size(); }

    bool has_edge(NodeId u, NodeId v) const {
        if (u >= n_ || v >= n_)
            throw std::invalid_argument("GraphAdjacency: node index out of range");
        if (u == v) return false;
        const auto& shorter = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        const NodeId target = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::binary_search(shorter.begin(), shorter.end(), target);
    }

private:
    std::size_t n_;
    std::vector<std::vector<NodeId>> adj_;
};

// 0/1 similarity induced by a graph: s(u,v) = 1 iff uv is an edge, s(u,u)=1.
class GraphOracle {
public:
    explicit GraphOracle(const GraphAdjacency& g) : g_(&g) {}

    std::size_t size() const { return g_->size(); }
    std::uint32_t scale() const { return 1; }

    std::uint32_t match_count(NodeId u, NodeId v) const {
        return (u == v || g_->has_edge(u, v)) ? 1u : 0u;
    }

    double query(NodeId u, NodeId v) const { return match_count(u, v); }

private:
    const GraphAdjacency* g_;
};

inline GraphOracle graph_oracle(const GraphAdjacency& g) { return GraphOracle(g); }

} // namespace conclust
