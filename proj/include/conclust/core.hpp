#pragma once

// Core types: clusterings in canonical label form, node-major label
// matrices, and the similarity oracle concept every clustering algorithm is
// templated over.

#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace conclust {

using NodeId = std::uint32_t;
using Label = std::uint32_t;

// A partition of nodes 0..n-1 in canonical form: label ids are dense
// (0..cluster_count-1) and numbered in order of first appearance, so equal
// partitions compare equal as values.
struct Clustering {
    std::vector<Label> labels;
    std::size_t cluster_count = 0;

    std::size_t size() const { return labels.size(); }
    bool operator==(const Clustering&) const = default;
};

// Canonicalize an arbitrary label sequence. Label values may be sparse.
inline Clustering normalize(std::span<const Label> raw) {
    if (raw.empty()) throw std::invalid_argument("normalize: empty label sequence");
    Clustering c;
    c.labels.resize(raw.size());
    std::unordered_map<Label, Label> remap;
    remap.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] = remap.emplace(raw[i], static_cast<Label>(remap.size()));
        c.labels[i] = it->second;
    }
    c.cluster_count = remap.size();
    return c;
}

inline Clustering normalize(const std::vector<Label>& raw) {
    return normalize(std::span<const Label>(raw));
}

// sizes[i] = number of nodes labelled i. Requires canonical input.
inline std::vector<std::size_t> cluster_sizes(const Clustering& c) {
    std::vector<std::size_t> sizes(c.cluster_count, 0);
    for (Label l : c.labels) {
        if (l >= c.cluster_count)
            throw std::invalid_argument("cluster_sizes: clustering is not canonical");
        ++sizes[l];
    }
    return sizes;
}

// n nodes, k input clusterings, stored node-major: row(v) is the k-tuple of
// labels node v received. Storage is exactly n*k entries; nothing quadratic
// in n is ever allocated here.
class LabelMatrix {
public:
    LabelMatrix(std::size_t n, std::size_t k, std::vector<Label> node_major)
        : n_(n), k_(k), data_(std::move(node_major)) {
        if (n_ == 0) throw std::invalid_argument("LabelMatrix: need at least one node");
        if (k_ == 0) throw std::invalid_argument("LabelMatrix: need at least one column");
        if (data_.size() != n_ * k_)
            throw std::invalid_argument("LabelMatrix: data size " + std::to_string(data_.size()) +
                                        " does not match " + std::to_string(n_) + "x" + std::to_string(k_));
    }

    // Assemble from k clusterings over the same node set.
    static LabelMatrix from_columns(std::span<const Clustering> columns) {
        if (columns.empty())
            throw std::invalid_argument("LabelMatrix::from_columns: need at least one column");
        const std::size_t n = columns[0].size();
        const std::size_t k = columns.size();
        for (const auto& col : columns)
            if (col.size() != n)
                throw std::invalid_argument("LabelMatrix::from_columns: columns disagree on node count");
        std::vector<Label> data(n * k);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t v = 0; v < n; ++v)
                data[v * k + j] = columns[j].labels[v];
        return LabelMatrix(n, k, std::move(data));
    }

    std::size_t nodes() const { return n_; }
    std::size_t columns() const { return k_; }

    std::span<const Label> row(NodeId v) const {
        if (v >= n_) throw std::invalid_argument("LabelMatrix::row: node index out of range");
        return {data_.data() + std::size_t(v) * k_, k_};
    }

    Label at(NodeId v, std::size_t col) const {
        if (col >= k_) throw std::invalid_argument("LabelMatrix::at: column index out of range");
        return row(v)[col];
    }

    // Raw labels of one input clustering, in node order.
    std::vector<Label> column_raw(std::size_t col) const {
        if (col >= k_) throw std::invalid_argument("LabelMatrix::column_raw: column index out of range");
        std::vector<Label> out(n_);
        for (std::size_t v = 0; v < n_; ++v) out[v] = data_[v * k_ + col];
        return out;
    }

    Clustering column(std::size_t col) const { return normalize(column_raw(col)); }

    const std::vector<Label>& data() const { return data_; }

private:
    std::size_t n_;
    std::size_t k_;
    std::vector<Label> data_;
};

// Similarity oracle contract. Queries are symmetric, s(u,u) = 1, and every
// value is a ratio match_count(u,v) / scale() so threshold tests can be done
// in integers. query(u,v) returns that ratio as a double in [0,1].
template <class O>
concept SimilarityOracle = requires(const O& o, NodeId u, NodeId v) {
    { o.size() } -> std::convertible_to<std::size_t>;
    { o.scale() } -> std::convertible_to<std::uint32_t>;
    { o.match_count(u, v) } -> std::convertible_to<std::uint32_t>;
    { o.query(u, v) } -> std::convertible_to<double>;
};

// Attachment test s(u,v) >= 1/2, exact: 2*match >= scale. Ties at exactly
// one half attach.
template <SimilarityOracle O>
bool attaches(const O& o, NodeId u, NodeId v) {
    return 2 * static_cast<std::uint64_t>(o.match_count(u, v)) >= static_cast<std::uint64_t>(o.scale());
}

} // namespace conclust
