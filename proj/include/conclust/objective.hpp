#pragma once

// Objective values. Disagreement between two partitions is counted through a
// contingency table in O(n) space instead of enumerating the n(n-1)/2 node
// pairs, and every objective is an exact integer.

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "core.hpp"

namespace conclust {

using Cost = std::int64_t;

inline Cost pair_count(Cost size) { return size * (size - 1) / 2; }

// Cell counts n_ab = |{v : first[v]=a, second[v]=b}| plus marginals.
// Works on raw (not necessarily canonical) labels.
class ContingencyTable {
public:
    ContingencyTable(std::span<const Label> first, std::span<const Label> second) {
        if (first.size() != second.size())
            throw std::invalid_argument("ContingencyTable: label sequences differ in length");
        if (first.empty())
            throw std::invalid_argument("ContingencyTable: empty label sequences");
        for (std::size_t v = 0; v < first.size(); ++v) {
            ++cells_[{first[v], second[v]}];
            ++row_sums_[first[v]];
            ++col_sums_[second[v]];
        }
    }

    const std::map<std::pair<Label, Label>, Cost>& cells() const { return cells_; }
    const std::map<Label, Cost>& row_sums() const { return row_sums_; }
    const std::map<Label, Cost>& col_sums() const { return col_sums_; }

    // Pairs co-clustered in both partitions.
    Cost joint_pairs() const {
        Cost total = 0;
        for (const auto& [key, count] : cells_) total += pair_count(count);
        return total;
    }

    // Pairs co-clustered in the first partition.
    Cost row_pairs() const {
        Cost total = 0;
        for (const auto& [label, count] : row_sums_) total += pair_count(count);
        return total;
    }

    Cost col_pairs() const {
        Cost total = 0;
        for (const auto& [label, count] : col_sums_) total += pair_count(count);
        return total;
    }

private:
    std::map<std::pair<Label, Label>, Cost> cells_;
    std::map<Label, Cost> row_sums_;
    std::map<Label, Cost> col_sums_;
};

// Number of node pairs the two partitions disagree on: pairs together in
// exactly one of them. Equals row_pairs + col_pairs - 2*joint_pairs.
inline Cost disagree_labels(std::span<const Label> a, std::span<const Label> b) {
    ContingencyTable table(a, b);
    return table.row_pairs() + table.col_pairs() - 2 * table.joint_pairs();
}

inline Cost disagree(const Clustering& a, const Clustering& b) {
    return disagree_labels(a.labels, b.labels);
}

// Sum of disagreements between c and every column of m. This is the
// consensus objective; runs in O(n*k) time and O(n) extra space.
inline Cost total_disagreement(const Clustering& c, const LabelMatrix& m) {
    if (c.size() != m.nodes())
        throw std::invalid_argument("total_disagreement: clustering/matrix node counts differ");
    Cost total = 0;
    for (std::size_t col = 0; col < m.columns(); ++col) {
        const std::vector<Label> column = m.column_raw(col);
        total += disagree_labels(c.labels, column);
    }
    return total;
}

// Correlation-clustering cost of c against the weighted instance induced by
// m, scaled by k so it stays integral: for each node pair, pairs split by c
// pay the number of columns that join them, pairs joined by c pay the number
// of columns that split them. Identical to total_disagreement; both counts
// charge each (pair, column) disagreement exactly once. Computed by direct
// pair enumeration, so it is the slow reference form.
inline Cost scaled_weighted_cost(const Clustering& c, const LabelMatrix& m) {
    if (c.size() != m.nodes())
        throw std::invalid_argument("scaled_weighted_cost: clustering/matrix node counts differ");
    const std::size_t n = m.nodes();
    const Cost k = static_cast<Cost>(m.columns());
    Cost total = 0;
    for (NodeId u = 0; u < n; ++u) {
        const auto ru = m.row(u);
        for (NodeId v = u + 1; v < n; ++v) {
            const auto rv = m.row(v);
            Cost matches = 0;
            for (std::size_t j = 0; j < ru.size(); ++j) matches += (ru[j] == rv[j]);
            total += (c.labels[u] == c.labels[v]) ? (k - matches) : matches;
        }
    }
    return total;
}

// Exact optimum by enumerating all partitions as restricted growth strings.
// Feasible for n <= 10 (Bell(10) = 115975). Ties resolve to the
// enumeration-first partition, which is deterministic.
inline std::pair<Clustering, Cost> brute_force_optimum(const LabelMatrix& m) {
    const std::size_t n = m.nodes();
    if (n > 10)
        throw std::invalid_argument("brute_force_optimum: limited to 10 nodes");
    const Cost k = static_cast<Cost>(m.columns());

    // cost contribution of co-clustering u,v is k - 2*matches(u,v), relative
    // to the all-singletons baseline sum of matches.
    std::vector<Cost> together(n * n, 0);
    Cost baseline = 0;
    for (NodeId u = 0; u < n; ++u) {
        const auto ru = m.row(u);
        for (NodeId v = u + 1; v < n; ++v) {
            const auto rv = m.row(v);
            Cost matches = 0;
            for (std::size_t j = 0; j < ru.size(); ++j) matches += (ru[j] == rv[j]);
            baseline += matches;
            together[u * n + v] = k - 2 * matches;
        }
    }

    std::vector<Label> labels(n, 0);
    std::vector<Label> best_labels(n, 0);
    Cost best_delta = 0;
    bool have_best = false;

    // Depth-first over restricted growth strings: labels[v] <= max(prefix)+1.
    auto recurse = [&](auto&& self, std::size_t v, Label next_fresh, Cost delta) -> void {
        if (v == n) {
            if (!have_best || delta < best_delta) {
                have_best = true;
                best_delta = delta;
                best_labels = labels;
            }
            return;
        }
        for (Label l = 0; l <= next_fresh; ++l) {
            Cost added = 0;
            for (NodeId u = 0; u < v; ++u)
                if (labels[u] == l) added += together[u * n + v];
            labels[v] = l;
            self(self, v + 1, l == next_fresh ? next_fresh + 1 : next_fresh, delta + added);
        }
    };
    recurse(recurse, 0, 0, 0);

    return {normalize(best_labels), baseline + best_delta};
}

} // namespace conclust
