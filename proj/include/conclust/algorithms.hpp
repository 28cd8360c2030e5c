#pragma once

// Clustering algorithms over a similarity oracle: random-pivot clustering in
// batch and node-at-a-time form, net-weight voting, single-pass local
// search, and local search run inside each pivot cluster. All of them make
// attachment and move decisions in exact integer arithmetic.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "objective.hpp"
#include "random.hpp"

namespace conclust {

using Permutation = std::vector<NodeId>;

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<NodeId>(i);
    return p;
}

// Fisher-Yates with draws from rng.
inline Permutation random_permutation(std::size_t n, RandomSource& rng) {
    Permutation p = identity_permutation(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(p[i], p[j]);
    }
    return p;
}

inline void check_permutation(std::span<const NodeId> order, std::size_t n) {
    if (order.size() != n)
        throw std::invalid_argument("order length does not match oracle size");
    std::vector<bool> seen(n, false);
    for (NodeId v : order) {
        if (v >= n || seen[v])
            throw std::invalid_argument("order is not a permutation of the node set");
        seen[v] = true;
    }
}

// Pivot clustering: walk the order; each still-unassigned node becomes a
// pivot and captures every unassigned v with s(pivot, v) >= 1/2.
template <SimilarityOracle O>
Clustering pivot_in_order(const O& oracle, std::span<const NodeId> order) {
    const std::size_t n = oracle.size();
    check_permutation(order, n);
    std::vector<Label> labels(n, 0);
    std::vector<bool> assigned(n, false);
    Label next = 0;
    for (NodeId pivot : order) {
        if (assigned[pivot]) continue;
        labels[pivot] = next;
        assigned[pivot] = true;
        for (NodeId v = 0; v < n; ++v) {
            if (assigned[v]) continue;
            if (attaches(oracle, pivot, v)) {
                labels[v] = next;
                assigned[v] = true;
            }
        }
        ++next;
    }
    return normalize(labels);
}

template <SimilarityOracle O>
Clustering pivot(const O& oracle, RandomSource& rng) {
    const Permutation order = random_permutation(oracle.size(), rng);
    return pivot_in_order(oracle, order);
}

// Node-at-a-time pivot state: nodes join the first pivot (in creation order)
// they attach to, else become a pivot themselves.
struct PivotTrace {
    std::vector<NodeId> pivots;     // pivot node ids in creation order
    std::vector<Label> assignment;  // node -> index into pivots

    Clustering clustering() const { return normalize(assignment); }
};

// Processes nodes in the given order against the growing pivot set. With the
// same order, the resulting partition equals pivot_in_order: a node attaches
// to the earliest pivot within distance-1/2 either way, because every
// earlier pivot already failed the test when the node stayed unassigned.
template <SimilarityOracle O>
PivotTrace pivot_sequential(const O& oracle, std::span<const NodeId> order) {
    const std::size_t n = oracle.size();
    check_permutation(order, n);
    PivotTrace trace;
    trace.assignment.assign(n, 0);
    for (NodeId v : order) {
        bool placed = false;
        for (std::size_t i = 0; i < trace.pivots.size(); ++i) {
            if (attaches(oracle, trace.pivots[i], v)) {
                trace.assignment[v] = static_cast<Label>(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            trace.assignment[v] = static_cast<Label>(trace.pivots.size());
            trace.pivots.push_back(v);
        }
    }
    return trace;
}

// Voting: each node joins the existing cluster with the highest net weight
// sum over members, counting s(u,v) - 1/2 per member; requires a strictly
// positive total, ties go to the lowest cluster index, otherwise the node
// opens a new cluster. Net weights are evaluated as 2*match - scale to stay
// in integers.
template <SimilarityOracle O>
Clustering vote_in_order(const O& oracle, std::span<const NodeId> order) {
    const std::size_t n = oracle.size();
    check_permutation(order, n);
    const std::int64_t scale = oracle.scale();
    std::vector<std::vector<NodeId>> members;
    std::vector<Label> labels(n, 0);
    for (NodeId v : order) {
        std::int64_t best_net = 0;
        std::size_t best_cluster = members.size();
        for (std::size_t c = 0; c < members.size(); ++c) {
            std::int64_t net = 0;
            for (NodeId u : members[c])
                net += 2 * static_cast<std::int64_t>(oracle.match_count(u, v)) - scale;
            if (net > best_net) {
                best_net = net;
                best_cluster = c;
            }
        }
        if (best_cluster == members.size()) members.emplace_back();
        labels[v] = static_cast<Label>(best_cluster);
        members[best_cluster].push_back(v);
    }
    return normalize(labels);
}

template <SimilarityOracle O>
Clustering vote(const O& oracle, RandomSource& rng) {
    const Permutation order = random_permutation(oracle.size(), rng);
    return vote_in_order(oracle, order);
}

namespace detail {

// One relocation sweep over `order` within the node set `nodes` (local ids
// 0..nodes.size()-1 refer into it). labels/sizes are updated in place;
// `count` tracks how many label slots exist, empty slots stay as zombies.
// The move rule minimizes the node's scaled attachment cost
// scale*|C| - 2*sum_{u in C} match(u,v); staying costs that with |C|-1,
// a new singleton costs 0; strictly better moves only, ties keep the
// current cluster, then prefer the lowest target index, existing clusters
// before a fresh singleton.
template <SimilarityOracle O>
void relocation_sweep(const O& oracle, std::span<const NodeId> nodes,
                      std::span<const std::size_t> order, std::vector<Label>& labels,
                      std::vector<std::int64_t>& sizes, std::size_t& count) {
    const std::int64_t scale = oracle.scale();
    std::vector<std::int64_t> isum;
    for (std::size_t oi : order) {
        const NodeId v = nodes[oi];
        isum.assign(count, 0);
        for (std::size_t ui = 0; ui < nodes.size(); ++ui) {
            if (ui == oi) continue;
            isum[labels[ui]] += oracle.match_count(nodes[ui], v);
        }
        const Label current = labels[oi];
        const std::int64_t stay = scale * (sizes[current] - 1) - 2 * isum[current];
        std::int64_t best = stay;
        Label target = current;
        for (std::size_t c = 0; c < count; ++c) {
            if (c == current || sizes[c] == 0) continue;
            const std::int64_t move = scale * sizes[c] - 2 * isum[c];
            if (move < best) {
                best = move;
                target = static_cast<Label>(c);
            }
        }
        bool fresh = false;
        if (0 < best) {
            target = static_cast<Label>(count);
            fresh = true;
        }
        if (target != current) {
            --sizes[current];
            labels[oi] = target;
            if (fresh) {
                sizes.push_back(1);
                ++count;
            } else {
                ++sizes[target];
            }
        }
    }
}

} // namespace detail

// One pass of single-node relocation over the whole node set, visiting nodes
// in `order`. Later decisions see earlier moves. Never returns a worse
// clustering than `start` against the oracle's weighted objective.
template <SimilarityOracle O>
Clustering local_search_pass(const O& oracle, const Clustering& start,
                             std::span<const NodeId> order) {
    const std::size_t n = oracle.size();
    if (start.size() != n)
        throw std::invalid_argument("local_search_pass: clustering size does not match oracle");
    check_permutation(order, n);

    std::vector<Label> labels = start.labels;
    std::size_t count = start.cluster_count;
    std::vector<std::int64_t> sizes(count, 0);
    for (Label l : labels) ++sizes[l];

    std::vector<NodeId> nodes = identity_permutation(n);
    std::vector<std::size_t> order_ids(order.begin(), order.end());
    detail::relocation_sweep(oracle, nodes, order_ids, labels, sizes, count);
    return normalize(labels);
}

// Local search restricted to the inside of each pivot cluster: every cluster
// is re-partitioned independently by a relocation pass over its own members
// in random order, starting from the cluster as one block. The result is
// always a refinement of the input partition.
template <SimilarityOracle O>
Clustering inner_local_search(const O& oracle, const Clustering& pivot_result,
                              RandomSource& rng) {
    const std::size_t n = oracle.size();
    if (pivot_result.size() != n)
        throw std::invalid_argument("inner_local_search: clustering size does not match oracle");

    std::vector<std::vector<NodeId>> groups(pivot_result.cluster_count);
    for (NodeId v = 0; v < n; ++v) groups[pivot_result.labels[v]].push_back(v);

    std::vector<Label> out(n, 0);
    Label offset = 0;
    for (const auto& group : groups) {
        std::vector<Label> labels(group.size(), 0);
        std::size_t count = 1;
        std::vector<std::int64_t> sizes{static_cast<std::int64_t>(group.size())};
        std::vector<std::size_t> order(group.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(order.size() - i));
            std::swap(order[i], order[j]);
        }
        detail::relocation_sweep(oracle, group, order, labels, sizes, count);
        for (std::size_t i = 0; i < group.size(); ++i)
            out[group[i]] = offset + labels[i];
        offset += static_cast<Label>(count);
    }
    return normalize(out);
}

// Uniformly random input column of m, as a clustering.
inline Clustering pick_random_input(const LabelMatrix& m, RandomSource& rng) {
    const std::size_t col = static_cast<std::size_t>(rng.below(m.columns()));
    return m.column(col);
}

// Candidate with the smallest total disagreement against the full matrix;
// ties go to the earliest candidate.
inline Clustering best_of(std::span<const Clustering> candidates, const LabelMatrix& m) {
    if (candidates.empty())
        throw std::invalid_argument("best_of: no candidates");
    std::size_t best_idx = 0;
    Cost best_cost = total_disagreement(candidates[0], m);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const Cost cost = total_disagreement(candidates[i], m);
        if (cost < best_cost) {
            best_cost = cost;
            best_idx = i;
        }
    }
    return candidates[best_idx];
}

} // namespace conclust
