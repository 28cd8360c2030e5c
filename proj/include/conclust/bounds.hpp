#pragma once

// Sampling-penalty calculus. For a node pair whose true agreement fraction
// is p < 1/2, a majority over R sampled columns flips the comparison with
// probability Err(R,p) under a normal approximation; the worst-case expected
// cost inflation over p is g(R), and 6/7 g(R) + 5/7 bounds the approximation
// factor of pivot clustering on sampled columns. The triangle-gap function
// is the per-triangle certificate behind that bound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conclust {

// Standard normal CDF via the complementary error function.
inline double normal_cdf(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("normal_cdf: non-finite argument");
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace detail {

inline void check_sampling_args(std::uint64_t samples, double p) {
    if (samples == 0) throw std::invalid_argument("sample count must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0,1]");
}

// Normal-deviate margin sqrt(R)(1/2 - p)/sqrt(p(1-p)), for p in (0, 1/2].
inline double margin(std::uint64_t samples, double p) {
    return std::sqrt(static_cast<double>(samples)) * (0.5 - p) / std::sqrt(p * (1.0 - p));
}

} // namespace detail

// Probability that a majority over `samples` independent draws lands on the
// wrong side when the per-draw agreement probability is p. Symmetric in
// p <-> 1-p; exactly 1/2 at p = 1/2; tends to 0 at the endpoints.
inline double sampling_error(std::uint64_t samples, double p) {
    detail::check_sampling_args(samples, p);
    if (p > 0.5) p = 1.0 - p;
    if (p == 0.0) return 0.0;
    return 1.0 - normal_cdf(detail::margin(samples, p));
}

// Expected cost of the sampled decision relative to the true cost p:
// [p(1-Err) + (1-p)Err] / p for p in (0, 1/2], reflected for p > 1/2,
// and 1 when the decision can never flip (p = 0).
inline double expected_cost_ratio(std::uint64_t samples, double p) {
    detail::check_sampling_args(samples, p);
    if (p > 0.5) p = 1.0 - p;
    if (p == 0.0) return 1.0;
    const double err = sampling_error(samples, p);
    return (p * (1.0 - err) + (1.0 - p) * err) / p;
}

// Worst-case expected cost ratio over p: g(R) = max_{p in (0,1/2]}
// expected_cost_ratio(R, p). Maximized over a dense grid of 1e5 points on
// [1e-6, 1/2], then refined by golden-section search around the best grid
// point.
inline double sample_inflation(std::uint64_t samples) {
    if (samples == 0) throw std::invalid_argument("sample_inflation: sample count must be positive");
    constexpr double lo = 1e-6;
    constexpr double hi = 0.5;
    constexpr std::size_t points = 100000;

    const auto f = [samples](double p) { return expected_cost_ratio(samples, p); };

    double best_p = hi;
    double best = f(hi);
    for (std::size_t i = 0; i < points; ++i) {
        const double p = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        const double value = f(p);
        if (value > best) {
            best = value;
            best_p = p;
        }
    }

    // golden-section refinement on the bracketing grid interval
    const double step = (hi - lo) / static_cast<double>(points - 1);
    double a = std::max(lo, best_p - step);
    double b = std::min(hi, best_p + step);
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 80; ++iter) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return std::max(best, std::max(fc, fd));
}

// Approximation guarantee for pivot clustering on R sampled columns:
// (6/7) g(R) + 5/7. Decreases toward 11/7 as R grows.
inline double consensus_bound(std::uint64_t samples) {
    return (6.0 / 7.0) * sample_inflation(samples) + 5.0 / 7.0;
}

// A bad triangle after thresholding: w1 is the agreement weight of the pair
// cut by clustering the triangle as pivot does, w2 and w3 are the weights of
// the two pairs kept. The admissible region is 1/2 <= w1 <= w2, w3 <= 1 with
// w1 + w2 + w3 <= 2.
struct Triangle {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;
};

inline bool triangle_in_region(const Triangle& t, double eps = 1e-9) {
    return t.w1 >= 0.5 - eps && t.w2 >= t.w1 - eps && t.w3 >= t.w1 - eps &&
           t.w2 <= 1.0 + eps && t.w3 <= 1.0 + eps && t.w1 + t.w2 + t.w3 <= 2.0 + eps;
}

// Certificate value (3/7) mult w(t) + (4/7) z(t) - gamma c*(t) where
// w = w1+w2+w3, z = sum 2 w_i (1-w_i), and c* = w1 + (1-w2) + (1-w3) is the
// cheapest way to pay for the triangle. Nonpositive everywhere on the region
// when mult = 1 and gamma = 11/7, with equality only at (1/2, 3/4, 3/4);
// the sampled variant uses mult = g(R) and gamma = consensus_bound(R).
inline double triangle_gap(const Triangle& t, double w_multiplier = 1.0,
                           double gamma = 11.0 / 7.0) {
    if (!triangle_in_region(t))
        throw std::invalid_argument("triangle_gap: point outside admissible region");
    const double w = t.w1 + t.w2 + t.w3;
    const double z = 2.0 * t.w1 * (1.0 - t.w1) + 2.0 * t.w2 * (1.0 - t.w2) +
                     2.0 * t.w3 * (1.0 - t.w3);
    const double cheapest = t.w1 + (1.0 - t.w2) + (1.0 - t.w3);
    return (3.0 / 7.0) * w_multiplier * w + (4.0 / 7.0) * z - gamma * cheapest;
}

struct BoundRow {
    std::uint64_t samples = 0;
    double inflation = 0.0;
    double bound = 0.0;
};

// One row per requested sample count, ascending and deduplicated.
inline std::vector<BoundRow> bound_table(std::span<const std::uint64_t> r_values) {
    if (r_values.empty())
        throw std::invalid_argument("bound_table: need at least one sample count");
    std::vector<std::uint64_t> sorted(r_values.begin(), r_values.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<BoundRow> rows;
    rows.reserve(sorted.size());
    for (std::uint64_t r : sorted) {
        const double g = sample_inflation(r);
        rows.push_back(BoundRow{r, g, (6.0 / 7.0) * g + 5.0 / 7.0});
    }
    return rows;
}

inline std::string bound_table_csv(std::span<const BoundRow> rows) {
    std::string out = "R,g,bound\n";
    char line[96];
    for (const BoundRow& row : rows) {
        std::snprintf(line, sizeof line, "%llu,%.6f,%.6f\n",
                      static_cast<unsigned long long>(row.samples), row.inflation, row.bound);
        out += line;
    }
    return out;
}

} // namespace conclust
