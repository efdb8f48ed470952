#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qmgeo/generators.hpp"
#include "qmgeo/sampling.hpp"
#include "qmgeo/space.hpp"

namespace qmgeo::testing {

/// Independent triple scan for the minimal quasi-metric coefficient.
inline double brute_force_k_min(const QuasiMetricSpace& z) {
    const std::size_t n = z.size();
    double k = 1.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t w = 0; w < n; ++w) {
                if (x == w || y == x || y == w) continue;
                k = std::max(k, z.rho(x, w) / std::max(z.rho(x, y), z.rho(y, w)));
            }
    return k;
}

/// Dense radius sweep for the uniform-perfectness constant: walks the window
/// in steps of 1e-3 * r_min and evaluates the definition directly at every
/// admissible (x, r).
struct GridSweepResult {
    double mu_hat = 1.0;
    bool vacuous = true;
};

inline GridSweepResult grid_sweep_up_constant(const QuasiMetricSpace& z, const ScaleWindow& w) {
    GridSweepResult out;
    const double step = 1e-3 * w.r_min;
    const std::size_t n = z.size();
    for (double r = w.r_min; r <= w.r_max * (1.0 + 1e-15); r += step) {
        for (std::size_t x = 0; x < n; ++x) {
            bool complement = false;
            double largest_inside = 0.0;
            bool inside = false;
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x) continue;
                const double d = z.rho(x, y);
                if (d >= r) complement = true;
                if (d < r) {
                    inside = true;
                    largest_inside = std::max(largest_inside, d);
                }
            }
            if (!complement) continue; // not admissible at this radius
            out.vacuous = false;
            const double value = inside ? largest_inside / r : 0.0;
            out.mu_hat = std::min(out.mu_hat, value);
        }
    }
    if (out.vacuous) out.mu_hat = 1.0;
    return out;
}

/// Exhaustive 2-D (alpha, M) grid search used as the fitting oracle: over the
/// alpha grid and an M grid of the stated resolution, the smallest (M, alpha)
/// in lexicographic (M, alpha) order that dominates every envelope point.
struct FitOracleResult {
    double m = 1.0;
    double alpha = 1.0;
};

inline FitOracleResult grid_fit_oracle(const std::vector<std::pair<double, double>>& points,
                                       const std::vector<double>& alpha_grid, double m_max,
                                       double m_step) {
    FitOracleResult best;
    best.m = std::numeric_limits<double>::infinity();
    for (const double alpha : alpha_grid) {
        for (double m = 1.0; m <= m_max; m += m_step) {
            bool dominates = true;
            for (const auto& [t, s] : points) {
                const double bound = m * std::max(std::pow(t, 1.0 / alpha), std::pow(t, alpha));
                if (s > bound) {
                    dominates = false;
                    break;
                }
            }
            if (dominates) {
                if (m < best.m - 1e-15) {
                    best.m = m;
                    best.alpha = alpha;
                }
                break; // larger M only gets worse for this alpha
            }
        }
    }
    return best;
}

/// Min-plus closure by repeated matrix "squaring" until stable; independent
/// route to all-pairs shortest chain sums.
inline SquareMatrix min_plus_closure(const SquareMatrix& w) {
    const std::size_t n = w.size();
    SquareMatrix d = w;
    bool changed = true;
    while (changed) {
        changed = false;
        SquareMatrix next = d;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double best = d(i, j);
                for (std::size_t k = 0; k < n; ++k)
                    best = std::min(best, d(i, k) + d(k, j));
                if (best < next(i, j)) {
                    next(i, j) = best;
                    changed = true;
                }
            }
        d = next;
    }
    return d;
}

/// Seeded planar cloud with points kept clear of the origin.
inline std::vector<std::vector<double>> random_planar_cloud(std::size_t n, std::uint64_t seed,
                                                            double min_norm = 0.0) {
    SplitMix64 rng(seed);
    std::vector<std::vector<double>> pts;
    while (pts.size() < n) {
        const double x = 2.0 * rng.next_double() - 1.0;
        const double y = 2.0 * rng.next_double() - 1.0;
        if (std::sqrt(x * x + y * y) < min_norm) continue;
        bool fresh = true;
        for (const auto& p : pts) fresh = fresh && (p[0] != x || p[1] != y);
        if (fresh) pts.push_back({x, y});
    }
    return pts;
}

/// Metric cloud with symmetric multiplicative jitter: a genuine quasi-metric
/// whose coefficient stays close to but above the metric bound.
inline QuasiMetricSpace perturbed_metric_space(std::size_t n, std::uint64_t seed,
                                               double jitter = 0.15) {
    const auto cloud = random_planar_cloud(n, seed);
    QuasiMetricSpace base = make_euclidean_cloud(cloud, "perturbed");
    SquareMatrix rho(n);
    SplitMix64 rng(seed ^ 0x5eedULL);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double u = 2.0 * rng.next_double() - 1.0;
            const double v = base.rho(i, j) * std::exp(jitter * u);
            rho(i, j) = rho(j, i) = v;
        }
    return QuasiMetricSpace(base.labels(), std::move(rho), "perturbed");
}

} // namespace qmgeo::testing
