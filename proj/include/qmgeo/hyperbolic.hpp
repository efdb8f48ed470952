#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qmgeo/errors.hpp"
#include "qmgeo/space.hpp"

namespace qmgeo {

/// One net point of the leveled approximation: the index of its center in
/// the underlying space and the level it lives on.
struct HypVertex {
    int level = 0;
    std::size_t center = 0;
};

/// Leveled graph of nested maximal separated nets over a finite space, with
/// unit-length edges inside and between adjacent levels and a unique root at
/// level 0. Carries the space it was built from so boundary estimates can
/// refer back to the original points.
struct HypGraph {
    QuasiMetricSpace space;
    double r = 0.5;
    int levels = 0;
    double k_used = 1.0;
    std::vector<HypVertex> vertices;
    std::vector<std::vector<std::size_t>> adjacency;
    std::vector<double> scales; // scale per level: diam * r^k

    std::size_t root() const { return 0; }

    std::vector<std::size_t> level_vertices(int level) const {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < vertices.size(); ++v)
            if (vertices[v].level == level) out.push_back(v);
        return out;
    }
};

/// Greedy maximal separated nets, lowest index first: level k keeps a point
/// when its distance to every kept point exceeds scale_k = diam * r^k.
/// Level 0 is always the single vertex centered at index 0. Vertices within
/// one level step are joined when rho(center, center') <= 2 * K * max(scale).
inline HypGraph build_hyperbolic_approximation(const QuasiMetricSpace& space, double r,
                                               int levels) {
    if (!(r > 0.0) || !(r < 1.0)) throw DomainError("net parameter must lie in (0, 1)");
    if (levels < 1) throw DomainError("approximation needs at least one level");
    if (space.size() < 2) throw DomainError("insufficient points: approximation needs n >= 2");

    HypGraph g{space};
    g.r = r;
    g.levels = levels;
    g.k_used = space.k_min();
    const double diam = space.diameter();

    for (int k = 0; k <= levels; ++k) {
        const double scale = diam * std::pow(r, k);
        g.scales.push_back(scale);
        std::vector<std::size_t> centers;
        for (std::size_t i = 0; i < space.size(); ++i) {
            bool separated = true;
            for (std::size_t c : centers)
                if (!(space.rho(i, c) > scale)) {
                    separated = false;
                    break;
                }
            if (separated) centers.push_back(i);
        }
        for (std::size_t c : centers) g.vertices.push_back({k, c});
    }

    const std::size_t m = g.vertices.size();
    g.adjacency.assign(m, {});
    for (std::size_t v = 0; v < m; ++v)
        for (std::size_t w = v + 1; w < m; ++w) {
            const int kv = g.vertices[v].level, kw = g.vertices[w].level;
            if (std::abs(kv - kw) > 1) continue;
            const double bound = 2.0 * g.k_used * std::max(g.scales[kv], g.scales[kw]);
            const double d = space.rho(g.vertices[v].center, g.vertices[w].center);
            if (d <= bound && !(kv == kw && g.vertices[v].center == g.vertices[w].center)) {
                g.adjacency[v].push_back(w);
                g.adjacency[w].push_back(v);
            }
        }

    // Reachability check from the root; the covering property of maximal
    // nets makes disconnection a sign of pathological parameters.
    std::vector<int> dist(m, -1);
    std::deque<std::size_t> queue{g.root()};
    dist[g.root()] = 0;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w : g.adjacency[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    for (std::size_t v = 0; v < m; ++v)
        if (dist[v] < 0)
            throw DomainError("approximation graph is disconnected at vertex centered on point " +
                              space.label(g.vertices[v].center));
    return g;
}

/// Unit-length graph distances from one vertex by breadth-first search.
inline std::vector<int> bfs_distances(const HypGraph& g, std::size_t from) {
    std::vector<int> dist(g.vertices.size(), -1);
    std::deque<std::size_t> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w : g.adjacency[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

/// (v|w)_o = (|v,o| + |w,o| - |v,w|) / 2 with graph distances.
inline double gromov_product(const HypGraph& g, std::size_t v, std::size_t w) {
    const std::vector<int> from_root = bfs_distances(g, g.root());
    const std::vector<int> from_v = bfs_distances(g, v);
    return 0.5 * (from_root[v] + from_root[w] - from_v[w]);
}

/// Gromov products of all deepest-level vertex pairs with respect to the root.
inline SquareMatrix gromov_product_matrix(const HypGraph& g) {
    const std::vector<std::size_t> deepest = g.level_vertices(g.levels);
    const std::vector<int> from_root = bfs_distances(g, g.root());

    SquareMatrix products(deepest.size());
    for (std::size_t i = 0; i < deepest.size(); ++i) {
        const std::vector<int> from_v = bfs_distances(g, deepest[i]);
        for (std::size_t j = 0; j < deepest.size(); ++j)
            products(i, j) =
                0.5 * (from_root[deepest[i]] + from_root[deepest[j]] - from_v[deepest[j]]);
    }
    return products;
}

/// Visual quasi-metric estimate on the original points.
struct BoundaryResult {
    QuasiMetricSpace space;                 // a^{-(v|w)_o} distances on the originals
    std::vector<std::size_t> assignment;    // original point -> deepest-level vertex
    std::size_t floor_pairs = 0;            // pairs separated only by the resolution floor
    double floor_value = 0.0;               // a^{-(levels+1)}
};

/// Distances a^{-(v_z|v_y)_o} between originals mapped to their nearest
/// deepest-level centers (ties to the lowest center index). Distinct
/// originals sharing a center sit at the resolution floor a^{-(L+1)},
/// flagged through floor_pairs.
inline BoundaryResult boundary_quasimetric(const HypGraph& g, double a) {
    if (!(a > 1.0)) throw DomainError("visual base must exceed 1");

    const std::vector<std::size_t> deepest = g.level_vertices(g.levels);
    const std::size_t n = g.space.size();

    std::vector<std::size_t> assign(n, 0);
    for (std::size_t z = 0; z < n; ++z) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_v = deepest.front();
        for (std::size_t v : deepest) {
            const double d = g.space.rho(z, g.vertices[v].center);
            if (d < best) {
                best = d;
                best_v = v;
            }
        }
        assign[z] = best_v;
    }

    const SquareMatrix products = gromov_product_matrix(g);
    std::vector<std::size_t> pos(g.vertices.size(), 0);
    for (std::size_t i = 0; i < deepest.size(); ++i) pos[deepest[i]] = i;

    const double floor_value = std::pow(a, -(g.levels + 1.0));
    BoundaryResult out{g.space, std::move(assign), 0, floor_value};

    SquareMatrix rho(n);
    for (std::size_t z = 0; z < n; ++z)
        for (std::size_t y = z + 1; y < n; ++y) {
            double v;
            if (out.assignment[z] == out.assignment[y]) {
                v = floor_value;
                ++out.floor_pairs;
            } else {
                v = std::pow(a, -products(pos[out.assignment[z]], pos[out.assignment[y]]));
            }
            rho(z, y) = rho(y, z) = v;
        }

    out.space = QuasiMetricSpace(g.space.labels(), std::move(rho),
                                 g.space.name() + "_boundary");
    return out;
}

/// Log-log comparison of two distance structures on the same point set.
struct BoundaryComparison {
    double gamma_hat = 1.0;       // least-squares exponent of log(b) against log(o)
    double residual_spread = 0.0; // max - min fit residual
    double rank_correlation = 1.0; // Spearman coefficient of the two orderings
};

namespace detail {

inline std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double rank = 0.5 * (i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 1.0;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace detail

/// Fits log(boundary) = gamma * log(original) + c over all pairs and reports
/// the exponent, the residual spread, and the Spearman correlation of the
/// two distance orderings.
inline BoundaryComparison boundary_comparison(const QuasiMetricSpace& original,
                                              const QuasiMetricSpace& boundary) {
    if (original.size() != boundary.size())
        throw DomainError("comparison requires identical point sets");
    const std::size_t n = original.size();
    if (n * (n - 1) / 2 < 3) throw DomainError("insufficient data: need at least 3 pairs");

    std::vector<double> lo, lb;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            lo.push_back(std::log(original.rho(i, j)));
            lb.push_back(std::log(boundary.rho(i, j)));
        }

    const std::size_t m = lo.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += lo[i];
        my += lb[i];
    }
    mx /= m;
    my /= m;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxy += (lo[i] - mx) * (lb[i] - my);
        sxx += (lo[i] - mx) * (lo[i] - mx);
    }

    BoundaryComparison out;
    out.gamma_hat = sxx == 0.0 ? 1.0 : sxy / sxx;
    const double intercept = my - out.gamma_hat * mx;

    double rmin = std::numeric_limits<double>::infinity();
    double rmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const double res = lb[i] - (out.gamma_hat * lo[i] + intercept);
        rmin = std::min(rmin, res);
        rmax = std::max(rmax, res);
    }
    out.residual_spread = rmax - rmin;
    out.rank_correlation = detail::pearson(detail::average_ranks(lo), detail::average_ranks(lb));
    return out;
}

} // namespace qmgeo
