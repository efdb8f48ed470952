#pragma once

#include <cmath>
#include <utility>

#include "qmgeo/errors.hpp"
#include "qmgeo/space.hpp"

namespace qmgeo {

/// Chain metrization output. d_matrix is the length metric obtained by
/// closing rho^epsilon under shortest chains; it satisfies the triangle
/// inequality exactly (relaxation runs to a fixed point) and never exceeds
/// rho^epsilon. When K^epsilon <= 2 the quarter comparison
/// d >= rho^epsilon / 4 is guaranteed.
struct MetrizationResult {
    double epsilon = 1.0;
    SquareMatrix d_matrix;
    double min_ratio = 1.0; // min over pairs of d / rho^epsilon
    std::pair<std::size_t, std::size_t> min_ratio_pair{0, 0};
    bool guarantee_active = false;
    double k_eps = 1.0; // k_min^epsilon
};

/// d_eps(x,y) = min over chains x = z0, ..., zk = y of sum rho^eps(z_i, z_{i+1}),
/// chains restricted to points of the finite space. Computed as all-pairs
/// shortest paths on the complete graph with edge weights rho^eps.
inline MetrizationResult chain_metric(const QuasiMetricSpace& space, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon <= 1.0))
        throw DomainError("metrization exponent must lie in (0, 1]");

    const std::size_t n = space.size();
    SquareMatrix w(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w(i, j) = i == j ? 0.0 : std::pow(space.rho(i, j), epsilon);

    SquareMatrix d = w;
    // Floyd-Warshall, repeated until no entry changes so the final matrix
    // satisfies d(i,j) <= d(i,k) + d(k,j) exactly in floating point.
    bool changed = true;
    std::size_t rounds = 0;
    while (changed && rounds++ <= n + 1) {
        changed = false;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                const double dik = d(i, k);
                for (std::size_t j = 0; j < n; ++j) {
                    const double via = dik + d(k, j);
                    if (via < d(i, j)) {
                        d(i, j) = via;
                        changed = true;
                    }
                }
            }
    }

    MetrizationResult out;
    out.epsilon = epsilon;
    out.min_ratio = 1.0;
    out.k_eps = std::pow(space.k_min(), epsilon);
    out.guarantee_active = out.k_eps <= 2.0 * (1.0 + 1e-12);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double ratio = d(i, j) / w(i, j);
            if (ratio < out.min_ratio) {
                out.min_ratio = ratio;
                out.min_ratio_pair = {i, j};
            }
        }
    out.d_matrix = std::move(d);
    return out;
}

/// Wraps the metrized matrix back into a space so it can round-trip through
/// every other operation.
inline QuasiMetricSpace metrized_space(const QuasiMetricSpace& space,
                                       const MetrizationResult& m) {
    return QuasiMetricSpace(space.labels(), m.d_matrix,
                            space.name() + "_metrized");
}

struct FrinkReport {
    bool pass = false;
    bool guarantee_active = false;
    double min_ratio = 1.0;
    double k_eps = 1.0;
    std::pair<std::size_t, std::size_t> worst_pair{0, 0};
};

/// Asserts the upper comparison d <= rho^eps always; asserts the quarter
/// lower bound only when K^eps <= 2 held. Outside that regime the ratio is
/// reported, never asserted.
inline FrinkReport verify_frink_bounds(const QuasiMetricSpace& space, double epsilon) {
    const MetrizationResult m = chain_metric(space, epsilon);
    FrinkReport rep;
    rep.guarantee_active = m.guarantee_active;
    rep.min_ratio = m.min_ratio;
    rep.k_eps = m.k_eps;
    rep.worst_pair = m.min_ratio_pair;

    bool upper_ok = true;
    const std::size_t n = space.size();
    for (std::size_t i = 0; i < n && upper_ok; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = std::pow(space.rho(i, j), epsilon);
            if (m.d_matrix(i, j) > w * (1.0 + 1e-12)) {
                upper_ok = false;
                rep.worst_pair = {i, j};
                break;
            }
        }

    rep.pass = upper_ok &&
               (!m.guarantee_active || m.min_ratio >= 0.25 * (1.0 - 1e-12));
    return rep;
}

} // namespace qmgeo
