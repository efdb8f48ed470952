#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "qmgeo/controls.hpp"
#include "qmgeo/cross_ratio.hpp"
#include "qmgeo/errors.hpp"
#include "qmgeo/sampling.hpp"
#include "qmgeo/space.hpp"

namespace qmgeo {

/// A bijection between two finite spaces of equal cardinality, written as an
/// index assignment source -> target.
struct PointMap {
    QuasiMetricSpace source;
    QuasiMetricSpace target;
    std::vector<std::size_t> bijection;

    PointMap(QuasiMetricSpace src, QuasiMetricSpace tgt, std::vector<std::size_t> bij)
        : source(std::move(src)), target(std::move(tgt)), bijection(std::move(bij)) {
        if (source.size() != target.size() || bijection.size() != source.size())
            throw DomainError("map requires equal-cardinality index sets");
        std::vector<char> seen(bijection.size(), 0);
        for (std::size_t v : bijection) {
            if (v >= bijection.size() || seen[v])
                throw DomainError("assignment is not a bijection");
            seen[v] = 1;
        }
    }

    static PointMap identity(QuasiMetricSpace src, QuasiMetricSpace tgt) {
        std::vector<std::size_t> bij(src.size());
        for (std::size_t i = 0; i < bij.size(); ++i) bij[i] = i;
        return PointMap(std::move(src), std::move(tgt), std::move(bij));
    }
};

/// Composition g(f(x)) of two maps sharing the middle space cardinality.
inline PointMap compose_maps(const PointMap& f, const PointMap& g) {
    if (f.target.size() != g.source.size())
        throw DomainError("composition requires matching cardinalities");
    std::vector<std::size_t> bij(f.bijection.size());
    for (std::size_t i = 0; i < bij.size(); ++i) bij[i] = g.bijection[f.bijection[i]];
    return PointMap(f.source, g.target, std::move(bij));
}

/// Empirical distortion record reduced to its monotone upper staircase:
/// stored abscissas and values are strictly increasing and every raw
/// (t, s) sample lies on or below the staircase.
struct DistortionEnvelope {
    ControlKind kind = ControlKind::symmetric;
    std::vector<std::pair<double, double>> points;
    std::uint64_t raw_count = 0;

    /// Largest recorded value at abscissa <= t (0 when t precedes the data).
    double value_at(double t) const {
        double best = 0.0;
        for (const auto& [ti, si] : points) {
            if (ti > t) break;
            best = si;
        }
        return best;
    }
};

namespace detail {

inline DistortionEnvelope reduce_envelope(std::vector<std::pair<double, double>>& raw,
                                          ControlKind kind) {
    DistortionEnvelope env;
    env.kind = kind;
    env.raw_count = raw.size();
    std::sort(raw.begin(), raw.end(), [](const auto& p, const auto& q) {
        return p.first < q.first || (p.first == q.first && p.second > q.second);
    });
    double cur = -std::numeric_limits<double>::infinity();
    for (const auto& p : raw) {
        if (p.second > cur) {
            env.points.push_back(p);
            cur = p.second;
        }
    }
    return env;
}

} // namespace detail

/// Distance-ratio distortion samples (t, s) with t = rho1(x,a)/rho1(x,b) and
/// s = rho2(x',a')/rho2(x',b') over ordered triples of distinct points.
/// Full enumeration for n <= 128, otherwise `budget` seeded samples.
inline DistortionEnvelope qs_envelope(const PointMap& map, std::uint64_t budget,
                                      std::uint64_t seed) {
    const std::size_t n = map.source.size();
    if (n < 3) throw DomainError("insufficient points: ratio envelope needs n >= 3");

    std::vector<std::pair<double, double>> raw;
    const auto record = [&](std::size_t x, std::size_t a, std::size_t b) {
        const double t = map.source.rho(x, a) / map.source.rho(x, b);
        const std::size_t xp = map.bijection[x], ap = map.bijection[a], bp = map.bijection[b];
        const double s = map.target.rho(xp, ap) / map.target.rho(xp, bp);
        raw.emplace_back(t, s);
    };

    if (n <= 128) {
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (x != a && x != b && a != b) record(x, a, b);
    } else {
        SplitMix64 rng(seed);
        for (std::uint64_t s = 0; s < budget; ++s) {
            const auto t = distinct_tuple<3>(rng, n);
            record(t[0], t[1], t[2]);
        }
    }
    return detail::reduce_envelope(raw, ControlKind::symmetric);
}

/// Cross-ratio distortion samples (r1, r2) over ordered quadruples of
/// distinct points. Full enumeration for n <= 40.
inline DistortionEnvelope qm_envelope(const PointMap& map, std::uint64_t budget,
                                      std::uint64_t seed) {
    const std::size_t n = map.source.size();
    if (n < 4) throw DomainError("insufficient points: cross-ratio envelope needs n >= 4");

    std::vector<std::pair<double, double>> raw;
    const auto record = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        const double t = cross_ratio(map.source, a, b, c, d);
        const double s = cross_ratio(map.target, map.bijection[a], map.bijection[b],
                                     map.bijection[c], map.bijection[d]);
        raw.emplace_back(t, s);
    };

    if (n <= 40) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d) {
                        if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                        record(a, b, c, d);
                    }
    } else {
        SplitMix64 rng(seed);
        for (std::uint64_t s = 0; s < budget; ++s) {
            const auto q = distinct_tuple<4>(rng, n);
            record(q[0], q[1], q[2], q[3]);
        }
    }
    return detail::reduce_envelope(raw, ControlKind::mobius);
}

/// Log-spaced candidate exponents in [lo, hi].
inline std::vector<double> default_alpha_grid(double lo = 1.0, double hi = 8.0,
                                              std::size_t count = 64) {
    if (!(lo >= 1.0) || !(hi >= lo) || count < 1)
        throw DomainError("alpha grid must start at >= 1");
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        grid[i] = lo * std::pow(hi / lo, u);
    }
    return grid;
}

/// For each candidate exponent the minimal dominating coefficient is
/// max over envelope points of s / max(t^(1/alpha), t^alpha); the returned
/// control minimizes that coefficient, ties to the smaller exponent, and
/// dominates every envelope point by construction.
inline PowerControl fit_power_control(const DistortionEnvelope& env,
                                      const std::vector<double>& alpha_grid) {
    if (env.points.empty()) throw DomainError("cannot fit an empty envelope");
    for (const auto& [t, s] : env.points)
        if (t == 0.0 && s > 0.0) throw DomainError("unfittable envelope: s > 0 at t = 0");

    double best_m = std::numeric_limits<double>::infinity();
    double best_alpha = alpha_grid.front();
    for (const double alpha : alpha_grid) {
        if (!(alpha >= 1.0)) throw DomainError("alpha grid entries must be >= 1");
        double m = 1.0;
        for (const auto& [t, s] : env.points)
            m = std::max(m, s / std::max(std::pow(t, 1.0 / alpha), std::pow(t, alpha)));
        if (m < best_m) {
            best_m = m;
            best_alpha = alpha;
        }
    }
    return PowerControl(env.kind, best_m, best_alpha);
}

inline PowerControl fit_power_control(const DistortionEnvelope& env) {
    return fit_power_control(env, default_alpha_grid());
}

/// The triple that is diameter-spread, up to the reported factor, in both
/// the source and the target.
struct ThreePointReport {
    double lambda_hat = 1.0;
    std::array<std::size_t, 3> triple{0, 0, 0};
};

/// lambda_hat = min over triples of max(diam1 / min pairwise rho1,
/// diam2 / min pairwise rho2'). Exact O(n^3) scan.
inline ThreePointReport three_point_lambda(const PointMap& map) {
    const std::size_t n = map.source.size();
    if (n < 3) throw DomainError("insufficient points: three-point condition needs n >= 3");

    const double diam1 = map.source.diameter();
    const double diam2 = map.target.diameter();
    ThreePointReport rep;
    rep.lambda_hat = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const double m1 = std::min({map.source.rho(i, j), map.source.rho(i, k),
                                            map.source.rho(j, k)});
                const std::size_t ip = map.bijection[i], jp = map.bijection[j],
                                  kp = map.bijection[k];
                const double m2 = std::min({map.target.rho(ip, jp), map.target.rho(ip, kp),
                                            map.target.rho(jp, kp)});
                const double lam = std::max(diam1 / m1, diam2 / m2);
                if (lam < rep.lambda_hat) {
                    rep.lambda_hat = lam;
                    rep.triple = {i, j, k};
                }
            }
    return rep;
}

} // namespace qmgeo
