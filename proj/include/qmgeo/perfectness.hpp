#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "qmgeo/controls.hpp"
#include "qmgeo/cross_ratio.hpp"
#include "qmgeo/errors.hpp"
#include "qmgeo/sampling.hpp"
#include "qmgeo/space.hpp"

namespace qmgeo {

// ---------------------------------------------------------------------------
// Uniform perfectness constant
// ---------------------------------------------------------------------------

/// Estimated uniform-perfectness constant over a scale window.
/// mu_hat is the infimum over admissible (x, r) - r in the window with
/// Z \ B(x,r) nonempty - of max{rho(x,y) : 0 < rho(x,y) < r} / r, where an
/// empty punctured ball forces the value 0. When no (x, r) is admissible at
/// all the report is vacuous and mu_hat is 1 by convention.
struct PerfectnessReport {
    double mu_hat = 1.0;
    bool vacuous = true;
    std::size_t witness_point = 0;
    double witness_radius = 0.0;
    double window_min = 0.0;
    double window_max = 0.0;
};

/// Closed-form scan: for each x the ratio (largest distance below r)/r is
/// piecewise d_i/r between consecutive distinct sorted distances, so it is
/// minimized at the right endpoint min(d_{i+1}, r_max) of each piece, plus
/// the isolated-at-scale zero when the window reaches below the nearest
/// neighbor. Matches a dense grid sweep over radii.
inline PerfectnessReport up_constant(const QuasiMetricSpace& space, const ScaleWindow& window) {
    PerfectnessReport rep;
    rep.window_min = window.r_min;
    rep.window_max = window.r_max;
    rep.mu_hat = 1.0;
    rep.vacuous = true;

    const std::size_t n = space.size();
    std::vector<double> dist;
    for (std::size_t x = 0; x < n; ++x) {
        dist.clear();
        for (std::size_t y = 0; y < n; ++y)
            if (y != x) dist.push_back(space.rho(x, y));
        if (dist.empty()) continue;
        std::sort(dist.begin(), dist.end());
        dist.erase(std::unique(dist.begin(), dist.end()), dist.end());
        const double ecc = dist.back();

        // Admissible radii for this point: window intersected with (0, ecc].
        if (window.r_min > ecc) continue;

        // Isolated at scale: some admissible radius has an empty punctured ball.
        if (window.r_min <= dist.front()) {
            rep.vacuous = false;
            if (0.0 < rep.mu_hat) {
                rep.mu_hat = 0.0;
                rep.witness_point = x;
                rep.witness_radius = window.r_min;
            }
        }

        for (std::size_t i = 0; i + 1 < dist.size(); ++i) {
            const double r = std::min(dist[i + 1], window.r_max);
            if (!(r > dist[i]) || r < window.r_min) continue;
            rep.vacuous = false;
            const double value = dist[i] / r;
            if (value < rep.mu_hat) {
                rep.mu_hat = value;
                rep.witness_point = x;
                rep.witness_radius = r;
            }
        }
    }

    if (rep.vacuous) rep.mu_hat = 1.0;
    return rep;
}

/// Constant transfer along a power quasisymmetry (proof rule of the
/// uniform-perfectness invariance lemma): with the auxiliary scale
/// alpha = (2M)^(-a) forcing eta(alpha) = 1/2, the image constant is
/// mu' = 1 / eta(1 / (mu * alpha)).
inline double transfer_up_constant(double mu, const PowerControl& eta) {
    if (!(mu > 0.0) || !(mu < 1.0)) throw DomainError("mu must lie in (0, 1)");
    const double alpha = std::pow(2.0 * eta.m, -eta.alpha);
    return 1.0 / eta(1.0 / (mu * alpha));
}

// ---------------------------------------------------------------------------
// Homogeneous density
// ---------------------------------------------------------------------------

/// Feasibility record for the interval condition
/// lambda1 * rho(a,b) <= rho(a,x) <= lambda2 * rho(a,b) over all ordered
/// pairs with rho(a,b) >= pair_floor.
struct HdReport {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double pair_floor = 0.0;
    bool feasible = false;
    bool vacuous = false; // no pair reaches the floor
    std::array<std::size_t, 2> worst_pair{0, 0};
};

inline HdReport hd_interval(const QuasiMetricSpace& space, double lambda1, double lambda2,
                            double pair_floor) {
    if (!(lambda1 > 0.0) || !(lambda1 <= lambda2) || !(lambda2 < 1.0))
        throw DomainError("interval must satisfy 0 < lambda1 <= lambda2 < 1");
    if (!(pair_floor > 0.0)) throw DomainError("pair floor must be positive");

    HdReport rep;
    rep.lambda1 = lambda1;
    rep.lambda2 = lambda2;
    rep.pair_floor = pair_floor;
    rep.vacuous = true;
    rep.feasible = true;

    const std::size_t n = space.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || space.rho(a, b) < pair_floor) continue;
            rep.vacuous = false;
            const double ab = space.rho(a, b);
            bool ok = false;
            for (std::size_t x = 0; x < n && !ok; ++x) {
                if (x == a) continue;
                const double ax = space.rho(a, x);
                ok = lambda1 * ab <= ax && ax <= lambda2 * ab;
            }
            if (!ok) {
                rep.feasible = false;
                rep.worst_pair = {a, b};
                return rep;
            }
        }
    return rep;
}

/// Best feasible interval: lambda1 is maximized (it equals the smallest over
/// pairs of the largest attained ratio below 1), then lambda2 is tightened
/// to the largest ratio actually used.
inline HdReport hd_search(const QuasiMetricSpace& space, double pair_floor) {
    if (!(pair_floor > 0.0)) throw DomainError("pair floor must be positive");

    HdReport rep;
    rep.pair_floor = pair_floor;
    rep.vacuous = true;
    rep.feasible = true;

    const std::size_t n = space.size();
    double lambda1 = 1.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || space.rho(a, b) < pair_floor) continue;
            rep.vacuous = false;
            const double ab = space.rho(a, b);
            double best = 0.0;
            for (std::size_t x = 0; x < n; ++x) {
                if (x == a) continue;
                const double v = space.rho(a, x) / ab;
                if (v > 0.0 && v < 1.0) best = std::max(best, v);
            }
            if (best == 0.0) {
                rep.feasible = false; // a pair with no attainable ratio in (0,1)
                rep.worst_pair = {a, b};
                return rep;
            }
            if (best < lambda1) {
                lambda1 = best;
                rep.worst_pair = {a, b};
            }
        }

    if (rep.vacuous) return rep;

    double lambda2 = lambda1;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || space.rho(a, b) < pair_floor) continue;
            const double ab = space.rho(a, b);
            double low = 1.0;
            for (std::size_t x = 0; x < n; ++x) {
                if (x == a) continue;
                const double v = space.rho(a, x) / ab;
                if (v >= lambda1 && v < 1.0) low = std::min(low, v);
            }
            lambda2 = std::max(lambda2, low);
        }

    rep.lambda1 = lambda1;
    rep.lambda2 = lambda2;
    return rep;
}

// ---------------------------------------------------------------------------
// Sigma-chains
// ---------------------------------------------------------------------------

/// A finite point sequence between endpoints a and b whose consecutive
/// cross ratios r(a, next, prev, b) stay inside a fixed interval.
/// sigma is the largest exp|log r(a, z_j, z_{j+1}, b)| over steps, and
/// truncated records that the construction stopped at sample resolution.
struct Chain {
    std::size_t a = 0;
    std::size_t b = 0;
    std::vector<std::size_t> points; // ordered from the a side to the b side
    double sigma = 1.0;
    bool truncated = false;
};

namespace detail {

/// Picks the admissible candidate whose selection cross ratio is closest to
/// target, ties to the lowest index. Returns nullopt when none qualifies.
inline std::optional<std::size_t> chain_step(const QuasiMetricSpace& space, std::size_t from,
                                             std::size_t to, std::size_t prev, double mu1,
                                             double mu2, double target,
                                             const std::vector<char>& used) {
    std::optional<std::size_t> best;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (x == from || x == to || used[x]) continue;
        const double r = cross_ratio(space, from, x, prev, to);
        if (r < mu1 || r > mu2) continue;
        const double gap = std::fabs(r - target);
        if (gap < best_gap) {
            best_gap = gap;
            best = x;
        }
    }
    return best;
}

} // namespace detail

/// Iteratively selects x_i with mu1 <= r(a, x_i, x_{i-1}, d) <= mu2 toward d
/// starting from the auxiliary point c, and symmetrically selects the
/// backward sequence toward a with r(d, x_{-i}, x_{1-i}, a) in the same
/// interval. Candidates closest to sqrt(mu1*mu2) win, ties to lowest index.
/// The resulting per-step sigma never exceeds 1/mu1.
inline Chain build_sigma_chain(const QuasiMetricSpace& space, std::size_t a, std::size_t d,
                               std::size_t c, double mu1, double mu2) {
    if (a == d || c == a || c == d) throw DomainError("chain endpoints and anchor must be distinct");
    if (!(mu1 > 0.0) || !(mu1 <= mu2) || !(mu2 < 1.0))
        throw DomainError("interval must satisfy 0 < mu1 <= mu2 < 1");

    const std::size_t n = space.size();
    const double target = std::sqrt(mu1 * mu2);
    Chain chain;
    chain.a = a;
    chain.b = d;
    chain.truncated = true; // finite samples always stop at resolution

    std::vector<char> used(n, 0);
    const auto first = detail::chain_step(space, a, d, c, mu1, mu2, target, used);
    if (!first) return chain;

    std::vector<std::size_t> forward{*first};
    used[*first] = 1;
    for (std::size_t guard = 0; guard < n; ++guard) {
        const auto next =
            detail::chain_step(space, a, d, forward.back(), mu1, mu2, target, used);
        if (!next) break;
        forward.push_back(*next);
        used[*next] = 1;
    }

    std::vector<std::size_t> backward;
    std::size_t prev = forward.front();
    for (std::size_t guard = 0; guard < n; ++guard) {
        const auto next = detail::chain_step(space, d, a, prev, mu1, mu2, target, used);
        if (!next) break;
        backward.push_back(*next);
        used[*next] = 1;
        prev = *next;
    }

    chain.points.assign(backward.rbegin(), backward.rend());
    chain.points.insert(chain.points.end(), forward.begin(), forward.end());

    chain.sigma = 1.0;
    for (std::size_t i = 0; i + 1 < chain.points.size(); ++i) {
        const double r = cross_ratio(space, a, chain.points[i], chain.points[i + 1], d);
        chain.sigma = std::max(chain.sigma, std::max(r, 1.0 / r));
    }
    return chain;
}

/// Least chain position k with r(a, x_k, c, d) < 1/(2 sigma^2). When the
/// chain respects the per-step bound the previous element then satisfies
/// 1/(2 sigma^2) <= r(a, x_{k-1}, c, d) <= 1/(2 sigma). Returns nullopt when
/// the finite chain never drops below the threshold.
inline std::optional<std::size_t> chain_select_index(const QuasiMetricSpace& space,
                                                     const Chain& chain, std::size_t a,
                                                     std::size_t c, std::size_t d, double sigma) {
    if (c == a || c == d) throw DomainError("reference point must differ from the endpoints");
    if (!(sigma > 1.0)) throw DomainError("sigma must exceed 1");
    const double threshold = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t i = 0; i < chain.points.size(); ++i)
        if (cross_ratio(space, a, chain.points[i], c, d) < threshold) return i;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cross-ratio interval condition
// ---------------------------------------------------------------------------

/// Feasibility of mu1 <= r(a,x,c,d) <= mu2 over ordered distinct triples
/// (a,c,d). Triples whose attainable set {r(a,x,c,d)} never meets (0,1) are
/// resolution artifacts of the finite sample and are counted as vacuous
/// rather than infeasible.
struct Condition4Report {
    double mu1 = 0.0;
    double mu2 = 0.0;
    bool feasible = false;
    bool vacuous = false; // every checked triple was vacuous
    std::uint64_t triples_checked = 0;
    std::uint64_t triples_vacuous = 0;
    std::array<std::size_t, 3> worst_triple{0, 0, 0};
};

namespace detail {

inline std::vector<std::array<std::size_t, 3>> condition4_triples(std::size_t n,
                                                                  std::uint64_t budget,
                                                                  std::uint64_t seed) {
    std::vector<std::array<std::size_t, 3>> triples;
    if (n <= 64) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d)
                    if (a != c && a != d && c != d) triples.push_back({a, c, d});
    } else {
        SplitMix64 rng(seed);
        triples.reserve(budget);
        for (std::uint64_t s = 0; s < budget; ++s) {
            const auto t = distinct_tuple<3>(rng, n);
            triples.push_back({t[0], t[1], t[2]});
        }
    }
    return triples;
}

} // namespace detail

inline Condition4Report condition4_interval(const QuasiMetricSpace& space, double mu1, double mu2,
                                            std::uint64_t triple_budget, std::uint64_t seed) {
    if (space.size() < 4) throw DomainError("insufficient points: condition needs n >= 4");
    if (!(mu1 > 0.0) || !(mu1 <= mu2) || !(mu2 < 1.0))
        throw DomainError("interval must satisfy 0 < mu1 <= mu2 < 1");

    Condition4Report rep;
    rep.mu1 = mu1;
    rep.mu2 = mu2;
    rep.feasible = true;

    const std::size_t n = space.size();
    for (const auto& [a, c, d] : detail::condition4_triples(n, triple_budget, seed)) {
        ++rep.triples_checked;
        bool hit = false;
        bool attainable = false;
        for (std::size_t x = 0; x < n; ++x) {
            if (x == a || x == c || x == d) continue;
            const double r = cross_ratio(space, a, x, c, d);
            if (r > 0.0 && r < 1.0) attainable = true;
            if (r >= mu1 && r <= mu2) {
                hit = true;
                break;
            }
        }
        if (hit) continue;
        if (!attainable) {
            ++rep.triples_vacuous;
            continue;
        }
        rep.feasible = false;
        rep.worst_triple = {a, c, d};
        break;
    }
    rep.vacuous = rep.triples_vacuous == rep.triples_checked;
    return rep;
}

/// Best feasible interval. The largest feasible mu1 is the smallest over
/// non-vacuous triples of the largest attained value below 1; mu2 is then
/// tightened to the largest value those triples actually need.
inline Condition4Report condition4_search(const QuasiMetricSpace& space,
                                          std::uint64_t triple_budget, std::uint64_t seed) {
    if (space.size() < 4) throw DomainError("insufficient points: condition needs n >= 4");

    Condition4Report rep;
    const std::size_t n = space.size();
    const auto triples = detail::condition4_triples(n, triple_budget, seed);

    double mu1 = 1.0;
    for (const auto& [a, c, d] : triples) {
        ++rep.triples_checked;
        double best = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            if (x == a || x == c || x == d) continue;
            const double r = cross_ratio(space, a, x, c, d);
            if (r > 0.0 && r < 1.0) best = std::max(best, r);
        }
        if (best == 0.0) {
            ++rep.triples_vacuous;
            continue;
        }
        if (best < mu1) {
            mu1 = best;
            rep.worst_triple = {a, c, d};
        }
    }

    if (rep.triples_vacuous == rep.triples_checked) {
        rep.vacuous = true;
        rep.feasible = false;
        return rep;
    }

    double mu2 = mu1;
    for (const auto& [a, c, d] : triples) {
        double low = 1.0;
        bool any = false;
        for (std::size_t x = 0; x < n; ++x) {
            if (x == a || x == c || x == d) continue;
            const double r = cross_ratio(space, a, x, c, d);
            if (r >= mu1 && r < 1.0) {
                low = std::min(low, r);
                any = true;
            }
        }
        if (any) mu2 = std::max(mu2, low);
    }

    rep.mu1 = mu1;
    rep.mu2 = mu2;
    rep.feasible = true;
    return rep;
}

// ---------------------------------------------------------------------------
// Sigma-density estimate
// ---------------------------------------------------------------------------

struct SigmaReport {
    double sigma_hat = 1.0;
    bool infinite = false;
    std::uint64_t pairs_checked = 0;
    std::uint64_t chains_built = 0;
    Condition4Report interval;
};

/// Estimates the chain constant: searches the best interval condition, then
/// builds chains between endpoint pairs and reports the largest per-step
/// sigma actually observed. The infinity flag is raised when some pair
/// admits no chain before truncation at resolution.
inline SigmaReport sigma_estimate(const QuasiMetricSpace& space, std::uint64_t pair_budget,
                                  std::uint64_t seed) {
    SigmaReport rep;
    const std::size_t n = space.size();
    if (n < 4) {
        rep.infinite = true;
        return rep;
    }

    rep.interval = condition4_search(space, pair_budget, seed);
    if (!rep.interval.feasible) {
        rep.infinite = true;
        return rep;
    }
    const double mu1 = rep.interval.mu1;
    const double mu2 = rep.interval.mu2;

    std::vector<std::array<std::size_t, 2>> pairs;
    if (n <= 64) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t d = 0; d < n; ++d)
                if (a != d) pairs.push_back({a, d});
    } else {
        SplitMix64 rng(seed + 1);
        for (std::uint64_t s = 0; s < pair_budget; ++s) {
            const auto p = distinct_tuple<2>(rng, n);
            pairs.push_back({p[0], p[1]});
        }
    }

    for (const auto& [a, d] : pairs) {
        ++rep.pairs_checked;
        bool built = false;
        for (std::size_t c = 0; c < n && !built; ++c) {
            if (c == a || c == d) continue;
            const Chain chain = build_sigma_chain(space, a, d, c, mu1, mu2);
            if (!chain.points.empty()) {
                built = true;
                ++rep.chains_built;
                rep.sigma_hat = std::max(rep.sigma_hat, chain.sigma);
            }
        }
        if (!built) rep.infinite = true;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Consolidated equivalence report
// ---------------------------------------------------------------------------

/// The four estimators of the uniform-perfectness equivalence run at matched
/// resolution (pair floor = window minimum). Signals are null when an
/// estimator is vacuous at this resolution; consistency means all non-null
/// signals agree. Inconsistencies are reported, never thrown.
struct EquivalenceReport {
    PerfectnessReport up;
    HdReport hd;
    SigmaReport sigma;
    Condition4Report cond4;
    std::optional<bool> up_signal;
    std::optional<bool> hd_signal;
    std::optional<bool> sigma_signal;
    std::optional<bool> cond4_signal;
    bool consistent = true;
};

inline EquivalenceReport equivalence_report(const QuasiMetricSpace& space,
                                            const ScaleWindow& window, std::uint64_t budget,
                                            std::uint64_t seed) {
    EquivalenceReport rep;
    rep.up = up_constant(space, window);
    if (!rep.up.vacuous) rep.up_signal = rep.up.mu_hat > 0.0;

    rep.hd = hd_search(space, window.r_min);
    if (!rep.hd.vacuous) rep.hd_signal = rep.hd.feasible;

    if (space.size() >= 4) {
        rep.cond4 = condition4_search(space, budget, seed);
        if (!rep.cond4.vacuous) rep.cond4_signal = rep.cond4.feasible;
    } else {
        rep.cond4.vacuous = true;
    }

    rep.sigma = sigma_estimate(space, budget, seed);
    rep.sigma_signal = !rep.sigma.infinite;

    std::optional<bool> ref;
    for (const auto& s : {rep.up_signal, rep.hd_signal, rep.sigma_signal, rep.cond4_signal}) {
        if (!s) continue;
        if (!ref) ref = s;
        else if (*ref != *s) rep.consistent = false;
    }
    return rep;
}

} // namespace qmgeo
