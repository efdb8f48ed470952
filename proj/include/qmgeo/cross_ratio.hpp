#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "qmgeo/errors.hpp"
#include "qmgeo/sampling.hpp"
#include "qmgeo/space.hpp"

namespace qmgeo {

/// r(a,b,c,d) = rho(a,c) rho(b,d) / (rho(a,b) rho(c,d)).
/// The quadruple degenerates (zero denominator) when a=b or c=d.
inline double cross_ratio(const QuasiMetricSpace& z, std::size_t a, std::size_t b, std::size_t c,
                          std::size_t d) {
    if (a == b || c == d) throw DomainError("degenerate quadruple: a=b or c=d");
    return (z.rho(a, c) * z.rho(b, d)) / (z.rho(a, b) * z.rho(c, d));
}

/// Bonk-Kleiner bracket <a,b,c,d> = min(rho(a,c), rho(b,d)) / min(rho(a,b), rho(c,d)).
inline double bk_bracket(const QuasiMetricSpace& z, std::size_t a, std::size_t b, std::size_t c,
                         std::size_t d) {
    if (a == b || c == d) throw DomainError("degenerate quadruple: a=b or c=d");
    return std::min(z.rho(a, c), z.rho(b, d)) / std::min(z.rho(a, b), z.rho(c, d));
}

/// The comparison gauge theta_K(t) = K^2 * max(t, sqrt(t)) relating cross
/// ratios to brackets. Strictly increasing with theta_K(0) = 0; the inverse
/// branches at u = K^2, the image of t = 1.
class ThetaGauge {
public:
    explicit ThetaGauge(double k) : k_(k) {
        if (!(k >= 1.0)) throw DomainError("gauge coefficient must be >= 1");
    }

    double k() const { return k_; }

    double operator()(double t) const {
        if (!(t >= 0.0)) throw DomainError("gauge argument must be >= 0");
        return k_ * k_ * std::max(t, std::sqrt(t));
    }

    double inverse(double u) const {
        if (!(u >= 0.0)) throw DomainError("gauge argument must be >= 0");
        const double k2 = k_ * k_;
        if (u >= k2) return u / k2;
        const double s = u / k2;
        return s * s;
    }

private:
    double k_;
};

/// Worst quadruple found while checking the bracket/cross-ratio comparison.
struct BkBoundsReport {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    double max_slack = 0.0; // largest lhs/rhs - 1 over all inequalities, >= 0
    std::array<std::size_t, 4> worst{0, 0, 0, 0};
    double worst_r = 0.0;
    double worst_bracket = 0.0;
    double k_used = 1.0;

    bool pass() const { return violations == 0; }
};

namespace detail {

inline void check_quadruple(const QuasiMetricSpace& z, const ThetaGauge& gauge, std::size_t a,
                            std::size_t b, std::size_t c, std::size_t d, BkBoundsReport& rep) {
    const double r = cross_ratio(z, a, b, c, d);
    const double br = bk_bracket(z, a, b, c, d);

    // Lemma-form inequality pairs: bracket between 1/theta(1/r) and theta(r),
    // and r between theta^{-1}(bracket) and 1/theta^{-1}(1/bracket).
    const double slack =
        std::max(std::max(1.0 / (gauge(1.0 / r) * br) - 1.0, br / gauge(r) - 1.0),
                 std::max(gauge.inverse(br) / r - 1.0, r * gauge.inverse(1.0 / br) - 1.0));

    ++rep.checked;
    if (slack > rep.max_slack) {
        rep.max_slack = slack;
        rep.worst = {a, b, c, d};
        rep.worst_r = r;
        rep.worst_bracket = br;
    }
    if (slack > 1e-9) ++rep.violations;
}

} // namespace detail

/// Checks both comparison inequality pairs on quadruples of distinct points.
/// Full O(n^4) enumeration for n <= 40, otherwise `budget` seeded samples.
/// `k_override` replaces the scanned coefficient (understating it surfaces
/// violations with positive slack).
inline BkBoundsReport verify_bk_bounds(const QuasiMetricSpace& z, std::uint64_t budget,
                                       std::uint64_t seed, double k_override = 0.0) {
    const std::size_t n = z.size();
    if (n < 4) throw DomainError("insufficient points: bound check needs n >= 4");

    const double k = k_override > 0.0 ? k_override : z.k_min();
    const ThetaGauge gauge(k);
    BkBoundsReport rep;
    rep.k_used = k;

    if (n <= 40) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d) {
                        if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                        detail::check_quadruple(z, gauge, a, b, c, d, rep);
                    }
    } else {
        SplitMix64 rng(seed);
        for (std::uint64_t s = 0; s < budget; ++s) {
            const auto q = distinct_tuple<4>(rng, n);
            detail::check_quadruple(z, gauge, q[0], q[1], q[2], q[3], rep);
        }
    }
    return rep;
}

} // namespace qmgeo
