#pragma once

#include <cmath>

#include "qmgeo/cross_ratio.hpp"
#include "qmgeo/errors.hpp"

namespace qmgeo {

enum class ControlKind { symmetric, mobius };

/// Power-form control function t -> M * max(t^(1/alpha), t^alpha) with
/// M >= 1 and alpha >= 1. Increasing, fixes value M at t = 1. `symmetric`
/// controls bound distance-ratio distortion, `mobius` controls cross-ratio
/// distortion.
struct PowerControl {
    ControlKind kind = ControlKind::symmetric;
    double m = 1.0;
    double alpha = 1.0;

    PowerControl(ControlKind k, double m_, double alpha_) : kind(k), m(m_), alpha(alpha_) {
        if (!(m >= 1.0) || !(alpha >= 1.0))
            throw DomainError("power control requires M >= 1 and alpha >= 1");
    }

    double operator()(double t) const {
        if (!(t >= 0.0)) throw DomainError("control argument must be >= 0");
        return m * std::max(std::pow(t, 1.0 / alpha), std::pow(t, alpha));
    }
};

/// Exact symmetric-to-mobius conversion evaluated through the gauge:
/// t -> 1 / theta_K^{-1}( 1 / eta(theta_K(t)) ).
inline double qs_to_qm_evaluate(const PowerControl& eta, double k, double t) {
    const ThetaGauge gauge(k);
    return 1.0 / gauge.inverse(1.0 / eta(gauge(t)));
}

/// Power-form bound dominating the exact conversion: for eta = M(t^(1/a) v t^a)
/// the image map admits the mobius control M^2 K^(4(1+a)) (t^(2a) v t^(1/(2a))).
inline PowerControl qs_to_qm_control(const PowerControl& eta, double k) {
    if (!(k > 1.0)) throw DomainError("conversion requires gauge coefficient K > 1");
    const double m2 = eta.m * eta.m * std::pow(k, 4.0 * (1.0 + eta.alpha));
    return PowerControl(ControlKind::mobius, m2, 2.0 * eta.alpha);
}

/// Mobius-to-symmetric upgrade under the lambda-three-point condition:
/// eta(t) = K^(3+6b) M (2 lambda)^(1+2b) (t^(1/(2b)) v t^(2b)).
inline PowerControl qm_to_qs_control(const PowerControl& theta, double k, double lambda) {
    if (!(k > 1.0)) throw DomainError("conversion requires gauge coefficient K > 1");
    if (!(lambda >= 1.0)) throw DomainError("three-point constant lambda must be >= 1");
    const double b = theta.alpha;
    const double m = std::pow(k, 3.0 + 6.0 * b) * theta.m * std::pow(2.0 * lambda, 1.0 + 2.0 * b);
    return PowerControl(ControlKind::symmetric, m, 2.0 * b);
}

/// Safe power dominator of theta_second(theta_first(t)):
/// (M2 * M1^b2, b1*b2). Dominates the exact composition pointwise.
inline PowerControl compose_qm_qm(const PowerControl& first, const PowerControl& second) {
    const double m = second.m * std::pow(std::max(first.m, 1.0), second.alpha);
    return PowerControl(ControlKind::mobius, m, first.alpha * second.alpha);
}

/// Exact control of a symmetric map following a mobius map:
/// t -> 1 / theta_K^{-1}( 1 / eta(theta_K(theta(t))) ).
inline double compose_qs_after_qm_evaluate(const PowerControl& theta_first,
                                           const PowerControl& eta_second, double k, double t) {
    const ThetaGauge gauge(k);
    return 1.0 / gauge.inverse(1.0 / eta_second(gauge(theta_first(t))));
}

/// Safe power dominator for the symmetric-after-mobius composition: convert
/// the symmetric control to a mobius one, then compose power forms.
inline PowerControl compose_qs_after_qm(const PowerControl& theta_first,
                                        const PowerControl& eta_second, double k) {
    return compose_qm_qm(theta_first, qs_to_qm_control(eta_second, k));
}

} // namespace qmgeo
