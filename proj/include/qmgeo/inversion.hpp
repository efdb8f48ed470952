#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qmgeo/errors.hpp"
#include "qmgeo/space.hpp"

namespace qmgeo {

/// Center and radius of the inversion rho_p(x,y) = r^2 rho(x,y) / (rho(x,p) rho(y,p)).
struct InversionParams {
    std::size_t center = 0;
    double radius = 1.0;
};

/// Keeps inverted distances near unit scale so downstream quadruple scans
/// stay clear of float underflow.
inline double default_inversion_radius(const QuasiMetricSpace& space) {
    return space.diameter();
}

/// The inversion quasi-metric on Z minus the center. Cross ratios of
/// quadruples avoiding the center are preserved exactly (all center factors
/// cancel) and the coefficient at worst squares.
inline QuasiMetricSpace invert_space(const QuasiMetricSpace& space, const InversionParams& params) {
    const std::size_t n = space.size();
    if (n < 3) throw DomainError("insufficient points: inversion needs n >= 3");
    if (params.center >= n) throw DomainError("inversion center index out of range");
    if (!(params.radius > 0.0)) throw DomainError("inversion radius must be positive");

    const std::size_t p = params.center;
    const double r2 = params.radius * params.radius;

    std::vector<std::size_t> keep;
    keep.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        if (i != p) keep.push_back(i);

    SquareMatrix out(n - 1);
    std::vector<std::string> labels(n - 1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        labels[i] = space.label(keep[i]);
        for (std::size_t j = i + 1; j < keep.size(); ++j) {
            const double v = r2 * space.rho(keep[i], keep[j]) /
                             (space.rho(keep[i], p) * space.rho(keep[j], p));
            out(i, j) = out(j, i) = v;
        }
    }
    return QuasiMetricSpace(std::move(labels), std::move(out),
                            space.name() + "_inv@" + space.label(p));
}

/// Euclidean inversion u(x) = x / |x|^2 applied to a coordinate list.
/// With exclude_origin set, points at the origin are dropped; otherwise a
/// point at the origin is a domain error.
inline std::vector<std::vector<double>> invert_euclidean_cloud(
    const std::vector<std::vector<double>>& points, bool exclude_origin = false) {
    std::vector<std::vector<double>> out;
    out.reserve(points.size());
    for (const auto& x : points) {
        double norm2 = 0.0;
        for (double c : x) norm2 += c * c;
        if (norm2 == 0.0) {
            if (exclude_origin) continue;
            throw DomainError("point at the origin has no Euclidean inversion image");
        }
        std::vector<double> y(x.size());
        for (std::size_t d = 0; d < x.size(); ++d) y[d] = x[d] / norm2;
        out.push_back(std::move(y));
    }
    return out;
}

} // namespace qmgeo
