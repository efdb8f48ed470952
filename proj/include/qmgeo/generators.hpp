#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qmgeo/errors.hpp"
#include "qmgeo/space.hpp"

namespace qmgeo {

enum class GeometricMode { linear, squared };

namespace detail {

inline std::string coord_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline QuasiMetricSpace line_space(const std::vector<double>& coords, std::string name) {
    const std::size_t n = coords.size();
    SquareMatrix rho(n);
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = coord_label(coords[i]);
        for (std::size_t j = 0; j < n; ++j) rho(i, j) = std::fabs(coords[i] - coords[j]);
    }
    return QuasiMetricSpace(std::move(labels), std::move(rho), std::move(name));
}

} // namespace detail

/// Endpoints of the depth-m Cantor construction on [0,1] with middle-gap
/// ratio 1-2c: each interval [a,b] is replaced by [a, a+c(b-a)] and
/// [b-c(b-a), b]. Depth m yields 2^(m+1) points under Euclidean distance.
inline QuasiMetricSpace make_cantor(double ratio, int depth) {
    if (!(ratio > 0.0) || !(ratio < 0.5))
        throw DomainError("cantor ratio must lie in (0, 1/2)");
    if (depth < 0 || depth > 8)
        throw DomainError("cantor depth must lie in [0, 8] (desk-scale point budget)");

    std::vector<std::pair<double, double>> intervals{{0.0, 1.0}};
    for (int step = 0; step < depth; ++step) {
        std::vector<std::pair<double, double>> next;
        next.reserve(intervals.size() * 2);
        for (const auto& [a, b] : intervals) {
            const double len = b - a;
            next.emplace_back(a, a + ratio * len);
            next.emplace_back(b - ratio * len, b);
        }
        intervals = std::move(next);
    }
    std::vector<double> coords;
    coords.reserve(intervals.size() * 2);
    for (const auto& [a, b] : intervals) {
        coords.push_back(a);
        coords.push_back(b);
    }
    char name[64];
    std::snprintf(name, sizeof(name), "cantor(%.12g,%d)", ratio, depth);
    return detail::line_space(coords, name);
}

/// {0} together with q^k (linear) or q^(k^2) (squared) for k = 1..count,
/// on the line with Euclidean distance.
inline QuasiMetricSpace make_geometric(double q, GeometricMode mode, int count) {
    if (!(q > 0.0) || !(q < 1.0)) throw DomainError("geometric base must lie in (0, 1)");
    if (count < 1 || count > 511) throw DomainError("geometric count must lie in [1, 511]");
    std::vector<double> coords{0.0};
    for (int k = 1; k <= count; ++k) {
        const double e = mode == GeometricMode::linear ? static_cast<double>(k)
                                                       : static_cast<double>(k) * k;
        coords.push_back(std::pow(q, e));
    }
    char name[64];
    std::snprintf(name, sizeof(name), "geometric(%.12g,%s,%d)", q,
                  mode == GeometricMode::linear ? "linear" : "squared", count);
    return detail::line_space(coords, name);
}

/// Pairwise Euclidean distances of a coordinate list. Duplicate points are
/// rejected by space validation.
inline QuasiMetricSpace make_euclidean_cloud(const std::vector<std::vector<double>>& coords,
                                             std::string name = "euclidean_cloud") {
    const std::size_t n = coords.size();
    if (n == 0) throw DomainError("euclidean cloud needs at least one point");
    const std::size_t dim = coords[0].size();
    for (const auto& c : coords)
        if (c.size() != dim) throw MalformedInput("inconsistent coordinate dimensions");

    SquareMatrix rho(n);
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = "p" + std::to_string(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = coords[i][d] - coords[j][d];
                s += diff * diff;
            }
            rho(i, j) = rho(j, i) = std::sqrt(s);
        }
    }
    return QuasiMetricSpace(std::move(labels), std::move(rho), std::move(name));
}

/// Evenly spaced points 0, 1/(n-1), ..., 1 on the line.
inline QuasiMetricSpace make_arithmetic_grid(int n) {
    if (n < 2) throw DomainError("grid needs at least two points");
    std::vector<double> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = static_cast<double>(i) / (n - 1);
    return detail::line_space(coords, "grid(" + std::to_string(n) + ")");
}

} // namespace qmgeo
