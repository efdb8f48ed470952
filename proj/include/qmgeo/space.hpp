#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmgeo/errors.hpp"
#include "qmgeo/matrix.hpp"

namespace qmgeo {

/// Per-axiom validation result for a candidate quasi-metric matrix.
///
/// Axioms, in report order:
///   (a) zero diagonal and strictly positive off-diagonal entries,
///   (b) symmetry,
///   (c) existence of a finite coefficient K with
///       rho(x,z) <= K * max(rho(x,y), rho(y,z)).
/// For a symmetric positive matrix (c) always holds, so `k_finite` can only
/// fail together with (a).
struct ValidationReport {
    bool zero_diagonal = true;
    std::size_t bad_diagonal_index = 0;

    bool symmetric = true;
    std::pair<std::size_t, std::size_t> asymmetric_pair{0, 0};

    bool positive_off_diagonal = true;
    std::pair<std::size_t, std::size_t> nonpositive_pair{0, 0};

    bool k_finite = true;

    bool pass() const { return zero_diagonal && symmetric && positive_off_diagonal && k_finite; }
};

/// Checks the quasi-metric axioms on a raw matrix without mutating it.
/// Structural defects (non-square shape, negative entries) throw
/// MalformedInput; axiom violations are reported, not thrown.
inline ValidationReport validate_space(const SquareMatrix& rho) {
    const std::size_t n = rho.size();
    if (n == 0) throw MalformedInput("empty matrix");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rho(i, j) < 0.0 || !std::isfinite(rho(i, j)))
                throw MalformedInput("matrix entries must be finite and nonnegative");

    ValidationReport rep;
    for (std::size_t i = 0; i < n && rep.zero_diagonal; ++i) {
        if (rho(i, i) != 0.0) {
            rep.zero_diagonal = false;
            rep.bad_diagonal_index = i;
        }
    }
    for (std::size_t i = 0; i < n && rep.symmetric; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rho(i, j) != rho(j, i)) {
                rep.symmetric = false;
                rep.asymmetric_pair = {i, j};
                break;
            }
        }
    }
    for (std::size_t i = 0; i < n && rep.positive_off_diagonal; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && !(rho(i, j) > 0.0)) {
                rep.positive_off_diagonal = false;
                rep.nonpositive_pair = {i, j};
                break;
            }
        }
    }
    // A finite K fails only when two zero legs share a middle point while the
    // outer distance is positive. Possible only with off-diagonal zeros.
    if (!rep.positive_off_diagonal) {
        for (std::size_t j = 0; j < n && rep.k_finite; ++j) {
            for (std::size_t i = 0; i < n && rep.k_finite; ++i) {
                if (i == j || rho(i, j) != 0.0) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    if (rho(j, k) == 0.0 && rho(i, k) > 0.0) {
                        rep.k_finite = false;
                        break;
                    }
                }
            }
        }
    }
    return rep;
}

inline ValidationReport validate_space(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw MalformedInput("empty matrix");
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw MalformedInput("matrix is not square");
    return validate_space(SquareMatrix::from_rows(rows));
}

/// A finite labeled point set with a symmetric positive distance matrix.
/// The minimal quasi-metric coefficient is scanned on demand and cached;
/// the instance is otherwise immutable.
class QuasiMetricSpace {
public:
    QuasiMetricSpace(std::vector<std::string> labels, SquareMatrix rho, std::string name = "")
        : name_(std::move(name)), labels_(std::move(labels)), rho_(std::move(rho)) {
        if (labels_.size() != rho_.size())
            throw MalformedInput("label count does not match matrix size");
        const ValidationReport rep = validate_space(rho_);
        if (!rep.pass()) throw DomainError("matrix violates the quasi-metric axioms");
    }

    QuasiMetricSpace(const QuasiMetricSpace& other)
        : name_(other.name_), labels_(other.labels_), rho_(other.rho_) {
        k_cache_.store(other.k_cache_.load(std::memory_order_acquire), std::memory_order_release);
    }

    QuasiMetricSpace& operator=(const QuasiMetricSpace& other) {
        if (this != &other) {
            name_ = other.name_;
            labels_ = other.labels_;
            rho_ = other.rho_;
            k_cache_.store(other.k_cache_.load(std::memory_order_acquire),
                           std::memory_order_release);
        }
        return *this;
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& name() const { return name_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    double rho(std::size_t i, std::size_t j) const { return rho_(i, j); }
    const SquareMatrix& matrix() const { return rho_; }

    std::optional<std::size_t> index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        return std::nullopt;
    }

    /// Smallest K with rho(i,k) <= K * max(rho(i,j), rho(j,k)) over all
    /// triples, clamped below at 1 (the triple set is vacuous for n <= 2).
    /// Exact O(n^3) scan, cached after the first call.
    double k_min() const {
        double k = k_cache_.load(std::memory_order_acquire);
        if (std::isnan(k)) {
            k = scan_k_min();
            k_cache_.store(k, std::memory_order_release);
        }
        return k;
    }

    double diameter() const {
        double d = 0.0;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j) d = std::max(d, rho_(i, j));
        return d;
    }

    double min_positive_distance() const {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j) d = std::min(d, rho_(i, j));
        return d;
    }

    /// Largest distance from point i to any other point.
    double eccentricity(std::size_t i) const {
        double d = 0.0;
        for (std::size_t j = 0; j < size(); ++j) d = std::max(d, rho_(i, j));
        return d;
    }

    /// Smallest positive distance from point i to any other point.
    double nearest_distance(std::size_t i) const {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < size(); ++j)
            if (j != i) d = std::min(d, rho_(i, j));
        return d;
    }

private:
    double scan_k_min() const {
        const std::size_t n = size();
        double k = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t kk = 0; kk < n; ++kk) {
                if (kk == i) continue;
                const double num = rho_(i, kk);
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i || j == kk) continue;
                    const double den = std::max(rho_(i, j), rho_(j, kk));
                    k = std::max(k, num / den);
                }
            }
        }
        return k;
    }

    std::string name_;
    std::vector<std::string> labels_;
    SquareMatrix rho_;
    mutable std::atomic<double> k_cache_{std::numeric_limits<double>::quiet_NaN()};
};

/// Minimal quasi-metric coefficient of a space with at least two points.
inline double min_quasimetric_coefficient(const QuasiMetricSpace& space) {
    if (space.size() < 2) throw DomainError("insufficient points: coefficient needs n >= 2");
    return space.k_min();
}

/// Radius interval on which scale-dependent estimators are evaluated.
/// Finite samples satisfy the scale-dependent definitions only inside such
/// a window; resolution and diameter scales are excluded by choosing it.
struct ScaleWindow {
    double r_min;
    double r_max;

    ScaleWindow(double rmin, double rmax) : r_min(rmin), r_max(rmax) {
        if (!(rmin > 0.0) || !(rmin <= rmax))
            throw DomainError("scale window requires 0 < r_min <= r_max");
    }

    bool contains(double r) const { return r_min <= r && r <= r_max; }
};

/// Raises every distance to the power p >= 1. The quasi-metric coefficient
/// exponentiates along with the maximizing triple.
inline QuasiMetricSpace snowflake_transform(const QuasiMetricSpace& space, double p) {
    if (!(p >= 1.0)) throw DomainError("snowflake exponent must be >= 1");
    const std::size_t n = space.size();
    SquareMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = i == j ? 0.0 : std::pow(space.rho(i, j), p);
    return QuasiMetricSpace(space.labels(), std::move(out), space.name() + "^" + std::to_string(p));
}

/// Multiplies every distance by s > 0. Used by scale-invariance checks.
inline QuasiMetricSpace rescale(const QuasiMetricSpace& space, double s) {
    if (!(s > 0.0)) throw DomainError("scale factor must be positive");
    const std::size_t n = space.size();
    SquareMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = i == j ? 0.0 : s * space.rho(i, j);
    return QuasiMetricSpace(space.labels(), std::move(out), space.name());
}

} // namespace qmgeo
