#pragma once

#include <cstddef>
#include <vector>

#include "qmgeo/errors.hpp"

namespace qmgeo {

/// Dense square matrix of doubles with flat row-major storage.
/// Sized for desk-scale spaces (n <= 512), so O(n^2) memory buys O(1)
/// access inside the hot O(n^3)/O(n^4) scan loops.
class SquareMatrix {
public:
    SquareMatrix() = default;

    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

    static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        const std::size_t n = rows.size();
        SquareMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw MalformedInput("matrix is not square");
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t size() const { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    std::vector<std::vector<double>> to_rows() const {
        std::vector<std::vector<double>> rows(n_, std::vector<double>(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) rows[i][j] = a_[i * n_ + j];
        return rows;
    }

    bool operator==(const SquareMatrix& other) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

} // namespace qmgeo
