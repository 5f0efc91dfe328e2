#ifndef POLYNORM_LINALG_HPP
#define POLYNORM_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "polynorm/rational.hpp"

namespace polynorm {

/// Reduced row echelon form together with its pivot columns (ascending).
struct RowEchelon {
    Matrix reduced;                    // zero rows dropped
    std::vector<std::size_t> pivots;   // pivots[i] is the pivot column of reduced row i
};

RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
std::size_t rank(const std::vector<Vec>& vectors, std::size_t dim);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vec> nullspace(const Matrix& m);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// Indices of a maximal linearly independent prefix-greedy subset of the vectors.
std::vector<std::size_t> independent_subset(const std::vector<Vec>& vectors, std::size_t dim);

}  // namespace polynorm

#endif
