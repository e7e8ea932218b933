#pragma once

// Dense Gaussian elimination over a GaloisField.

#include <cstddef>
#include <vector>

#include "ffseq/galois.hpp"

namespace ffseq {

using Matrix = std::vector<std::vector<Elem>>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(const GaloisField& K, Matrix& A, std::size_t cols);

std::size_t rank(const GaloisField& K, Matrix A, std::size_t cols);

/// Basis of {c : A c = 0}; one vector per free column, in column order.
std::vector<std::vector<Elem>> kernel_basis(const GaloisField& K, Matrix A, std::size_t cols);

/// True when A c = b has a solution.
bool is_consistent(const GaloisField& K, Matrix A, const std::vector<Elem>& b, std::size_t cols);

}  // namespace ffseq
