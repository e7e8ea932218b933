#include "ffseq/linalg.hpp"

namespace ffseq {

std::vector<std::size_t> row_reduce(const GaloisField& K, Matrix& A, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < A.size(); ++col) {
    std::size_t piv = row;
    while (piv < A.size() && A[piv][col].code == 0) ++piv;
    if (piv == A.size()) continue;
    std::swap(A[piv], A[row]);
    const Elem s = K.inv(A[row][col]);
    for (std::size_t j = col; j < cols; ++j) A[row][j] = K.mul(A[row][j], s);
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][col].code == 0) continue;
      const Elem f = A[r][col];
      for (std::size_t j = col; j < cols; ++j) A[r][j] = K.sub(A[r][j], K.mul(f, A[row][j]));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const GaloisField& K, Matrix A, std::size_t cols) { return row_reduce(K, A, cols).size(); }

std::vector<std::vector<Elem>> kernel_basis(const GaloisField& K, Matrix A, std::size_t cols) {
  const auto pivots = row_reduce(K, A, cols);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<Elem>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(cols, K.zero());
    v[free] = K.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = K.neg(A[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

bool is_consistent(const GaloisField& K, Matrix A, const std::vector<Elem>& b, std::size_t cols) {
  for (std::size_t r = 0; r < A.size(); ++r) {
    A[r].resize(cols + 1);
    A[r][cols] = b[r];
  }
  const auto pivots = row_reduce(K, A, cols + 1);
  return pivots.empty() || pivots.back() != cols;
}

}  // namespace ffseq
