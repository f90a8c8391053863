#ifndef SEMIFE_LINALG_HPP_
#define SEMIFE_LINALG_HPP_

#include <cstddef>
#include <vector>

#include "semife/cfunc.hpp"

namespace semife {

// Dense row-major complex matrix, sized for the small homogeneous systems
// that arise from functional equations on finite semigroups.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  double max_abs() const noexcept;

 private:
  std::size_t rows_, cols_;
  std::vector<Complex> data_;
};

// Basis of {v : A v = 0} from the reduced row echelon form computed by
// Gaussian elimination with partial pivoting. Each basis vector has a 1 in
// its free coordinate and 0 in the other free coordinates. Pivots smaller
// than rel_pivot_tol times the max-norm of A count as zero.
std::vector<CFunc> nullspace(ComplexMatrix a, double rel_pivot_tol = 1e-10);

// Least-squares coordinates of target in span(basis), with the max-norm of
// the reconstruction error.
struct Projection {
  std::vector<Complex> coeffs;
  CFunc fitted;
  double error = 0.0;
};
Projection project(const std::vector<CFunc>& basis, const CFunc& target);

}  // namespace semife

#endif  // SEMIFE_LINALG_HPP_
