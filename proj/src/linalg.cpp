#include "semife/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace semife {

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const Complex& v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<CFunc> nullspace(ComplexMatrix a, double rel_pivot_tol) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const double tol = rel_pivot_tol * std::max(a.max_abs(), 1e-300);

  std::vector<std::size_t> pivot_col;  // pivot_col[r] for each pivot row r
  std::vector<bool> is_pivot(cols, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::abs(a(i, c)) > std::abs(a(best, c))) best = i;
    if (std::abs(a(best, c)) <= tol) {
      for (std::size_t i = r; i < rows; ++i) a(i, c) = 0.0;
      continue;
    }
    if (best != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(r, k), a(best, k));
    const Complex p = a(r, c);
    for (std::size_t k = c; k < cols; ++k) a(r, k) /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Complex m = a(i, c);
      if (m == Complex{}) continue;
      for (std::size_t k = c; k < cols; ++k) a(i, k) -= m * a(r, k);
      a(i, c) = 0.0;
    }
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++r;
  }

  std::vector<CFunc> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    CFunc v(cols);
    v[free] = 1.0;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Projection project(const std::vector<CFunc>& basis, const CFunc& target) {
  Projection out;
  out.fitted = CFunc(target.size());
  if (basis.empty()) {
    out.error = target.max_abs();
    return out;
  }
  const auto n = static_cast<Eigen::Index>(target.size());
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd b(n, k);
  Eigen::VectorXcd t(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t(i) = target[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < k; ++j) b(i, j) = basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXcd c = b.colPivHouseholderQr().solve(t);
  const Eigen::VectorXcd fit = b * c;
  out.coeffs.assign(c.data(), c.data() + k);
  for (Eigen::Index i = 0; i < n; ++i) out.fitted[static_cast<std::size_t>(i)] = fit(i);
  out.error = max_abs_diff(out.fitted, target);
  return out;
}

}  // namespace semife
