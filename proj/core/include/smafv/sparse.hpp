#pragma once

// Compressed-row matrices with a fixed sparsity pattern, a Jacobi
// preconditioned BiCGSTAB solver and finite-difference Jacobians with
// column coloring.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace smafv {

/// Square CSR matrix. The pattern is fixed at construction; values are
/// refilled in place between Newton iterations.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// `rows[i]` lists the column indices of row i (any order, duplicates ignored).
  explicit CsrMatrix(const std::vector<std::vector<int>>& rows);

  std::size_t size() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nonzeros() const { return cols_.size(); }

  void set_zero();
  /// Adds `value` at (row, col); throws std::out_of_range outside the pattern.
  void add(int row, int col, double value);
  double at(int row, int col) const;

  void multiply(std::span<const double> x, std::span<double> y) const;

  std::span<const int> row_ptr() const { return row_ptr_; }
  std::span<const int> cols() const { return cols_; }
  std::span<double> values() { return vals_; }
  std::span<const double> values() const { return vals_; }

 private:
  int find(int row, int col) const;

  std::vector<int> row_ptr_;
  std::vector<int> cols_;
  std::vector<double> vals_;
};

struct KrylovResult {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;
  std::string reason;
};

/// Solves A x = b with right-Jacobi-preconditioned BiCGSTAB. `x` holds the
/// initial guess on entry. Converged when ||b - A x||_2 <= tol ||b||_2.
KrylovResult bicgstab(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                      double tol, int max_iters);

/// Greedy distance-2 coloring: columns sharing a row get different colors.
std::vector<int> color_columns(const CsrMatrix& pattern);

using VectorFunction = std::function<void(std::span<const double>, std::span<double>)>;

/// Forward-difference Jacobian of `f` at `u` into `jac` (pattern preserved).
/// `scale[j]` is the typical magnitude of u[j]; perturbations are
/// sqrt(eps) * max(|u[j]|, scale[j]).
void fd_jacobian(const VectorFunction& f, std::span<const double> u, std::span<const double> scale,
                 const std::vector<int>& colors, CsrMatrix& jac);

}  // namespace smafv
