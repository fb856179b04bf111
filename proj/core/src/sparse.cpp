#include "smafv/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace smafv {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

CsrMatrix::CsrMatrix(const std::vector<std::vector<int>>& rows) {
  row_ptr_.reserve(rows.size() + 1);
  row_ptr_.push_back(0);
  for (const auto& r : rows) {
    std::vector<int> sorted = r;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int c : sorted) {
      if (c < 0 || c >= static_cast<int>(rows.size())) {
        throw std::out_of_range("CsrMatrix: column index outside the square matrix");
      }
    }
    cols_.insert(cols_.end(), sorted.begin(), sorted.end());
    row_ptr_.push_back(static_cast<int>(cols_.size()));
  }
  vals_.assign(cols_.size(), 0.0);
}

void CsrMatrix::set_zero() { std::fill(vals_.begin(), vals_.end(), 0.0); }

int CsrMatrix::find(int row, int col) const {
  for (int k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) {
    if (cols_[k] == col) return k;
  }
  return -1;
}

void CsrMatrix::add(int row, int col, double value) {
  const int k = find(row, col);
  if (k < 0) {
    throw std::out_of_range("CsrMatrix::add: (" + std::to_string(row) + "," + std::to_string(col) +
                            ") is outside the sparsity pattern");
  }
  vals_[k] += value;
}

double CsrMatrix::at(int row, int col) const {
  const int k = find(row, col);
  return k < 0 ? 0.0 : vals_[k];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += vals_[k] * x[cols_[k]];
    y[i] = s;
  }
}

KrylovResult bicgstab(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                      double tol, int max_iters) {
  const std::size_t n = a.size();
  KrylovResult res;
  std::vector<double> inv_diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a.at(static_cast<int>(i), static_cast<int>(i));
    if (d == 0.0 || !std::isfinite(d)) {
      res.reason = "zero or non-finite diagonal in row " + std::to_string(i);
      return res;
    }
    inv_diag[i] = 1.0 / d;
  }

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    res.converged = true;
    return res;
  }

  std::vector<double> r(n), r_hat(n), p(n, 0.0), v(n, 0.0), s(n), t(n), y(n), z(n);
  a.multiply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  r_hat = r;
  double rnorm = norm2(r);
  if (rnorm <= tol * bnorm) {
    res.converged = true;
    res.relative_residual = rnorm / bnorm;
    return res;
  }

  double rho = 1.0, alpha = 1.0, omega = 1.0;
  int restarts = 0;
  for (int it = 1; it <= max_iters; ++it) {
    double rho_new = dot(r_hat, r);
    if (!std::isfinite(rho_new)) {
      res.reason = "non-finite inner product";
      res.iterations = it;
      res.relative_residual = rnorm / bnorm;
      return res;
    }
    // Shadow residual (nearly) orthogonal to r: restart with r_hat = r.
    if (std::abs(rho_new) <= 1e-14 * norm2(r_hat) * rnorm) {
      if (++restarts > 20) {
        res.reason = "breakdown (rho = 0)";
        res.iterations = it;
        res.relative_residual = rnorm / bnorm;
        return res;
      }
      r_hat = r;
      std::fill(p.begin(), p.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      rho = alpha = omega = 1.0;
      rho_new = dot(r_hat, r);
    }
    const double beta = (rho_new / rho) * (alpha / omega);
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    for (std::size_t i = 0; i < n; ++i) y[i] = inv_diag[i] * p[i];
    a.multiply(y, v);
    const double denom = dot(r_hat, v);
    if (!std::isfinite(denom)) {
      res.reason = "non-finite inner product";
      res.iterations = it;
      res.relative_residual = rnorm / bnorm;
      return res;
    }
    if (std::abs(denom) <= 1e-14 * norm2(r_hat) * norm2(v)) {
      if (++restarts > 20) {
        res.reason = "breakdown (r_hat . v = 0)";
        res.iterations = it;
        res.relative_residual = rnorm / bnorm;
        return res;
      }
      r_hat = r;
      std::fill(p.begin(), p.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      rho = alpha = omega = 1.0;
      continue;
    }
    alpha = rho_new / denom;
    for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    const double snorm = norm2(s);
    if (snorm <= tol * bnorm) {
      for (std::size_t i = 0; i < n; ++i) x[i] += alpha * y[i];
      res.converged = true;
      res.iterations = it;
      res.relative_residual = snorm / bnorm;
      return res;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * s[i];
    a.multiply(z, t);
    const double tt = dot(t, t);
    if (tt == 0.0) {
      res.reason = "breakdown (t = 0)";
      res.iterations = it;
      res.relative_residual = snorm / bnorm;
      return res;
    }
    omega = dot(t, s) / tt;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * y[i] + omega * z[i];
      r[i] = s[i] - omega * t[i];
    }
    rnorm = norm2(r);
    rho = rho_new;
    res.iterations = it;
    res.relative_residual = rnorm / bnorm;
    if (!std::isfinite(rnorm)) {
      res.reason = "non-finite residual";
      return res;
    }
    if (rnorm <= tol * bnorm) {
      res.converged = true;
      return res;
    }
    if (omega == 0.0) {
      res.reason = "breakdown (omega = 0)";
      return res;
    }
  }
  res.reason = "iteration limit reached";
  return res;
}

std::vector<int> color_columns(const CsrMatrix& pattern) {
  const std::size_t n = pattern.size();
  auto row_ptr = pattern.row_ptr();
  auto cols = pattern.cols();
  // column -> rows
  std::vector<std::vector<int>> col_rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) col_rows[cols[k]].push_back(static_cast<int>(i));
  }
  std::vector<int> color(n, -1);
  std::vector<int> mark;
  for (std::size_t j = 0; j < n; ++j) {
    for (int row : col_rows[j]) {
      for (int k = row_ptr[row]; k < row_ptr[row + 1]; ++k) {
        const int c = color[cols[k]];
        if (c >= 0) {
          if (c >= static_cast<int>(mark.size())) mark.resize(c + 1, -1);
          mark[c] = static_cast<int>(j);
        }
      }
    }
    int c = 0;
    while (c < static_cast<int>(mark.size()) && mark[c] == static_cast<int>(j)) ++c;
    color[j] = c;
  }
  return color;
}

void fd_jacobian(const VectorFunction& f, std::span<const double> u, std::span<const double> scale,
                 const std::vector<int>& colors, CsrMatrix& jac) {
  const std::size_t n = u.size();
  const int ncolors = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  std::vector<double> base(n), pert(n), up(u.begin(), u.end()), step(n);
  f(u, base);
  jac.set_zero();
  auto row_ptr = jac.row_ptr();
  auto cols = jac.cols();
  auto vals = jac.values();
  for (std::size_t j = 0; j < n; ++j) {
    const double typ = scale.empty() ? 1.0 : scale[j];
    double h = root_eps * std::max(std::abs(u[j]), typ);
    // make the step exactly representable
    const double tmp = u[j] + h;
    step[j] = tmp - u[j];
  }
  for (int c = 0; c < ncolors; ++c) {
    for (std::size_t j = 0; j < n; ++j) up[j] = colors[j] == c ? u[j] + step[j] : u[j];
    f(up, pert);
    for (std::size_t i = 0; i < n; ++i) {
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
        const int col = cols[k];
        if (colors[col] == c) vals[k] = (pert[i] - base[i]) / step[col];
      }
    }
  }
}

}  // namespace smafv
