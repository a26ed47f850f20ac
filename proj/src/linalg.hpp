#ifndef EB_LINALG_HPP
#define EB_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace eb {

// Solve A x = b for a symmetric positive definite A (row-major n*n) by
// Cholesky factorization. Throws eb::Error(numeric) when a pivot is not
// strictly positive. Sizes here are tiny (degree+1 for the Lindsey fit).
inline std::vector<double> solve_spd(std::size_t n, std::vector<double> a,
                                     std::vector<double> b) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0) || !std::isfinite(d))
      throw_numeric("solve_spd: matrix not positive definite");
    double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / ljj;
    }
  }
  // forward substitution L y = b
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
    b[i] = s / a[i * n + i];
  }
  // back substitution L^T x = y
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= a[k * n + ii] * b[k];
    b[ii] = s / a[ii * n + ii];
  }
  return b;
}

}  // namespace eb

#endif
