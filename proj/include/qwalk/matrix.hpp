#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qwalk {

using cplx = std::complex<double>;

/// Small dense complex matrix, row-major. Used for gate algebra and the
/// brute-force unitary oracles; not meant for large dimensions.
struct CMat {
  int dim = 0;
  std::vector<cplx> a;

  CMat() = default;
  explicit CMat(int d) : dim(d), a(static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {}

  cplx& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
  const cplx& at(int r, int c) const { return a[static_cast<std::size_t>(r) * dim + c]; }

  static CMat identity(int d) {
    CMat m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

inline CMat operator*(const CMat& lhs, const CMat& rhs) {
  if (lhs.dim != rhs.dim) throw std::invalid_argument("matrix dimension mismatch");
  const int d = lhs.dim;
  CMat out(d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const cplx v = lhs.at(i, k);
      if (v == cplx{}) continue;
      for (int j = 0; j < d; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  }
  return out;
}

inline CMat dagger(const CMat& m) {
  CMat out(m.dim);
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) out.at(i, j) = std::conj(m.at(j, i));
  return out;
}

inline double max_abs_diff(const CMat& lhs, const CMat& rhs) {
  if (lhs.dim != rhs.dim) throw std::invalid_argument("matrix dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.a.size(); ++i) worst = std::max(worst, std::abs(lhs.a[i] - rhs.a[i]));
  return worst;
}

inline bool approx_equal(const CMat& lhs, const CMat& rhs, double tol) {
  return max_abs_diff(lhs, rhs) <= tol;
}

inline bool is_unitary(const CMat& m, double tol) {
  return approx_equal(m * dagger(m), CMat::identity(m.dim), tol);
}

}  // namespace qwalk
