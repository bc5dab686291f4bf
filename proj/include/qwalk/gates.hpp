#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/matrix.hpp"

namespace qwalk {

enum class GateKind { X, H, RY, RZ, Phase, U3, Toffoli };

inline const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::Phase: return "phase";
    case GateKind::U3: return "u3";
    case GateKind::Toffoli: return "toffoli";
  }
  return "?";
}

inline int param_arity(GateKind k) {
  switch (k) {
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::Phase: return 1;
    case GateKind::U3: return 3;
    default: return 0;
  }
}

inline void check_arity(GateKind k, std::size_t got) {
  if (got != static_cast<std::size_t>(param_arity(k)))
    throw std::invalid_argument(std::string(kind_name(k)) + ": expected " +
                                std::to_string(param_arity(k)) + " parameter(s), got " +
                                std::to_string(got));
}

/// 2x2 unitary in flat form, the hot-path representation for gate kernels.
struct Mat2 {
  cplx m00, m01, m10, m11;
};

/// Matrix of a single-qubit kind. Sign conventions are load-bearing:
/// RZ(phi) = diag(e^{+i phi/2}, e^{-i phi/2}) -- note the +/- order, which is
/// the opposite of the more common convention and is what the ABC identity in
/// decompose.hpp relies on. Phase(delta) = e^{i delta} * I.
inline Mat2 unitary2x2(GateKind k, std::span<const double> params) {
  check_arity(k, params.size());
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  switch (k) {
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::H:
      return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
    case GateKind::RY: {
      const double c = std::cos(params[0] / 2.0), s = std::sin(params[0] / 2.0);
      return {c, -s, s, c};
    }
    case GateKind::RZ: {
      const cplx e = std::polar(1.0, params[0] / 2.0);
      return {e, 0.0, 0.0, std::conj(e)};
    }
    case GateKind::Phase: {
      const cplx e = std::polar(1.0, params[0]);
      return {e, 0.0, 0.0, e};
    }
    case GateKind::U3: {
      const double c = std::cos(params[0] / 2.0), s = std::sin(params[0] / 2.0);
      const double phi = params[1], lam = params[2];
      return {c, -std::polar(1.0, lam) * s, std::polar(1.0, phi) * s,
              std::polar(1.0, lam + phi) * c};
    }
    case GateKind::Toffoli:
      throw std::invalid_argument("toffoli has no 2x2 matrix");
  }
  throw std::invalid_argument("unknown gate kind");
}

/// A named gate together with its bound parameters and explicit matrix
/// (2x2, or the 8x8 permutation for Toffoli).
struct GateMatrix {
  GateKind kind = GateKind::X;
  std::vector<double> params;
  CMat matrix;
};

inline GateMatrix matrix_of(GateKind k, std::vector<double> params = {}) {
  GateMatrix g;
  g.kind = k;
  if (k == GateKind::Toffoli) {
    check_arity(k, params.size());
    // explicit 8x8 permutation: |110> <-> |111> with q2,q1 controls, q0 target
    g.matrix = CMat::identity(8);
    g.matrix.at(6, 6) = 0.0;
    g.matrix.at(7, 7) = 0.0;
    g.matrix.at(6, 7) = 1.0;
    g.matrix.at(7, 6) = 1.0;
  } else {
    const Mat2 m = unitary2x2(k, params);
    g.matrix = CMat(2);
    g.matrix.at(0, 0) = m.m00;
    g.matrix.at(0, 1) = m.m01;
    g.matrix.at(1, 0) = m.m10;
    g.matrix.at(1, 1) = m.m11;
  }
  g.params = std::move(params);
  return g;
}

/// The walk's coin operator.
inline GateMatrix hadamard_coin() { return matrix_of(GateKind::H); }

}  // namespace qwalk
