#pragma once

#include <cmath>

#include "tcm/errors.hpp"

namespace tcm {

/// Model parameters (delta1, delta2, omega, g). The degenerate case
/// delta1 == delta2 is excluded: the integrals divide by delta2 - delta1.
template <class Scalar>
struct SystemParamsT {
  Scalar delta1{};
  Scalar delta2{};
  Scalar omega{};
  Scalar g{};

  /// Default parameter set (1/2, 3/2, 1, 1); satisfies the resonance
  /// condition delta1 + delta2 = 2*omega.
  static SystemParamsT stc() {
    return {Scalar(0.5), Scalar(1.5), Scalar(1), Scalar(1)};
  }

  bool resonant(Scalar tol = Scalar(1e-12)) const {
    using std::abs;
    return abs(delta1 + delta2 - 2 * omega) <= tol;
  }

  void validate() const {
    if (delta1 == delta2)
      throw DomainError("SystemParams: delta1 == delta2 is not supported");
  }
};

using SystemParams = SystemParamsT<double>;

}  // namespace tcm
