#pragma once

// Steklov (interval-mean) averaging of polynomial nonlinearities between two
// time layers. All routines are division-free, so equal layers are handled
// without a 0/0.

#include <array>
#include <span>

namespace smafv {

struct LayerPair {
  double prev = 0.0;  ///< value at the previous time layer
  double next = 0.0;  ///< value at the new time layer
};

/// sum_{k=0}^{3} next^(3-k) prev^k; one quarter of it is the mean of e^3
/// over [prev, next].
double g1_quartic(LayerPair pair);

/// sum_{k=0}^{5} next^(5-k) prev^k; one sixth of it is the mean of e^5.
double g2_sextic(LayerPair pair);

/// Partial derivatives with respect to pair.next (Newton Jacobians).
double g1_quartic_dnext(LayerPair pair);
double g2_sextic_dnext(LayerPair pair);

inline constexpr std::size_t kMaxSteklovDegree = 8;

/// Mean value of f(e) = sum_k coeffs[k] e^k over [prev, next].
/// coeffs.size() must not exceed kMaxSteklovDegree + 1.
/// For prev == next the result is f(prev) evaluated by Horner's rule.
double steklov_mean(std::span<const double> coeffs, LayerPair pair);

}  // namespace smafv
