#include "smafv/steklov.hpp"

#include <stdexcept>

namespace smafv {

double g1_quartic(LayerPair pair) {
  const double a = pair.next;
  const double b = pair.prev;
  return a * a * a + a * a * b + a * b * b + b * b * b;
}

double g2_sextic(LayerPair pair) {
  const double a = pair.next;
  const double b = pair.prev;
  const double a2 = a * a;
  const double b2 = b * b;
  return a2 * a2 * a + a2 * a2 * b + a2 * a * b2 + a2 * b2 * b + a * b2 * b2 + b2 * b2 * b;
}

double g1_quartic_dnext(LayerPair pair) {
  const double a = pair.next;
  const double b = pair.prev;
  return 3.0 * a * a + 2.0 * a * b + b * b;
}

double g2_sextic_dnext(LayerPair pair) {
  const double a = pair.next;
  const double b = pair.prev;
  const double a2 = a * a;
  const double b2 = b * b;
  return 5.0 * a2 * a2 + 4.0 * a2 * a * b + 3.0 * a2 * b2 + 2.0 * a * b2 * b + b2 * b2;
}

double steklov_mean(std::span<const double> coeffs, LayerPair pair) {
  if (coeffs.size() > kMaxSteklovDegree + 1) {
    throw std::invalid_argument("steklov_mean: polynomial degree exceeds 8");
  }
  if (pair.prev == pair.next) {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * pair.prev + coeffs[k];
    return acc;
  }
  // mean of e^k over [a, b] = (sum_{j=0}^{k} b^(k-j) a^j) / (k + 1)
  std::array<double, kMaxSteklovDegree + 1> pa{};
  std::array<double, kMaxSteklovDegree + 1> pb{};
  pa[0] = pb[0] = 1.0;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    pa[k] = pa[k - 1] * pair.prev;
    pb[k] = pb[k - 1] * pair.next;
  }
  double result = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j <= k; ++j) sum += pb[k - j] * pa[j];
    result += coeffs[k] * sum / static_cast<double>(k + 1);
  }
  return result;
}

}  // namespace smafv
