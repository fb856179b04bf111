#include "smafv/material.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace smafv {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw std::invalid_argument(std::string("material parameter must be positive: ") + name);
  }
}

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("material parameter must be nonnegative: ") + name);
  }
}

void require_temperature(double theta) {
  if (!(theta > 0.0)) {
    throw std::domain_error("temperature must be positive, got " + std::to_string(theta));
  }
}

constexpr double kSqrtHalf = 0.70710678118654752440;

}  // namespace

void MaterialParams1D::validate() const {
  require_nonnegative(k1, "k1");
  require_nonnegative(k2, "k2");
  require_nonnegative(k3, "k3");
  require_positive(theta1, "theta1");
  require_positive(rho, "rho");
  require_positive(cv, "cv");
  require_nonnegative(kappa, "kappa");
}

void MaterialParams2D::validate() const {
  require_positive(a1, "a1");
  require_nonnegative(a2, "a2");
  require_positive(a3, "a3");
  require_nonnegative(a4, "a4");
  require_nonnegative(a6, "a6");
  require_positive(theta0, "theta0");
  require_positive(rho, "rho");
  require_positive(cv, "cv");
  require_nonnegative(kappa, "kappa");
}

MaterialParams2D patch_params_from_rod(const MaterialParams1D& rod) {
  MaterialParams2D p;
  p.a1 = rod.k1;
  p.a2 = rod.k1;
  p.a3 = 2.0 * rod.k1;
  p.a4 = rod.k2;
  p.a6 = rod.k3;
  p.theta0 = rod.theta1;
  p.rho = rod.rho;
  p.cv = rod.cv;
  p.kappa = rod.kappa;
  return p;
}

double free_energy_1d(const MaterialParams1D& p, double eps, double theta) {
  require_temperature(theta);
  const double e2 = eps * eps;
  return -p.cv * theta * std::log(theta) + 0.5 * p.k1 * (theta - p.theta1) * e2 -
         0.25 * p.k2 * e2 * e2 + p.k3 * e2 * e2 * e2 / 6.0;
}

double stress_1d(const MaterialParams1D& p, double eps, double theta) {
  const double e2 = eps * eps;
  return eps * (p.k1 * (theta - p.theta1) - p.k2 * e2 + p.k3 * e2 * e2);
}

double internal_energy_density_1d(const MaterialParams1D& p, double eps, double theta) {
  const double e2 = eps * eps;
  return p.cv * theta - 0.5 * p.k1 * p.theta1 * e2 - 0.25 * p.k2 * e2 * e2 +
         p.k3 * e2 * e2 * e2 / 6.0;
}

double landau_energy(const MaterialParams2D& p, double e2, double dtheta) {
  const double q = e2 * e2;
  return 0.5 * p.a2 * dtheta * q - 0.25 * p.a4 * q * q + p.a6 * q * q * q / 6.0;
}

double landau_energy_de2(const MaterialParams2D& p, double e2, double dtheta) {
  const double q = e2 * e2;
  return e2 * (p.a2 * dtheta - p.a4 * q + p.a6 * q * q);
}

double landau_energy_d2e2(const MaterialParams2D& p, double e2, double dtheta) {
  const double q = e2 * e2;
  return p.a2 * dtheta - 3.0 * p.a4 * q + 5.0 * p.a6 * q * q;
}

double free_energy_2d(const MaterialParams2D& p, const StrainTriple& s, double theta) {
  require_temperature(theta);
  return -p.cv * theta * std::log(theta) + 0.5 * p.a1 * s.e1 * s.e1 + 0.5 * p.a3 * s.e3 * s.e3 +
         landau_energy(p, s.e2, theta - p.theta0);
}

StressTensor2D stress_2d(const MaterialParams2D& p, const StrainTriple& s, double theta) {
  const double dil = p.a1 * s.e1;
  const double dev = landau_energy_de2(p, s.e2, theta - p.theta0);
  return {kSqrtHalf * (dil + dev), 0.5 * p.a3 * s.e3, kSqrtHalf * (dil - dev)};
}

double internal_energy_density_2d(const MaterialParams2D& p, const StrainTriple& s, double theta) {
  const double q = s.e2 * s.e2;
  return p.cv * theta + 0.5 * p.a1 * s.e1 * s.e1 + 0.5 * p.a3 * s.e3 * s.e3 -
         0.5 * p.a2 * p.theta0 * q - 0.25 * p.a4 * q * q + p.a6 * q * q * q / 6.0;
}

std::vector<LandauEquilibrium> landau_equilibria(const MaterialParams2D& p, double dtheta) {
  std::vector<LandauEquilibrium> out;
  const double curv0 = landau_energy_d2e2(p, 0.0, dtheta);
  // At dtheta == 0 the quadratic term vanishes and -a4 e2^4/4 makes e2 = 0 a maximum.
  LandauEquilibrium austenite{0.0, curv0 > 0.0};

  const double disc = p.a4 * p.a4 - 4.0 * p.a2 * dtheta * p.a6;
  if (disc < 0.0) {
    out.push_back(austenite);
    return out;
  }
  const double em = (p.a4 + std::sqrt(disc)) / (2.0 * p.a6);
  const double root = std::sqrt(em);
  const bool minimum = landau_energy_d2e2(p, root, dtheta) > 0.0;
  out.push_back({-root, minimum});
  out.push_back(austenite);
  out.push_back({root, minimum});
  return out;
}

double convexity_threshold(const MaterialParams2D& p) {
  return p.a4 * p.a4 / (4.0 * p.a2 * p.a6);
}

double martensite_strain(const MaterialParams2D& p, double dtheta) {
  const double disc = p.a4 * p.a4 - 4.0 * p.a2 * dtheta * p.a6;
  return std::sqrt((p.a4 + std::sqrt(std::max(disc, 0.0))) / (2.0 * p.a6));
}

double martensite_strain_1d(const MaterialParams1D& p, double theta) {
  MaterialParams2D q;
  q.a2 = p.k1;
  q.a4 = p.k2;
  q.a6 = p.k3;
  return martensite_strain(q, theta - p.theta1);
}

double convexity_threshold_1d(const MaterialParams1D& p) {
  return p.k2 * p.k2 / (4.0 * p.k1 * p.k3);
}

}  // namespace smafv
