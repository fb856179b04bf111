#pragma once

// Constitutive laws for the 1D Falk model and the 2D square-to-rectangular
// Landau model. Units follow the g / cm / ms / K system throughout.

#include <vector>

namespace smafv {

/// Renormalized coefficients of the 1D Falk free energy.
struct MaterialParams1D {
  double k1 = 480.0;      ///< coupling modulus [g/(ms^2 cm K)]
  double k2 = 6.0e6;      ///< quartic modulus
  double k3 = 4.5e8;      ///< sextic modulus
  double theta1 = 208.0;  ///< transformation reference temperature [K]
  double rho = 11.1;      ///< density [g/cm^3]
  double cv = 3.1274;     ///< specific heat [g/(ms^2 cm K)]
  double kappa = 1.9e-2;  ///< heat conductivity [cm g/(ms^3 K)]

  /// Throws std::invalid_argument naming the first invalid coefficient. The
  /// moduli and kappa may be zero; theta1, rho and cv must be positive.
  void validate() const;
  bool operator==(const MaterialParams1D&) const = default;
};

/// Coefficients of the 2D Landau free energy
///   phi = -cv theta ln theta + a1 e1^2/2 + a3 e3^2/2 + F_L(e2, theta),
///   F_L = a2 (theta - theta0) e2^2 / 2 - a4 e2^4 / 4 + a6 e2^6 / 6.
struct MaterialParams2D {
  double a1 = 480.0;
  double a2 = 480.0;
  double a3 = 960.0;
  double a4 = 6.0e6;
  double a6 = 4.5e8;
  double theta0 = 208.0;
  double rho = 11.1;
  double cv = 3.1274;
  double kappa = 1.9e-2;

  void validate() const;
  bool operator==(const MaterialParams2D&) const = default;
};

/// Links the patch coefficients to the rod constants: a1 = a2 = k1,
/// a3 = 2 k1, a4 = k2, a6 = k3, theta0 = theta1. The quartic and sextic
/// moduli carry over unchanged so the homogeneous 2D equilibria coincide
/// with the 1D ones.
MaterialParams2D patch_params_from_rod(const MaterialParams1D& rod);

struct StrainTriple {
  double e1 = 0.0;  ///< dilatational
  double e2 = 0.0;  ///< deviatoric (order parameter)
  double e3 = 0.0;  ///< shear
};

struct StressTensor2D {
  double s11 = 0.0;
  double s12 = 0.0;  ///< equals s21
  double s22 = 0.0;
};

// 1D Falk model ------------------------------------------------------------

/// phi = -cv th ln th + k1 (th - th1) eps^2/2 - k2 eps^4/4 + k3 eps^6/6.
/// Throws std::domain_error for theta <= 0.
double free_energy_1d(const MaterialParams1D& p, double eps, double theta);

/// s = d phi / d eps = k1 (th - th1) eps - k2 eps^3 + k3 eps^5.
double stress_1d(const MaterialParams1D& p, double eps, double theta);

/// e = phi - th d phi/d th, with the logarithm eliminated analytically:
/// cv th - k1 th1 eps^2/2 - k2 eps^4/4 + k3 eps^6/6.
double internal_energy_density_1d(const MaterialParams1D& p, double eps, double theta);

// 2D Landau model ----------------------------------------------------------

double landau_energy(const MaterialParams2D& p, double e2, double dtheta);
double landau_energy_de2(const MaterialParams2D& p, double e2, double dtheta);
double landau_energy_d2e2(const MaterialParams2D& p, double e2, double dtheta);

/// Throws std::domain_error for theta <= 0.
double free_energy_2d(const MaterialParams2D& p, const StrainTriple& s, double theta);

/// Stress from dphi/d eta with e1 = (eta11 + eta22)/sqrt2,
/// e2 = (eta11 - eta22)/sqrt2, e3 = eta12.
StressTensor2D stress_2d(const MaterialParams2D& p, const StrainTriple& s, double theta);

/// cv th + a1 e1^2/2 + a3 e3^2/2 - a2 th0 e2^2/2 - a4 e2^4/4 + a6 e2^6/6.
double internal_energy_density_2d(const MaterialParams2D& p, const StrainTriple& s, double theta);

/// Stationary point of F_L in e2 at a fixed temperature offset.
struct LandauEquilibrium {
  double e2 = 0.0;
  bool is_minimum = false;
};

/// Austenite (e2 = 0) always; when a4^2 - 4 a2 dtheta a6 >= 0 also the
/// martensite pair -sqrt(e_m), +sqrt(e_m) with
/// e_m = (a4 + sqrt(a4^2 - 4 a2 dtheta a6)) / (2 a6). Sorted ascending.
std::vector<LandauEquilibrium> landau_equilibria(const MaterialParams2D& p, double dtheta);

/// Temperature offset a4^2 / (4 a2 a6) above which only austenite remains.
double convexity_threshold(const MaterialParams2D& p);

/// sqrt(e_m) where the martensite pair exists; above the convexity threshold
/// the value where the pair vanishes, sqrt(a4 / (2 a6)).
double martensite_strain(const MaterialParams2D& p, double dtheta);

/// Same quantities for the rod constants (a2 -> k1, a4 -> k2, a6 -> k3).
double martensite_strain_1d(const MaterialParams1D& p, double theta);
double convexity_threshold_1d(const MaterialParams1D& p);

}  // namespace smafv
