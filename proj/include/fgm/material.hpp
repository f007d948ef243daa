#pragma once

#include <optional>
#include <string>

namespace fgm {

/// Coefficients of the cubic-plus-inverse temperature law
/// P(T) = P0 * (Pm1 / T + 1 + P1 T + P2 T^2 + P3 T^3).
struct TemperatureCoefficients {
  double P0 = 0.0;
  double Pm1 = 0.0;
  double P1 = 0.0;
  double P2 = 0.0;
  double P3 = 0.0;

  bool operator==(const TemperatureCoefficients&) const = default;
};

struct ConstituentSpec {
  TemperatureCoefficients E;      // Pa
  TemperatureCoefficients alpha;  // 1/K
  double rho = 0.0;               // kg/m^3
  double kappa = 0.0;             // W/(m K)
  double nu = 0.3;

  void validate() const;
  bool operator==(const ConstituentSpec&) const = default;
};

/// Two-phase ceramic/metal system graded through the thickness. The ceramic
/// sits at z = +h/2, the metal at z = -h/2.
struct MaterialSystem {
  ConstituentSpec ceramic;
  ConstituentSpec metal;
  double k = 0.0;
  std::optional<double> nu_fixed;

  void validate() const;
  bool operator==(const MaterialSystem&) const = default;
};

struct ThermalBC {
  double Tc = 300.0;  // ceramic face
  double Tm = 300.0;  // metal face
  double T0 = 300.0;  // stress-free reference

  void validate() const;
  bool operator==(const ThermalBC&) const = default;
};

struct PointProperties {
  double E = 0.0;
  double nu = 0.0;
  double rho = 0.0;
  double alpha = 0.0;
  double kappa = 0.0;
  double T = 0.0;
};

struct BulkShear {
  double K = 0.0;
  double G = 0.0;
};

struct YoungPoisson {
  double E = 0.0;
  double nu = 0.0;
};

struct KappaAlpha {
  double kappa = 0.0;
  double alpha = 0.0;
};

double constituent_property_at(const TemperatureCoefficients& c, double T);

double volume_fraction_ceramic(double z, double h, double k);

BulkShear mori_tanaka_bulk_shear(double Kc, double Gc, double Km, double Gm, double Vc);

/// Inverse of the isotropic (K, G) identities. When nu_fixed is given it
/// replaces the homogenized Poisson ratio.
YoungPoisson effective_young_poisson(double K, double G,
                                     std::optional<double> nu_fixed = std::nullopt);

BulkShear bulk_shear_from_young_poisson(double E, double nu);

double effective_density(double rho_c, double rho_m, double Vc);

/// Effective conductivity (Hashin-type relation) and thermal expansion from
/// the Levin relation on the homogenized bulk modulus. Kc and Km are the
/// constituent bulk moduli at the same state as K_eff.
KappaAlpha effective_kappa_alpha(double kappa_c, double kappa_m, double alpha_c,
                                 double alpha_m, double Kc, double Km, double Vc,
                                 double K_eff);

/// Steady one-dimensional conduction through the graded thickness, solved
/// with the truncated power series in the ceramic-metal conductivity contrast.
double temperature_profile(double z, double h, double k, double kappa_c, double kappa_m,
                           const ThermalBC& bc);

PointProperties graded_point_properties(const MaterialSystem& sys, double z, double h,
                                        const ThermalBC& bc);

/// Silicon nitride / stainless steel SUS304 with temperature-dependent E and
/// alpha, constant Poisson ratio 0.28.
MaterialSystem si3n4_sus304(double k);

/// Single-phase temperature-independent material, useful for isotropic checks.
ConstituentSpec isotropic_constituent(double E, double nu, double rho, double alpha = 1.0e-5,
                                      double kappa = 1.0);

/// Built-in systems by name; throws std::invalid_argument for unknown names.
MaterialSystem builtin_material_system(const std::string& name, double k);

}  // namespace fgm
