#include "fgm/material.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fgm {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_within_thickness(double z, double h) {
  const double half = 0.5 * h;
  const double slack = 1e-12 * h;
  if (!(h > 0.0) || z < -half - slack || z > half + slack)
    throw std::domain_error("z = " + std::to_string(z) + " lies outside the plate thickness");
}

// (2z + h) / (2h), clamped onto [0, 1] to absorb rounding at the faces.
double thickness_coordinate(double z, double h) {
  const double s = (2.0 * z + h) / (2.0 * h);
  return s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
}

}  // namespace

void ConstituentSpec::validate() const {
  require(E.P0 > 0.0, "constituent E coefficient P0 must be positive");
  require(alpha.P0 > 0.0, "constituent alpha coefficient P0 must be positive");
  require(rho > 0.0, "constituent density must be positive");
  require(kappa > 0.0, "constituent conductivity must be positive");
  require(nu > 0.0 && nu < 0.5, "constituent Poisson ratio must lie in (0, 0.5)");
}

void MaterialSystem::validate() const {
  ceramic.validate();
  metal.validate();
  require(k >= 0.0 && std::isfinite(k), "gradient index k must be finite and >= 0");
  if (nu_fixed)
    require(*nu_fixed > 0.0 && *nu_fixed < 0.5, "nu_fixed must lie in (0, 0.5)");
}

void ThermalBC::validate() const {
  require(Tc > 0.0 && Tm > 0.0 && T0 > 0.0, "temperatures must be positive (kelvin)");
}

double constituent_property_at(const TemperatureCoefficients& c, double T) {
  if (!(T > 0.0)) throw std::domain_error("temperature must be positive, got " + std::to_string(T));
  return c.P0 * (c.Pm1 / T + 1.0 + T * (c.P1 + T * (c.P2 + T * c.P3)));
}

double volume_fraction_ceramic(double z, double h, double k) {
  require_within_thickness(z, h);
  if (k < 0.0) throw std::domain_error("gradient index must be non-negative");
  return std::pow(thickness_coordinate(z, h), k);
}

BulkShear mori_tanaka_bulk_shear(double Kc, double Gc, double Km, double Gm, double Vc) {
  if (!(Vc >= 0.0 && Vc <= 1.0))
    throw std::domain_error("volume fraction outside [0, 1]: " + std::to_string(Vc));
  if (!(Kc > 0.0 && Gc > 0.0 && Km > 0.0 && Gm > 0.0))
    throw std::domain_error("Mori-Tanaka moduli must be positive");
  const double Vm = 1.0 - Vc;
  const double f1 = Gm * (9.0 * Km + 8.0 * Gm) / (6.0 * (Km + 2.0 * Gm));
  const double K = Km + (Kc - Km) * Vc / (1.0 + Vm * 3.0 * (Kc - Km) / (3.0 * Km + 4.0 * Gm));
  const double G = Gm + (Gc - Gm) * Vc / (1.0 + Vm * (Gc - Gm) / (Gm + f1));
  return {K, G};
}

YoungPoisson effective_young_poisson(double K, double G, std::optional<double> nu_fixed) {
  if (!(K > 0.0 && G > 0.0)) throw std::domain_error("bulk and shear moduli must be positive");
  const double E = 9.0 * K * G / (3.0 * K + G);
  const double nu = nu_fixed ? *nu_fixed : (3.0 * K - 2.0 * G) / (2.0 * (3.0 * K + G));
  return {E, nu};
}

BulkShear bulk_shear_from_young_poisson(double E, double nu) {
  if (!(E > 0.0) || !(nu > -1.0 && nu < 0.5))
    throw std::domain_error("invalid isotropic constants");
  return {E / (3.0 * (1.0 - 2.0 * nu)), E / (2.0 * (1.0 + nu))};
}

double effective_density(double rho_c, double rho_m, double Vc) {
  return rho_c * Vc + rho_m * (1.0 - Vc);
}

KappaAlpha effective_kappa_alpha(double kappa_c, double kappa_m, double alpha_c,
                                 double alpha_m, double Kc, double Km, double Vc,
                                 double K_eff) {
  if (!(Vc >= 0.0 && Vc <= 1.0))
    throw std::domain_error("volume fraction outside [0, 1]: " + std::to_string(Vc));
  const double Vm = 1.0 - Vc;
  const double kappa_cm = kappa_c - kappa_m;
  const double kappa = kappa_m + kappa_cm * Vc / (1.0 + Vm * kappa_cm / (3.0 * kappa_m));

  const double inv_c = 1.0 / Kc;
  const double inv_m = 1.0 / Km;
  const double denom = inv_c - inv_m;
  double ratio = Vc;  // limit of the Levin ratio as Kc -> Km
  if (std::abs(denom) > 1e-12 * std::abs(inv_m)) ratio = (1.0 / K_eff - inv_m) / denom;
  return {kappa, alpha_m + (alpha_c - alpha_m) * ratio};
}

double temperature_profile(double z, double h, double k, double kappa_c, double kappa_m,
                           const ThermalBC& bc) {
  require_within_thickness(z, h);
  const double contrast = (kappa_c - kappa_m) / kappa_m;
  // sum_{n=0}^{5} (-contrast)^n s^(n k + 1) / (n k + 1)
  auto series = [&](double s) {
    double sum = 0.0;
    double c = 1.0;
    for (int n = 0; n <= 5; ++n) {
      const double p = n * k + 1.0;
      sum += c * std::pow(s, p) / p;
      c *= -contrast;
    }
    return sum;
  };
  if (z >= 0.5 * h) return bc.Tc;
  if (z <= -0.5 * h) return bc.Tm;
  const double eta = series(thickness_coordinate(z, h)) / series(1.0);
  return bc.Tm + (bc.Tc - bc.Tm) * eta;
}

PointProperties graded_point_properties(const MaterialSystem& sys, double z, double h,
                                        const ThermalBC& bc) {
  const ConstituentSpec& c = sys.ceramic;
  const ConstituentSpec& m = sys.metal;
  const double T = temperature_profile(z, h, sys.k, c.kappa, m.kappa, bc);
  const double Vc = volume_fraction_ceramic(z, h, sys.k);

  const double Ec = constituent_property_at(c.E, T);
  const double Em = constituent_property_at(m.E, T);
  const BulkShear kc = bulk_shear_from_young_poisson(Ec, c.nu);
  const BulkShear km = bulk_shear_from_young_poisson(Em, m.nu);
  const BulkShear eff = mori_tanaka_bulk_shear(kc.K, kc.G, km.K, km.G, Vc);
  const YoungPoisson ym = effective_young_poisson(eff.K, eff.G, sys.nu_fixed);
  const KappaAlpha ka =
      effective_kappa_alpha(c.kappa, m.kappa, constituent_property_at(c.alpha, T),
                            constituent_property_at(m.alpha, T), kc.K, km.K, Vc, eff.K);

  PointProperties p;
  p.E = ym.E;
  p.nu = ym.nu;
  p.rho = effective_density(c.rho, m.rho, Vc);
  p.alpha = ka.alpha;
  p.kappa = ka.kappa;
  p.T = T;
  return p;
}

MaterialSystem si3n4_sus304(double k) {
  MaterialSystem sys;
  sys.ceramic.E = {348.43e9, 0.0, -3.070e-4, 2.160e-7, -8.946e-11};
  sys.ceramic.alpha = {5.8723e-6, 0.0, 9.095e-4, 0.0, 0.0};
  sys.ceramic.rho = 2370.0;
  sys.ceramic.kappa = 9.19;
  sys.ceramic.nu = 0.28;

  sys.metal.E = {201.04e9, 0.0, 3.079e-4, -6.534e-7, 0.0};
  sys.metal.alpha = {12.330e-6, 0.0, 8.086e-4, 0.0, 0.0};
  sys.metal.rho = 8166.0;
  sys.metal.kappa = 12.04;
  sys.metal.nu = 0.28;

  sys.k = k;
  sys.nu_fixed = 0.28;
  return sys;
}

ConstituentSpec isotropic_constituent(double E, double nu, double rho, double alpha,
                                      double kappa) {
  ConstituentSpec c;
  c.E = {E, 0.0, 0.0, 0.0, 0.0};
  c.alpha = {alpha, 0.0, 0.0, 0.0, 0.0};
  c.rho = rho;
  c.kappa = kappa;
  c.nu = nu;
  return c;
}

MaterialSystem builtin_material_system(const std::string& name, double k) {
  if (name == "Si3N4/SUS304") return si3n4_sus304(k);
  throw std::invalid_argument("unknown material system '" + name + "'");
}

}  // namespace fgm
