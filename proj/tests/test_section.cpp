#include "doctest.h"
#include "oracles.hpp"

#include "fgm/section.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <functional>

using namespace fgm;

namespace {

// Every scalar entry of the section, in a fixed order.
std::vector<double> entries(const SectionProperties& s) {
  std::vector<double> v;
  for (const Eigen::Matrix3d* m : {&s.A, &s.B, &s.D})
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) v.push_back((*m)(i, j));
  v.push_back(s.Es(0, 0));
  v.push_back(s.Es(1, 1));
  for (int i = 0; i < 3; ++i) v.push_back(s.Nth(i));
  for (int i = 0; i < 3; ++i) v.push_back(s.Mth(i));
  v.push_back(s.p);
  v.push_back(s.I);
  return v;
}

// Same entries from scalar integrals over the thickness, integrand built
// from the independent property chain.
std::vector<double> oracle_entries(double k, double h, const ThermalBC& bc, double kappa,
                                   const std::function<double(const std::function<double(double)>&)>& integrate) {
  const oracle::Constituent c = oracle::si3n4(), m = oracle::sus304();
  auto at = [&](double z) { return oracle::graded(c, m, k, 0.28, z, h, bc.Tc, bc.Tm); };
  auto Q11 = [&](double z) { const auto p = at(z); return p.E / (1 - p.nu * p.nu); };
  auto Q12 = [&](double z) { const auto p = at(z); return p.nu * p.E / (1 - p.nu * p.nu); };
  auto Q66 = [&](double z) { const auto p = at(z); return p.E / (2 * (1 + p.nu)); };
  auto thermal = [&](double z) {
    const auto p = at(z);
    return p.E / (1 - p.nu) * p.alpha * (p.T - bc.T0);
  };
  std::vector<double> v;
  for (int power : {0, 1, 2}) {
    auto w = [power](double z) { return std::pow(z, power); };
    const double a11 = integrate([&](double z) { return Q11(z) * w(z); });
    const double a12 = integrate([&](double z) { return Q12(z) * w(z); });
    const double a66 = integrate([&](double z) { return Q66(z) * w(z); });
    v.insert(v.end(), {a11, a12, 0.0, a11, 0.0, a66});
  }
  const double es = kappa * integrate(Q66);
  v.push_back(es);
  v.push_back(es);
  const double n = integrate(thermal);
  const double mth = integrate([&](double z) { return thermal(z) * z; });
  v.insert(v.end(), {n, n, 0.0, mth, mth, 0.0});
  v.push_back(integrate([&](double z) { return at(z).rho; }));
  v.push_back(integrate([&](double z) { return at(z).rho * z * z; }));
  return v;
}

// Relative error against the largest entry of the same physical group, so
// structurally zero entries are compared on the right scale.
double worst_error(const std::vector<double>& got, const std::vector<double>& want) {
  static const std::vector<std::pair<int, int>> groups = {
      {0, 6}, {6, 12}, {12, 18}, {18, 20}, {20, 23}, {23, 26}, {26, 27}, {27, 28}};
  double worst = 0.0;
  for (auto [lo, hi] : groups) {
    double scale = 0.0;
    for (int i = lo; i < hi; ++i) scale = std::max(scale, std::abs(want[i]));
    if (scale == 0.0) scale = 1.0;
    for (int i = lo; i < hi; ++i) worst = std::max(worst, std::abs(got[i] - want[i]) / scale);
  }
  return worst;
}

}  // namespace

TEST_SUITE("section") {

TEST_CASE("reduced stiffness") {
  const ReducedStiffness a = reduced_stiffness(1.0, 0.0);
  CHECK(a.Q11 == 1.0);
  CHECK(a.Q12 == 0.0);
  CHECK(a.Q66 == 0.5);
  const ReducedStiffness b = reduced_stiffness(210e9, 0.3);
  CHECK(b.Q11 / 1e9 == doctest::Approx(230.77).epsilon(1e-4));
  CHECK(b.Q22 == b.Q11);
  CHECK(b.Q44 == b.Q55);
  CHECK(b.Q55 == b.Q66);
  CHECK(b.Q12 == doctest::Approx(0.3 * b.Q11));
}

TEST_CASE("homogeneous section at the reference temperature") {
  const MaterialSystem s = si3n4_sus304(0.0);
  const double h = 0.05;
  const SectionProperties sec = integrate_section(s, h, ThermalBC{300, 300, 300});
  const double E = constituent_property_at(s.ceramic.E, 300.0);
  const double nu = 0.28;
  CHECK(sec.A(0, 0) == doctest::Approx(E * h / (1 - nu * nu)).epsilon(1e-13));
  CHECK(sec.D(0, 0) == doctest::Approx(E * h * h * h / (12 * (1 - nu * nu))).epsilon(1e-13));
  CHECK(sec.B.norm() < 1e-12 * sec.A.norm() * h);
  CHECK(sec.Nth.norm() == 0.0);
  CHECK(sec.Mth.norm() == 0.0);
  CHECK(sec.p == doctest::Approx(2370 * h));
  CHECK(sec.I == doctest::Approx(2370 * h * h * h / 12));
  CHECK(sec.Es(0, 0) == doctest::Approx(5.0 / 6.0 * E / (2 * (1 + nu)) * h));
}

TEST_CASE("homogeneous section under uniform heating") {
  // constant coefficients so that the closed form applies exactly
  MaterialSystem s;
  s.ceramic = isotropic_constituent(70e9, 0.3, 2700, 2.3e-5, 200);
  s.metal = s.ceramic;
  s.k = 1.0;
  const double h = 0.02;
  for (double dT : {50.0, 100.0, 200.0}) {
    const SectionProperties sec = integrate_section(s, h, ThermalBC{300 + dT, 300 + dT, 300});
    CHECK(sec.Nth(0) == doctest::Approx(70e9 * 2.3e-5 * dT * h / (1 - 0.3)).epsilon(1e-13));
    CHECK(sec.Nth(1) == doctest::Approx(sec.Nth(0)));
    CHECK(std::abs(sec.Nth(2)) == 0.0);
    CHECK(sec.Mth.norm() < 1e-12 * sec.Nth.norm() * h);
  }
}

TEST_CASE("thermal resultants are linear in a uniform temperature rise") {
  MaterialSystem s;
  s.ceramic = isotropic_constituent(300e9, 0.25, 3000, 5e-6, 9);
  s.metal = isotropic_constituent(200e9, 0.3, 8000, 1.2e-5, 12);
  s.k = 2.0;
  const double h = 0.1;
  const SectionProperties one = integrate_section(s, h, ThermalBC{400, 400, 300});
  const SectionProperties three = integrate_section(s, h, ThermalBC{600, 600, 300});
  CHECK((three.Nth - 3.0 * one.Nth).norm() < 1e-12 * three.Nth.norm());
  CHECK((three.Mth - 3.0 * one.Mth).norm() < 1e-12 * three.Mth.norm());
}

TEST_CASE("graded section against an adaptive quadrature oracle") {
  const double h = 0.1;
  for (const ThermalBC bc : {ThermalBC{300, 300, 300}, ThermalBC{600, 300, 300}}) {
    const SectionProperties sec = integrate_section(si3n4_sus304(1.0), h, bc);
    const auto want = oracle_entries(1.0, h, bc, 5.0 / 6.0, [h](const auto& f) {
      return oracle::adaptive_simpson(f, -h / 2, h / 2, 1e-13);
    });
    CHECK(worst_error(entries(sec), want) < 1e-8);
  }
}

TEST_CASE("20-point rule matches 200-panel composite Simpson") {
  // The converged value (20000 panels) is printed next to each comparison
  // so a failure can be attributed to the rule or to the Simpson oracle.
  const double h = 0.1;
  const ThermalBC bc{500, 300, 300};
  auto simpson = [h](int n) {
    return [h, n](const std::function<double(double)>& f) {
      return oracle::composite_simpson(f, -h / 2, h / 2, n);
    };
  };
  for (double k : {0.2, 1.0, 2.0, 5.0, 10.0}) {
    CAPTURE(k);
    const SectionProperties sec = integrate_section(si3n4_sus304(k), h, bc);
    const auto coarse = oracle_entries(k, h, bc, 5.0 / 6.0, simpson(200));
    const auto fine = oracle_entries(k, h, bc, 5.0 / 6.0, simpson(20000));
    MESSAGE("k = " << k << ": gauss vs simpson(200) " << worst_error(entries(sec), coarse)
                   << ", gauss vs simpson(20000) " << worst_error(entries(sec), fine)
                   << ", simpson(200) vs simpson(20000) " << worst_error(coarse, fine));
    CHECK(worst_error(entries(sec), coarse) < 1e-8);
  }
}

TEST_CASE("constitutive blocks are positive definite") {
  for (double k : {0.0, 0.5, 2.0, 10.0})
    for (const ThermalBC bc : {ThermalBC{300, 300, 300}, ThermalBC{900, 300, 300}}) {
      const SectionProperties sec = integrate_section(si3n4_sus304(k), 0.1, bc);
      CHECK(Eigen::LLT<Eigen::Matrix3d>(sec.A).info() == Eigen::Success);
      CHECK(Eigen::LLT<Eigen::Matrix3d>(sec.D).info() == Eigen::Success);
      CHECK(Eigen::LLT<Eigen::Matrix2d>(sec.Es).info() == Eigen::Success);
      CHECK((sec.B - sec.B.transpose()).norm() == 0.0);
      CHECK(sec.p > 0.0);
      CHECK(sec.I > 0.0);
      Eigen::LLT<Eigen::Matrix<double, 8, 8>> llt(sec.generalized());
      CHECK(llt.info() == Eigen::Success);
    }
}

TEST_CASE("coupling vanishes at both homogeneous limits") {
  const ThermalBC bc{300, 300, 300};
  const SectionProperties metal = integrate_section(si3n4_sus304(1e6), 0.1, bc);
  CHECK(metal.B.norm() / metal.A.norm() / 0.1 < 1e-3);
  const SectionProperties ceramic = integrate_section(si3n4_sus304(1e-9), 0.1, bc);
  CHECK(ceramic.B.norm() / ceramic.A.norm() / 0.1 < 1e-3);
}

TEST_CASE("shear correction") {
  const MaterialSystem s = si3n4_sus304(1.0);
  const ThermalBC bc{300, 300, 300};
  const SectionProperties a = integrate_section(s, 0.1, bc, ShearCorrection{1.0});
  const SectionProperties b = integrate_section(s, 0.1, bc, ShearCorrection{0.5});
  CHECK(b.Es(0, 0) == doctest::Approx(0.5 * a.Es(0, 0)));
  CHECK_THROWS_AS(ShearCorrection{0.0}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(ShearCorrection{1.5}.validate(), std::invalid_argument);
}

}  // TEST_SUITE
