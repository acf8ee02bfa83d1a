#include "stfem/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "stfem/error.hpp"

namespace stfem {

namespace {

constexpr double pi = std::numbers::pi;

double tpow(double t, int k) { return k < 0 ? 0.0 : std::pow(t, k); }

std::vector<ManufacturedSolution> build_registry() {
  std::vector<ManufacturedSolution> r;

  ManufacturedSolution s;
  s.id = "heat_sine";
  s.description = "sin(pi x) exp(-t)";
  s.equation = Equation::Heat;
  s.u = [](double x, double t, const PhysicalParams&) { return std::sin(pi * x) * std::exp(-t); };
  s.ut = [](double x, double t, const PhysicalParams&) { return -std::sin(pi * x) * std::exp(-t); };
  s.utt = [](double x, double t, const PhysicalParams&) { return std::sin(pi * x) * std::exp(-t); };
  s.ux = [](double x, double t, const PhysicalParams&) { return pi * std::cos(pi * x) * std::exp(-t); };
  s.uxx = [](double x, double t, const PhysicalParams&) { return -pi * pi * std::sin(pi * x) * std::exp(-t); };
  s.utx = [](double x, double t, const PhysicalParams&) { return -pi * std::cos(pi * x) * std::exp(-t); };
  r.push_back(s);

  s = {};
  s.id = "heat_poly_exact";
  s.description = "x(1-x) t^q";
  s.equation = Equation::Heat;
  s.u = [](double x, double t, const PhysicalParams& p) { return x * (1 - x) * tpow(t, p.q); };
  s.ut = [](double x, double t, const PhysicalParams& p) { return x * (1 - x) * p.q * tpow(t, p.q - 1); };
  s.utt = [](double x, double t, const PhysicalParams& p) {
    return x * (1 - x) * p.q * (p.q - 1) * tpow(t, p.q - 2);
  };
  s.ux = [](double x, double t, const PhysicalParams& p) { return (1 - 2 * x) * tpow(t, p.q); };
  s.uxx = [](double, double t, const PhysicalParams& p) { return -2.0 * tpow(t, p.q); };
  s.utx = [](double x, double t, const PhysicalParams& p) { return (1 - 2 * x) * p.q * tpow(t, p.q - 1); };
  r.push_back(s);

  s = {};
  s.id = "wave_standing";
  s.description = "sin(pi x) cos(pi c t)";
  s.equation = Equation::Wave;
  s.u = [](double x, double t, const PhysicalParams& p) { return std::sin(pi * x) * std::cos(pi * p.c * t); };
  s.ut = [](double x, double t, const PhysicalParams& p) {
    return -pi * p.c * std::sin(pi * x) * std::sin(pi * p.c * t);
  };
  s.utt = [](double x, double t, const PhysicalParams& p) {
    return -pi * pi * p.c * p.c * std::sin(pi * x) * std::cos(pi * p.c * t);
  };
  s.ux = [](double x, double t, const PhysicalParams& p) { return pi * std::cos(pi * x) * std::cos(pi * p.c * t); };
  s.uxx = [](double x, double t, const PhysicalParams& p) {
    return -pi * pi * std::sin(pi * x) * std::cos(pi * p.c * t);
  };
  s.utx = [](double x, double t, const PhysicalParams& p) {
    return -pi * pi * p.c * std::cos(pi * x) * std::sin(pi * p.c * t);
  };
  r.push_back(s);

  s = {};
  s.id = "wave_poly_exact";
  s.description = "x(1-x) (t^q + 1)";
  s.equation = Equation::Wave;
  s.u = [](double x, double t, const PhysicalParams& p) { return x * (1 - x) * (tpow(t, p.q) + 1.0); };
  s.ut = [](double x, double t, const PhysicalParams& p) { return x * (1 - x) * p.q * tpow(t, p.q - 1); };
  s.utt = [](double x, double t, const PhysicalParams& p) {
    return x * (1 - x) * p.q * (p.q - 1) * tpow(t, p.q - 2);
  };
  s.ux = [](double x, double t, const PhysicalParams& p) { return (1 - 2 * x) * (tpow(t, p.q) + 1.0); };
  s.uxx = [](double, double t, const PhysicalParams& p) { return -2.0 * (tpow(t, p.q) + 1.0); };
  s.utx = [](double x, double t, const PhysicalParams& p) { return (1 - 2 * x) * p.q * tpow(t, p.q - 1); };
  r.push_back(s);

  s = {};
  s.id = "wave_damped_standing";
  s.description = "exp(-t/2) sin(pi x) cos(pi c t)";
  s.equation = Equation::Wave;
  s.u = [](double x, double t, const PhysicalParams& p) {
    return std::exp(-0.5 * t) * std::sin(pi * x) * std::cos(pi * p.c * t);
  };
  s.ut = [](double x, double t, const PhysicalParams& p) {
    const double w = pi * p.c;
    return std::exp(-0.5 * t) * std::sin(pi * x) * (-0.5 * std::cos(w * t) - w * std::sin(w * t));
  };
  s.utt = [](double x, double t, const PhysicalParams& p) {
    const double w = pi * p.c;
    return std::exp(-0.5 * t) * std::sin(pi * x) * ((0.25 - w * w) * std::cos(w * t) + w * std::sin(w * t));
  };
  s.ux = [](double x, double t, const PhysicalParams& p) {
    return std::exp(-0.5 * t) * pi * std::cos(pi * x) * std::cos(pi * p.c * t);
  };
  s.uxx = [](double x, double t, const PhysicalParams& p) {
    return -pi * pi * std::exp(-0.5 * t) * std::sin(pi * x) * std::cos(pi * p.c * t);
  };
  s.utx = [](double x, double t, const PhysicalParams& p) {
    const double w = pi * p.c;
    return std::exp(-0.5 * t) * pi * std::cos(pi * x) * (-0.5 * std::cos(w * t) - w * std::sin(w * t));
  };
  r.push_back(s);

  s = {};
  s.id = "zero";
  s.description = "u = 0 with zero data";
  s.equation = Equation::Any;
  s.u = s.ut = s.utt = s.ux = s.uxx = s.utx = [](double, double, const PhysicalParams&) { return 0.0; };
  r.push_back(s);

  return r;
}

}  // namespace

double ManufacturedSolution::forcing(double x, double t, const PhysicalParams& prm, bool wave) const {
  if (wave) return utt(x, t, prm) + prm.delta * ut(x, t, prm) - prm.c * prm.c * uxx(x, t, prm);
  return ut(x, t, prm) - prm.nu * uxx(x, t, prm);
}

ProblemData ManufacturedSolution::problem(const PhysicalParams& prm, double T, bool wave) const {
  ProblemData d;
  d.T = T;
  d.f = [self = *this, prm, wave](double x, double t) { return self.forcing(x, t, prm, wave); };
  d.u0 = [f = u, prm](double x) { return f(x, 0.0, prm); };
  d.du0 = [f = ux, prm](double x) { return f(x, 0.0, prm); };
  d.v0 = [f = ut, prm](double x) { return f(x, 0.0, prm); };
  return d;
}

ExactSolution ManufacturedSolution::exact(const PhysicalParams& prm) const {
  auto bind = [prm](const ParamFunction& f) -> SpaceTimeFunction {
    return [f, prm](double x, double t) { return f(x, t, prm); };
  };
  return {bind(u), bind(ux), bind(ut), bind(utx)};
}

bool ManufacturedSolution::compatible(Scheme s) const {
  if (equation == Equation::Any) return true;
  return (equation == Equation::Wave) == is_wave(s);
}

const std::vector<ManufacturedSolution>& list_solutions() {
  static const std::vector<ManufacturedSolution> registry = build_registry();
  return registry;
}

const ManufacturedSolution& get_solution(std::string_view id) {
  for (const auto& s : list_solutions())
    if (s.id == id) return s;
  throw Error(ErrorCode::UnknownSolutionId, "'" + std::string(id) + "'");
}

SolutionCheck validate_solution(const ManufacturedSolution& s, const PhysicalParams& prm, double T,
                                std::uint64_t seed) {
  constexpr double h = 1e-5;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux_dist(0.05, 0.95), ut_dist(0.05 * T, 0.95 * T);
  SolutionCheck c;
  auto rel = [](double fd, double exact) { return std::abs(fd - exact) / std::max(1.0, std::abs(exact)); };
  for (int k = 0; k < 20; ++k) {
    const double x = ux_dist(rng), t = ut_dist(rng);
    const double d_t = (s.u(x, t + h, prm) - s.u(x, t - h, prm)) / (2 * h);
    const double d_tt = (s.ut(x, t + h, prm) - s.ut(x, t - h, prm)) / (2 * h);
    const double d_x = (s.u(x + h, t, prm) - s.u(x - h, t, prm)) / (2 * h);
    const double d_xx = (s.ux(x + h, t, prm) - s.ux(x - h, t, prm)) / (2 * h);
    const double d_tx = (s.ut(x + h, t, prm) - s.ut(x - h, t, prm)) / (2 * h);
    c.max_derivative_defect = std::max({c.max_derivative_defect, rel(d_t, s.ut(x, t, prm)),
                                        rel(d_tt, s.utt(x, t, prm)), rel(d_x, s.ux(x, t, prm)),
                                        rel(d_xx, s.uxx(x, t, prm)), rel(d_tx, s.utx(x, t, prm))});
    c.max_boundary_value =
        std::max({c.max_boundary_value, std::abs(s.u(0.0, t, prm)), std::abs(s.u(1.0, t, prm))});
  }
  c.passed = c.max_derivative_defect < 1e-6 && c.max_boundary_value < 1e-12;
  return c;
}

}  // namespace stfem
