#ifndef STFEM_METHODS_HPP
#define STFEM_METHODS_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stfem/linalg.hpp"
#include "stfem/spatial.hpp"
#include "stfem/timeops.hpp"

namespace stfem {

enum class Scheme { HeatJamet, HeatAzizMonk, WaveVanilla, WaveFrenchPeterson, WaveJohnson, WaveWalkington };

inline constexpr Scheme kAllSchemes[] = {Scheme::HeatJamet,          Scheme::HeatAzizMonk, Scheme::WaveVanilla,
                                         Scheme::WaveFrenchPeterson, Scheme::WaveJohnson,  Scheme::WaveWalkington};

std::string_view scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);
bool is_wave(Scheme s);
int min_time_degree(Scheme s);
bool has_velocity_field(Scheme s);

struct MethodSpec {
  Scheme scheme = Scheme::HeatJamet;
  double nu = 1.0;
  double c = 1.0;
  double delta = 0.0;
  int q = 1;
  int p = 1;
  double cfl_constant = 0.0;  // 0 selects default_cfl_constant(q, p)
  bool cfl_override = false;
  int rhs_points = 0;         // Gauss points per slab for the forcing; 0 selects 2q+10
  int space_points = 0;       // Gauss points per element for spatial loads; 0 selects p+4
};

double default_cfl_constant(int q, int p);

using SpaceTimeFunction = std::function<double(double x, double t)>;

struct ProblemData {
  SpaceTimeFunction f;
  SpaceFunction u0;
  SpaceFunction du0;  // derivative of u0, used by the Ritz projection
  SpaceFunction v0;
  double T = 1.0;
};

struct Diagnostics {
  std::vector<double> residuals;  // per slab, |A x - b| / max(|b|, tiny)
  double max_residual = 0.0;
  std::optional<double> cfl_margin;  // (C_CFL h_min / c) / tau_max, WaveVanilla only
  bool cfl_violated = false;
  std::size_t factorizations = 0;
};

struct Solution {
  MethodSpec spec;
  TimePolyField u;
  std::optional<TimePolyField> v;
  Diagnostics diagnostics;
};

// Traces at t_n^-: displacement and velocity (dt u for single-field wave schemes).
struct SlabState {
  std::vector<double> u;
  std::vector<double> v;
};

// Sequential slab solver. Identical inputs give bitwise identical coefficients.
class SlabStepper {
 public:
  SlabStepper(MethodSpec spec, const FeSpace& space, const SpatialOperators& ops, TimeMesh mesh,
              ProblemData data);
  ~SlabStepper();
  SlabStepper(SlabStepper&&) noexcept;

  SlabState initial_state() const;

  struct StepResult {
    std::vector<double> u;  // Legendre coefficients, layout [i][x]
    std::vector<double> v;
    SlabState end;
    double residual = 0.0;
  };
  StepResult step(std::size_t slab, const SlabState& prev);
  std::size_t factorizations() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Checks the WaveVanilla step restriction; returns the margin, throws CflViolation
// unless spec.cfl_override. Returns nullopt for schemes without a restriction.
std::optional<double> check_cfl(const MethodSpec& spec, const FeSpace& space, const TimeMesh& mesh);

Solution solve(const MethodSpec& spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data);

Solution solve_heat_jamet(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data);
Solution solve_heat_aziz_monk(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data);
Solution solve_wave_vanilla(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data);
Solution solve_wave_french_peterson(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh,
                                    const ProblemData& data);
Solution solve_wave_johnson(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data);
Solution solve_wave_walkington(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data);

// Time derivative field used as the velocity: v when present, otherwise dt u.
TimePolyField velocity_field(const Solution& sol);

// Maximum over slabs of |Pi_{q-1} v - dt u| / max(1, |v|) for WaveFrenchPeterson.
double french_peterson_reduction_defect(const Solution& sol);

}  // namespace stfem

#endif
