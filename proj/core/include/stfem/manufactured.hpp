#ifndef STFEM_MANUFACTURED_HPP
#define STFEM_MANUFACTURED_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "stfem/analysis.hpp"
#include "stfem/methods.hpp"

namespace stfem {

struct PhysicalParams {
  double nu = 1.0;
  double c = 1.0;
  double delta = 0.0;
  int q = 1;  // degree used by the polynomial-in-time solutions
};

enum class Equation { Heat, Wave, Any };

using ParamFunction = std::function<double(double x, double t, const PhysicalParams&)>;

// Closed-form solution on (0,1) with homogeneous Dirichlet data. The forcing is
// u_t - nu u_xx (heat) or u_tt + delta u_t - c^2 u_xx (wave).
struct ManufacturedSolution {
  std::string id;
  std::string description;
  Equation equation = Equation::Any;
  ParamFunction u, ut, utt, ux, uxx, utx;

  double forcing(double x, double t, const PhysicalParams& prm, bool wave) const;
  ProblemData problem(const PhysicalParams& prm, double T, bool wave) const;
  ExactSolution exact(const PhysicalParams& prm) const;
  bool compatible(Scheme s) const;
};

const std::vector<ManufacturedSolution>& list_solutions();
const ManufacturedSolution& get_solution(std::string_view id);

struct SolutionCheck {
  double max_derivative_defect = 0.0;  // closed-form derivatives vs central differences (step 1e-5)
  double max_boundary_value = 0.0;
  bool passed = false;
};

// Central differences at 20 random points; passes with defects below 1e-6.
SolutionCheck validate_solution(const ManufacturedSolution& s, const PhysicalParams& prm, double T,
                                std::uint64_t seed = 7);

}  // namespace stfem

#endif
