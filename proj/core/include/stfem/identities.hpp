#ifndef STFEM_IDENTITIES_HPP
#define STFEM_IDENTITIES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace stfem {

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  double worst = 0.0;  // largest normalized violation (or the measured quantity for bounds)
  std::string detail;
};

inline constexpr std::uint64_t kDefaultSeed = 20240607;

CheckResult check_legendre_orthogonality(std::uint64_t seed = kDefaultSeed);
CheckResult check_radau_exactness();
CheckResult check_weight_identities(std::uint64_t seed = kDefaultSeed);
CheckResult check_projection_kernel(std::uint64_t seed = kDefaultSeed);
CheckResult check_left_thomee_kernel(std::uint64_t seed = kDefaultSeed);
CheckResult check_left_thomee_of_legendre(std::uint64_t seed = kDefaultSeed);
CheckResult check_reconstruction_energy(std::uint64_t seed = kDefaultSeed);
CheckResult check_thomee_chain(std::uint64_t seed = kDefaultSeed);
CheckResult check_inverse_estimate(std::uint64_t seed = kDefaultSeed);
CheckResult check_walkington_trace(std::uint64_t seed = kDefaultSeed);
CheckResult check_french_peterson_reduction();
CheckResult check_energy_bounds();
CheckResult check_pi_stability(std::uint64_t seed = kDefaultSeed);
CheckResult check_radau_lebesgue();

// Criteria 1-12 followed by the auxiliary stability checks.
std::vector<CheckResult> run_identity_suite(std::uint64_t seed = kDefaultSeed);

}  // namespace stfem

#endif
