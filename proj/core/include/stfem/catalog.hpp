#ifndef STFEM_CATALOG_HPP
#define STFEM_CATALOG_HPP

#include <string>
#include <vector>

#include "stfem/analysis.hpp"
#include "stfem/methods.hpp"

namespace stfem {

// Theoretical order of one error norm: h-order p + h_offset, tau-order q + tau_offset.
struct RateEntry {
  NormSpec norm;
  int h_offset = 1;
  int tau_offset = 1;
};

struct CatalogEntry {
  Scheme scheme;
  std::string origin;
  std::string trial_space;
  std::string test_space;
  std::string form;
  std::string initial_condition;
  std::string cfl;
  std::vector<RateEntry> rates;
};

struct AcceptanceCriterion {
  std::string id;
  std::string title;
  std::string tolerance;
};

const std::vector<CatalogEntry>& method_catalog();
const CatalogEntry& catalog_entry(Scheme s);
// Rate entry for a norm of a scheme; throws ConfigInvalid when the catalog lists none.
const RateEntry& catalog_rate(Scheme s, const NormSpec& norm);

const std::vector<AcceptanceCriterion>& acceptance_criteria();

std::string render_catalog();

}  // namespace stfem

#endif
