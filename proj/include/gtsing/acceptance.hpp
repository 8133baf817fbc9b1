#pragma once

#include "gtsing/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gtsing {

// Demo base points. Singular: one cluster of equal entries in row n-1, every
// other same-row difference non-integral. Generic: no integral differences.
TableauPoint demo_singular_point(int n);
SingularSpec demo_singular_spec(int n);
TableauPoint demo_generic_point(int n);

struct AcceptanceConfig {
  std::uint64_t seed = 20240601;
  unsigned samples = 200;            // random inputs per side in A3
  unsigned gl3_degree_bound = 4;     // A5, A7
  unsigned gl4_degree_bound = 3;     // A5
  unsigned word_length = 3;          // A4
  unsigned threads = 0;              // 0 = hardware concurrency
};

struct CriterionResult {
  std::string id;
  std::string title;
  bool ok = false;
  std::string summary;
  Json details = Json::object();
  double seconds = 0;
};

CriterionResult run_a1(const AcceptanceConfig& cfg);  // commutator identity
CriterionResult run_a2(const AcceptanceConfig& cfg);  // central characters
CriterionResult run_a3(const AcceptanceConfig& cfg);  // alternating quotients
CriterionResult run_a4(const AcceptanceConfig& cfg);  // invariance and pole order of products
CriterionResult run_a5(const AcceptanceConfig& cfg);  // action formula vs direct evaluation
CriterionResult run_a6(const AcceptanceConfig& cfg);  // module axiom
CriterionResult run_a7(const AcceptanceConfig& cfg);  // cluster size two
CriterionResult run_a8(const AcceptanceConfig& cfg);  // generic degeneration

// All criteria in order; `progress` sees each result as soon as it is done.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& progress = {});

}  // namespace gtsing
