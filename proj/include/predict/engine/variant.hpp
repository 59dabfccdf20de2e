#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace predict::engine {

enum class VariantName { full, base, one_nc, one_sc, sc, cp, nv, full_icl, np, oracle, icl };

/// Switches of the preference-inference loop. Named variants pin them:
///
///   name       steps regen cand  dec   val
///   full       3     yes   yes   yes   yes
///   base       1     -     yes   no    no
///   1nc        1     -     no    yes   yes
///   1sc        1     no    yes   yes   yes
///   sc         3     no    yes   yes   yes
///   cp         full without decomposition
///   nv         full without validation
///   full-icl   full flags, agent also sees in-context examples
///   np, oracle, icl do not learn.
struct VariantConfig {
  VariantName name = VariantName::full;
  int max_refinement_steps = 3;
  bool regenerate_candidate_each_step = true;
  bool use_candidate = true;
  bool decompose = true;
  bool validate = true;
  double validation_threshold = 0.25;
  int min_validations = 2;
  int retrieval_k = 5;

  static VariantConfig named(VariantName n);
  // Accepts the CLI spellings (full, base, 1nc, 1sc, sc, cp, nv, full-icl,
  // np, oracle, icl). Throws ConfigError.
  static VariantConfig from_string(std::string_view s);

  std::string id() const;
  bool learns() const;    // runs the refinement phase
  bool uses_icl() const;  // agent prompt carries previous examples
};

std::string_view to_string(VariantName n);
const std::vector<VariantName>& all_variants();

// Per-environment defaults not covered by the variant table: PICK UP needs
// three validations before a component may be dropped.
void apply_env_defaults(VariantConfig& v, std::string_view env);

}  // namespace predict::engine
