#include "predict/engine/variant.hpp"

#include "predict/core/error.hpp"

namespace predict::engine {

namespace {

struct NameEntry {
  VariantName name;
  std::string_view id;
};

constexpr NameEntry kNames[] = {
    {VariantName::full, "full"},     {VariantName::base, "base"},   {VariantName::one_nc, "1nc"},
    {VariantName::one_sc, "1sc"},    {VariantName::sc, "sc"},       {VariantName::cp, "cp"},
    {VariantName::nv, "nv"},         {VariantName::full_icl, "full-icl"}, {VariantName::np, "np"},
    {VariantName::oracle, "oracle"}, {VariantName::icl, "icl"},
};

}  // namespace

std::string_view to_string(VariantName n) {
  for (const auto& e : kNames) {
    if (e.name == n) return e.id;
  }
  return "full";
}

const std::vector<VariantName>& all_variants() {
  static const std::vector<VariantName> v = [] {
    std::vector<VariantName> out;
    for (const auto& e : kNames) out.push_back(e.name);
    return out;
  }();
  return v;
}

VariantConfig VariantConfig::named(VariantName n) {
  VariantConfig v;
  v.name = n;
  switch (n) {
    case VariantName::full:
    case VariantName::full_icl:
      break;
    case VariantName::base:
      v.max_refinement_steps = 1;
      v.regenerate_candidate_each_step = false;
      v.decompose = false;
      v.validate = false;
      break;
    case VariantName::one_nc:
      v.max_refinement_steps = 1;
      v.regenerate_candidate_each_step = false;
      v.use_candidate = false;
      break;
    case VariantName::one_sc:
      v.max_refinement_steps = 1;
      v.regenerate_candidate_each_step = false;
      break;
    case VariantName::sc:
      v.regenerate_candidate_each_step = false;
      break;
    case VariantName::cp:
      v.decompose = false;
      break;
    case VariantName::nv:
      v.validate = false;
      break;
    case VariantName::np:
    case VariantName::oracle:
    case VariantName::icl:
      v.max_refinement_steps = 0;
      v.regenerate_candidate_each_step = false;
      v.use_candidate = false;
      v.decompose = false;
      v.validate = false;
      break;
  }
  return v;
}

VariantConfig VariantConfig::from_string(std::string_view s) {
  for (const auto& e : kNames) {
    if (e.id == s) return named(e.name);
  }
  throw ConfigError("unknown variant '" + std::string(s) + "'");
}

std::string VariantConfig::id() const { return std::string(to_string(name)); }

bool VariantConfig::learns() const {
  return name != VariantName::np && name != VariantName::oracle && name != VariantName::icl;
}

bool VariantConfig::uses_icl() const { return name == VariantName::icl || name == VariantName::full_icl; }

void apply_env_defaults(VariantConfig& v, std::string_view env) {
  if (env == "pickup") v.min_validations = 3;
}

}  // namespace predict::engine
