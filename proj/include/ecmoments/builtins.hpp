#pragma once

// Registry of the built-in families, keyed by name.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ecmoments/family.hpp"

namespace ecm {

/// Free integer parameters of a parameterized family (e.g. a, b, c, d).
using FamilyParams = std::map<std::string, std::int64_t>;

struct BuiltinFamily {
  std::string name;
  std::string citation;
  std::string equation;
  std::optional<int> declared_rank;
  FamilyParams defaults;
  std::function<Family(const FamilyParams&)> make;
};

const std::vector<BuiltinFamily>& builtin_families();

/// Throws UnknownFamily.
const BuiltinFamily& find_builtin(std::string_view name);

/// Merges params over the defaults. Throws InvalidArgument for a key the
/// family does not take.
FamilyParams resolve_params(const BuiltinFamily& entry, const FamilyParams& params);

Family make_builtin(std::string_view name, const FamilyParams& params = {});

}  // namespace ecm
