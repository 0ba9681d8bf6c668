#include "ecmoments/builtins.hpp"

#include "ecmoments/error.hpp"

namespace ecm {

namespace {

using P = PolynomialZ;
using P2 = PolynomialZ2;

P T(unsigned e = 1, long coeff = 1) { return P::monomial(coeff, e); }
P k(const BigInt& v) { return P::constant(v); }
P2 TS(long coeff, unsigned et, unsigned es) { return P2::term(coeff, et, es); }

OneParamFamily cubic(const std::string& name, P c3, P c2, P c1, P c0, std::optional<int> rank) {
  return OneParamFamily(name, CubicForm{std::move(c3), std::move(c2), std::move(c1), std::move(c0)},
                        rank);
}

OneParamFamily weier(const std::string& name, P a1, P a2, P a3, P a4, P a6, std::optional<int> rank) {
  return OneParamFamily(
      name, WeierstrassForm{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)},
      rank);
}

OneParamFamily rank6_family() {
  // t^2 + 2t - 8916100448256000000 + 1
  const P q = T(2) + T(1, 2) + k(BigInt("-8916100448255999999"));
  const P a2 = T(1, 2) * k(BigInt("16660111104")) + k(BigInt("811365140824616222208"));
  const P a4 = (k(BigInt("-3206349619200")) * T() + k(BigInt("-26497490347321493520384"))) * q;
  const P a6 = (k(BigInt("4299816960000")) * T() + k(BigInt("343107594345448813363200"))) * q * q;
  return weier("RANK6", {}, a2, {}, a4, a6, 6);
}

std::vector<BuiltinFamily> make_registry() {
  std::vector<BuiltinFamily> r;
  auto one = [&](std::string name, std::string cite, std::string eq, std::optional<int> rank,
                 std::function<Family(const FamilyParams&)> make, FamilyParams defaults = {}) {
    r.push_back({std::move(name), std::move(cite), std::move(eq), rank, std::move(defaults),
                 std::move(make)});
  };

  one("T1R1", "Table 1 row 1", "y^2 = x^3 - x^2 - x + t", 0,
      [](const FamilyParams&) { return cubic("T1R1", k(1), k(-1), k(-1), T(), 0); });
  one("T1R2", "Table 1 row 2", "y^2 = x^3 - t x^2 + (x - 1) t^2", 0,
      [](const FamilyParams&) { return cubic("T1R2", k(1), T(1, -1), T(2), T(2, -1), 0); });
  one("T1R3", "Table 1 row 3", "y^2 = x^3 + t x^2 + t^2", 1,
      [](const FamilyParams&) { return cubic("T1R3", k(1), T(), {}, T(2), 1); });
  one("T1R4", "Table 1 row 4", "y^2 = x^3 + t x^2 + t x + t^2", 1,
      [](const FamilyParams&) { return cubic("T1R4", k(1), T(), T(), T(2), 1); });

  one("T2R1", "Table 2 row 1", "y^2 = x^3 + t x + s x^2", std::nullopt, [](const FamilyParams&) {
    return TwoParamFamily("T2R1", TS(1, 1, 0), {}, TS(1, 0, 1));
  });
  one("T2R2", "Table 2 row 2", "y^2 = x^3 + t^2 x + s t^4", std::nullopt, [](const FamilyParams&) {
    return TwoParamFamily("T2R2", TS(1, 2, 0), TS(1, 4, 1));
  });
  one("T2R3", "Table 2 row 3", "y^2 = x^3 + s x^2 - t^2 x", std::nullopt, [](const FamilyParams&) {
    return TwoParamFamily("T2R3", TS(-1, 2, 0), {}, TS(1, 0, 1));
  });
  one("T2R4", "Table 2 row 4", "y^2 = x^3 + t^2 x^2 + (t^3 - t^2) s x", std::nullopt,
      [](const FamilyParams&) {
        return TwoParamFamily("T2R4", TS(1, 3, 1) - TS(1, 2, 1), {}, TS(1, 2, 0));
      });
  one("T2R5", "Table 2 row 5", "y^2 = x^3 + t^2 x^2 - (s^2 - s) t^2 x", std::nullopt,
      [](const FamilyParams&) {
        return TwoParamFamily("T2R5", TS(-1, 2, 2) + TS(1, 2, 1), {}, TS(1, 2, 0));
      });

  one("S4A", "Closed-form family y^2 = 4x^3 + ax^2 + bx + c + dt", "y^2 = 4x^3 + a x^2 + b x + c + d t",
      std::nullopt,
      [](const FamilyParams& p) {
        return cubic("S4A", k(4), k(p.at("a")), k(p.at("b")), k(p.at("c")) + T(1, p.at("d")),
                     std::nullopt);
      },
      {{"a", 0}, {"b", 1}, {"c", 0}, {"d", 1}});
  one("S4B", "Closed-form family y^2 = 4x^3 + (4m+1)x^2 + n t x",
      "y^2 = 4x^3 + (4m + 1) x^2 + n t x", std::nullopt,
      [](const FamilyParams& p) {
        return cubic("S4B", k(4), k(4 * BigInt(p.at("m")) + 1), T(1, p.at("n")), {}, std::nullopt);
      },
      {{"m", 1}, {"n", 1}});
  one("S4C", "Closed-form family y^2 = x^3 - t^2 x + t^4", "y^2 = x^3 - t^2 x + t^4", std::nullopt,
      [](const FamilyParams&) { return OneParamFamily("S4C", ShortForm{T(2, -1), T(4)}); });

  one("RANK0", "Numerical family a = [1, 1, 1, 1, t]", "[a1,a2,a3,a4,a6] = [1, 1, 1, 1, t]", 0,
      [](const FamilyParams&) { return weier("RANK0", k(1), k(1), k(1), k(1), T(), 0); });
  one("RANK1", "Numerical family a = [1, t, -1, -t-1, 0]", "[a1,a2,a3,a4,a6] = [1, t, -1, -t - 1, 0]", 1,
      [](const FamilyParams&) { return weier("RANK1", k(1), T(), k(-1), T(1, -1) + k(-1), {}, 1); });
  one("RANK2", "Numerical family a = [1, t, -19, -t-1, 0]",
      "[a1,a2,a3,a4,a6] = [1, t, -19, -t - 1, 0]", 2,
      [](const FamilyParams&) { return weier("RANK2", k(1), T(), k(-19), T(1, -1) + k(-1), {}, 2); });
  one("RANK3", "Numerical family a = [0, 5, 0, -16t^2, 64t^2]",
      "[a1,a2,a3,a4,a6] = [0, 5, 0, -16 t^2, 64 t^2]", 3,
      [](const FamilyParams&) { return weier("RANK3", {}, k(5), {}, T(2, -16), T(2, 64), 3); });
  one("RANK6", "Numerical rank 6 family with a2 constant 811365140824616222208",
      "a1 = 0, a2 = 2(16660111104 t) + 811365140824616222208, a3 = 0, "
      "a4 = [2(-1603174809600) t - 26497490347321493520384](t^2 + 2t - 8916100448256000000 + 1), "
      "a6 = [2(2149908480000) t + 343107594345448813363200](t^2 + 2t - 8916100448256000000 + 1)^2",
      6, [](const FamilyParams&) { return rank6_family(); });

  one("GENERIC", "Generic family y^2 = x^3 + t x + 1", "y^2 = x^3 + t x + 1", std::nullopt,
      [](const FamilyParams&) { return OneParamFamily("GENERIC", ShortForm{T(), k(1)}); });
  one("BIRCH", "Birch: all curves y^2 = x^3 + a x + b", "y^2 = x^3 + a x + b over all (a, b)",
      std::nullopt, [](const FamilyParams&) { return BirchFamily{}; });
  return r;
}

}  // namespace

const std::vector<BuiltinFamily>& builtin_families() {
  static const std::vector<BuiltinFamily> registry = make_registry();
  return registry;
}

const BuiltinFamily& find_builtin(std::string_view name) {
  for (const auto& entry : builtin_families()) {
    if (entry.name == name) return entry;
  }
  throw Error(ErrorCode::UnknownFamily, std::string(name));
}

FamilyParams resolve_params(const BuiltinFamily& entry, const FamilyParams& params) {
  FamilyParams out = entry.defaults;
  for (const auto& [key, value] : params) {
    auto it = out.find(key);
    if (it == out.end()) {
      throw Error(ErrorCode::InvalidArgument, entry.name + " has no parameter '" + key + "'");
    }
    it->second = value;
  }
  return out;
}

Family make_builtin(std::string_view name, const FamilyParams& params) {
  const BuiltinFamily& entry = find_builtin(name);
  return entry.make(resolve_params(entry, params));
}

}  // namespace ecm
