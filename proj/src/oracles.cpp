#include "ecmoments/oracles.hpp"

#include "ecmoments/error.hpp"

namespace ecm {

int delta_indicator(std::int64_t a, std::int64_t b, const Prime& p) {
  if (b < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be at least 2");
  const std::int64_t r = static_cast<std::int64_t>(p.value() % static_cast<std::uint64_t>(b));
  std::int64_t target = a % b;
  if (target < 0) target += b;
  return r == target ? 1 : 0;
}

namespace {

std::int64_t residual_sum(const std::array<std::int64_t, 4>& c, const ResidueTable& table) {
  const Prime& p = table.prime();
  return cubic_character_sum(table, mod_reduce(c[3], p), mod_reduce(c[2], p), mod_reduce(c[1], p),
                             mod_reduce(c[0], p));
}

}  // namespace

std::int64_t residual_cubic_sum(const std::array<std::int64_t, 4>& coeffs, const Prime& p) {
  return residual_sum(coeffs, ResidueTable(p));
}

namespace {

BigInt big(const Prime& p) { return BigInt(static_cast<unsigned long>(p.value())); }
BigInt sq(const BigInt& v) { return v * v; }
BigInt cube(const BigInt& v) { return v * v * v; }
int chi(std::int64_t a, const Prime& p) { return legendre(a, p); }

bool always(const Prime&, const FamilyParams&) { return true; }

// sum_s (sum_x chi(x^3 - (s^2 - s) x))^2, the unevaluated cross-sum in
// Table 2 row 5, computed as printed.
BigInt t2r5_cross_sum(const Prime& p) {
  const ResidueTable table(p);
  BigInt total = 0;
  for (std::uint64_t s = 0; s < p.value(); ++s) {
    const std::uint64_t k = mul_mod(s, (s + p.value() - 1) % p.value(), p.value());
    const std::int64_t inner = cubic_character_sum(table, 1, 0, (p.value() - k) % p.value(), 0);
    total += sq(BigInt(static_cast<long>(inner)));
  }
  return total;
}

std::vector<OracleFormula> make_registry() {
  std::vector<OracleFormula> r;
  auto add = [&](std::string name, std::string family, int order, std::string citation,
                 std::string formula, auto eval, std::string validity = "p >= 5",
                 std::function<bool(const Prime&, const FamilyParams&)> valid = always) {
    r.push_back({std::move(name), std::move(family), order, std::move(citation), std::move(formula),
                 "raw", std::move(validity),
                 [eval](const Prime& p, const FamilyParams& prm) -> BigInt { return eval(p, prm); },
                 std::move(valid)});
  };

  // --- Table 1 ---------------------------------------------------------------
  add("T1R1_S1", "T1R1", 1, "Table 1 row 1", "0",
      [](const Prime&, const FamilyParams&) { return BigInt(0); });
  add("T1R1_S2", "T1R1", 2, "Table 1 row 1", "p^2 - 2p - chi(-3) p",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        return BigInt(sq(P) - 2 * P - chi(-3, p) * P);
      });
  add("T1R2_S1", "T1R2", 1, "Table 1 row 2", "-2p (delta_{1,12} - delta_{7,12})",
      [](const Prime& p, const FamilyParams&) {
        return BigInt(-2 * big(p) * (delta_indicator(1, 12, p) - delta_indicator(7, 12, p)));
      });
  add("T1R2_S2", "T1R2", 2, "Table 1 row 2",
      "p^2 - 2p delta_{2,3} - 2p chi(-3) - p chi(-2) - (sum_x chi(x^3 - x^2 + x))^2",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        const BigInt res(static_cast<long>(residual_cubic_sum({0, 1, -1, 1}, p)));
        return BigInt(sq(P) - 2 * P * delta_indicator(2, 3, p) - 2 * P * chi(-3, p) -
                      P * chi(-2, p) - sq(res));
      });
  add("T1R3_S1", "T1R3", 1, "Table 1 row 3", "-p",
      [](const Prime& p, const FamilyParams&) { return BigInt(-big(p)); });
  add("T1R3_S2", "T1R3", 2, "Table 1 row 3", "p^2 - 2p - chi(-3) p - 1",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        return BigInt(sq(P) - 2 * P - chi(-3, p) * P - 1);
      });
  add("T1R4_S1", "T1R4", 1, "Table 1 row 4", "-p",
      [](const Prime& p, const FamilyParams&) { return BigInt(-big(p)); });
  add("T1R4_S2", "T1R4", 2, "Table 1 row 4", "p^2 - p - 1 - 2p delta_{1,4}",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        return BigInt(sq(P) - P - 1 - 2 * P * delta_indicator(1, 4, p));
      });

  // --- Table 2 (raw sums over p^2 fibers) ------------------------------------
  add("T2R1_S1", "T2R1", 1, "Table 2 row 1", "0",
      [](const Prime&, const FamilyParams&) { return BigInt(0); });
  add("T2R1_S2", "T2R1", 2, "Table 2 row 1", "p^3 - 2p^2 + p",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        return BigInt(cube(P) - 2 * sq(P) + P);
      });
  add("T2R2_S1", "T2R2", 1, "Table 2 row 2", "0",
      [](const Prime&, const FamilyParams&) { return BigInt(0); });
  add("T2R2_S2", "T2R2", 2, "Table 2 row 2", "p^3 - 2p^2 + p - 2(p^2 - p) chi(-3)",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        return BigInt(cube(P) - 2 * sq(P) + P - 2 * (sq(P) - P) * chi(-3, p));
      });
  add("T2R3_S1", "T2R3", 1, "Table 2 row 3", "0",
      [](const Prime&, const FamilyParams&) { return BigInt(0); });
  add("T2R3_S2", "T2R3", 2, "Table 2 row 3", "p^3 - p^2 - delta_{1,4} (2p^2 - 2p)",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        return BigInt(cube(P) - sq(P) - delta_indicator(1, 4, p) * (2 * sq(P) - 2 * P));
      });
  // FIXME: the printed first-moment cells of rows 4 and 5 disagree with the
  // sweep (it gives +p and +2p); kept as printed so the mismatch stays visible.
  add("T2R4_S1", "T2R4", 1, "Table 2 row 4", "-p^2",
      [](const Prime& p, const FamilyParams&) { return BigInt(-sq(big(p))); });
  add("T2R4_S2", "T2R4", 2, "Table 2 row 4", "p^3 - 3p^2 + 3p - delta_{1,4} (2p^2 - 4p)",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        return BigInt(cube(P) - 3 * sq(P) + 3 * P - delta_indicator(1, 4, p) * (2 * sq(P) - 4 * P));
      });
  add("T2R5_S1", "T2R5", 1, "Table 2 row 5", "-2p^2",
      [](const Prime& p, const FamilyParams&) { return BigInt(-2 * sq(big(p))); });
  add("T2R5_S2", "T2R5", 2, "Table 2 row 5",
      "p^3 - 3p^2 + 2p + delta_{1,4} (2p - sum_s sum_{x,y} chi(x^3 - (s^2-s)x) chi(y^3 - (s^2-s)y))",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        BigInt out = cube(P) - 3 * sq(P) + 2 * P;
        if (delta_indicator(1, 4, p)) out += 2 * P - t2r5_cross_sum(p);
        return out;
      });

  // --- Birch: all curves -----------------------------------------------------
  add("BIRCH_S1", "BIRCH", 1, "Birch all-curves first moment", "0",
      [](const Prime&, const FamilyParams&) { return BigInt(0); });
  add("BIRCH_S2", "BIRCH", 2, "Birch's theorem", "p^3 - p^2",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        return BigInt(cube(P) - sq(P));
      });

  // --- closed-form one-parameter families ------------------------------------
  auto s4a_valid = [](const Prime& p, const FamilyParams& prm) {
    return mod_reduce(prm.at("d"), p) != 0;
  };
  add("S4A_S1", "S4A", 1, "Closed-form family y^2 = 4x^3 + ax^2 + bx + c + dt", "0",
      [](const Prime&, const FamilyParams&) { return BigInt(0); }, "p >= 5, p does not divide d",
      s4a_valid);
  add("S4A_S2", "S4A", 2, "Closed-form family y^2 = 4x^3 + ax^2 + bx + c + dt",
      "p^2 - p - p chi(-48) - p chi(a^2 - 12b) if p does not divide a^2 - 12b, "
      "else p^2 - p + p(p - 1) chi(-48)",
      [](const Prime& p, const FamilyParams& prm) {
        const BigInt P = big(p);
        const BigInt a(static_cast<long>(prm.at("a"))), b(static_cast<long>(prm.at("b")));
        const BigInt disc = a * a - 12 * b;
        if (mod_reduce(disc, p) != 0) {
          return BigInt(sq(P) - P - P * chi(-48, p) - P * legendre(disc, p));
        }
        return BigInt(sq(P) - P + P * (P - 1) * chi(-48, p));
      },
      "p >= 5, p does not divide d", s4a_valid);

  auto s4b_valid = [](const Prime& p, const FamilyParams& prm) {
    return mod_reduce(prm.at("n"), p) != 0 &&
           mod_reduce(4 * BigInt(static_cast<long>(prm.at("m"))) + 1, p) != 0;
  };
  add("S4B_S1", "S4B", 1, "Closed-form family y^2 = 4x^3 + (4m+1)x^2 + n t x", "0",
      [](const Prime&, const FamilyParams&) { return BigInt(0); },
      "p >= 5, p does not divide n or 4m + 1", s4b_valid);
  add("S4B_S2", "S4B", 2, "Closed-form family y^2 = 4x^3 + (4m+1)x^2 + n t x",
      "p^2 - 3p if p = 1 mod 4, p^2 - p if p = 3 mod 4",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        return delta_indicator(1, 4, p) ? BigInt(sq(P) - 3 * P) : BigInt(sq(P) - P);
      },
      "p >= 5, p does not divide n or 4m + 1", s4b_valid);

  add("S4C_S1", "S4C", 1, "Closed-form family y^2 = x^3 - t^2 x + t^4", "-2p",
      [](const Prime& p, const FamilyParams&) { return BigInt(-2 * big(p)); });
  add("S4C_S2", "S4C", 2, "Closed-form family y^2 = x^3 - t^2 x + t^4",
      "p^2 - p - p chi(-3) - p chi(12) - (sum_x chi(x^3 - x))^2",
      [](const Prime& p, const FamilyParams&) {
        const BigInt P = big(p);
        const BigInt res(static_cast<long>(residual_cubic_sum({0, -1, 0, 1}, p)));
        return BigInt(sq(P) - P - P * chi(-3, p) - P * chi(12, p) - sq(res));
      });
  return r;
}

}  // namespace

const std::vector<OracleFormula>& oracle_registry() {
  static const std::vector<OracleFormula> registry = make_registry();
  return registry;
}

const OracleFormula& find_oracle(std::string_view name) {
  for (const auto& o : oracle_registry()) {
    if (o.name == name) return o;
  }
  throw Error(ErrorCode::UnknownOracle, std::string(name));
}

std::vector<std::string> oracles_for_family(std::string_view family) {
  std::vector<std::string> out;
  for (const auto& o : oracle_registry()) {
    if (o.family == family) out.push_back(o.name);
  }
  return out;
}

BigInt oracle_value(std::string_view name, const Prime& p, const FamilyParams& params) {
  const OracleFormula& o = find_oracle(name);
  const FamilyParams prm = resolve_params(find_builtin(o.family), params);
  if (!o.valid(p, prm)) {
    throw Error(ErrorCode::OutsideValidity,
                o.name + " is not claimed at p = " + std::to_string(p.value()) + " (" + o.validity + ")");
  }
  return o.evaluate(p, prm);
}

const VerificationRow* VerificationReport::first_mismatch() const {
  for (const auto& row : rows) {
    if (!row.equal()) return &row;
  }
  return nullptr;
}

VerificationReport verify_oracle(std::string_view name, std::span<const Prime> primes,
                                 const FamilyParams& params, const SweepOptions& opts) {
  const OracleFormula& o = find_oracle(name);
  VerificationReport report;
  report.oracle = o.name;
  report.family = o.family;
  report.order = o.order;
  report.params = resolve_params(find_builtin(o.family), params);

  std::vector<Prime> used;
  for (const Prime& p : primes) {
    (o.valid(p, report.params) ? used : report.skipped).push_back(p);
  }
  const Family fam = make_builtin(o.family, report.params);
  const int orders[] = {o.order};
  const MomentSeries series = moment_series(fam, used, orders, opts);
  for (std::size_t i = 0; i < used.size(); ++i) {
    VerificationRow row{used[i], o.evaluate(used[i], report.params), series.records[i].raw(o.order)};
    report.all_equal = report.all_equal && row.equal();
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace ecm
