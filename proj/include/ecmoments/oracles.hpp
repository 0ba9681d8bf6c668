#pragma once

// Closed-form predictions of raw moment sums S_r(p), and a harness that
// checks them against the brute-force sweep.

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ecmoments/builtins.hpp"
#include "ecmoments/moments.hpp"

namespace ecm {

/// 1 iff p = a mod b.
int delta_indicator(std::int64_t a, std::int64_t b, const Prime& p);

/// sum_{x mod p} chi(f(x)) for f = c3 x^3 + c2 x^2 + c1 x + c0,
/// coefficients given low to high: {c0, c1, c2, c3}.
std::int64_t residual_cubic_sum(const std::array<std::int64_t, 4>& coeffs, const Prime& p);

struct OracleFormula {
  std::string name;
  std::string family;  ///< builtin family name
  int order = 0;
  std::string citation;
  std::string formula;
  /// Normalization the prediction is committed at; always the raw sum S_r.
  std::string normalization = "raw";
  /// Primes the closed form is not claimed for, in words.
  std::string validity;
  std::function<BigInt(const Prime&, const FamilyParams&)> evaluate;
  std::function<bool(const Prime&, const FamilyParams&)> valid;
};

const std::vector<OracleFormula>& oracle_registry();

/// Throws UnknownOracle.
const OracleFormula& find_oracle(std::string_view name);

/// Oracles registered against a builtin family name.
std::vector<std::string> oracles_for_family(std::string_view family);

/// Throws UnknownOracle or OutsideValidity.
BigInt oracle_value(std::string_view name, const Prime& p, const FamilyParams& params = {});

struct VerificationRow {
  Prime prime;
  BigInt predicted;
  BigInt computed;
  bool equal() const { return predicted == computed; }
};

struct VerificationReport {
  std::string oracle;
  std::string family;
  int order = 0;
  FamilyParams params;
  std::vector<VerificationRow> rows;
  /// Primes skipped because the formula's validity predicate excludes them.
  std::vector<Prime> skipped;
  bool all_equal = true;

  const VerificationRow* first_mismatch() const;
};

VerificationReport verify_oracle(std::string_view name, std::span<const Prime> primes,
                                 const FamilyParams& params = {}, const SweepOptions& opts = {});

}  // namespace ecm
