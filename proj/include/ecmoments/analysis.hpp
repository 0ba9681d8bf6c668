#pragma once

// Statistics over moment series: main-term subtraction and normalization,
// grouped sign statistics, sym_k sums, odd-moment coefficients and the
// first-moment rank estimator.

#include <optional>
#include <string>
#include <vector>

#include "ecmoments/moments.hpp"

namespace ecm {

using Rational = mpq_class;

/// binom(2n, n) / (n + 1), exact, n <= 30.
BigInt catalan(unsigned n);

/// Leading term coefficient * p^exponent of the raw sum S_r. Even r = 2m:
/// C_m * p^(m + k) with k the parameter count (k = 2 is a convention for
/// two-parameter families, which have no proved analogue). Odd r: zero.
struct MainTerm {
  BigInt coefficient;
  int exponent = 0;
  BigInt at(const Prime& p) const;
};
MainTerm main_term(int order, int parameter_count = 1);

/// Normalizing exponents are carried doubled so 3/2 is representable: a
/// value of 3 means p^{3/2}. The exponent applies after dividing by the
/// extra p^(k-1) fibers of a k-parameter family.
struct NormalizerRequest {
  enum class Kind { Auto, Low, High, Explicit };
  Kind kind = Kind::Auto;
  int twice_exponent = 0;

  /// "auto", "low", "high", or a power name such as "p", "p32", "p2", "p52".
  static NormalizerRequest parse(const std::string& text);
};

/// "p32" style suffix for a doubled exponent.
std::string exponent_suffix(int twice_exponent);
/// "p^{3/2}" style label.
std::string exponent_label(int twice_exponent);

struct BiasValue {
  double value = 0.0;
  /// Present when the normalizing exponent is an integer.
  std::optional<Rational> exact;
};

struct AutoDecision {
  bool automatic = false;
  int chosen_twice_exponent = 0;
  double first_quartile_max = 0.0;
  double last_quartile_max = 0.0;
  double ratio_threshold = 3.0;
  double absolute_threshold = 25.0;
  std::string reason;
};

struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  std::string rule;
};

struct GroupStats {
  std::size_t group_size = 0;
  std::vector<double> means;
  std::vector<int> signs;
  std::size_t n_pos = 0, n_neg = 0, n_zero = 0;
  std::size_t dropped = 0;
  /// Two-sided binomial tail for n_pos out of n_pos + n_neg.
  double binomial_tail = 1.0;
  Histogram histogram;
  /// Set when the series is shorter than one group.
  bool no_groups = false;
};

struct BiasReport {
  std::string family;
  int order = 2;
  int parameter_count = 1;
  std::vector<Prime> primes;
  std::vector<BigInt> raw, main, residual;
  int low_twice_exponent = 0;
  int high_twice_exponent = 0;
  std::vector<BiasValue> bias_low, bias_high;
  AutoDecision decision;
  /// Means of the per-prime values; empty when the series is empty.
  std::optional<double> mean_low, mean_high;
  std::optional<GroupStats> groups;

  int chosen_twice_exponent() const { return decision.chosen_twice_exponent; }
  const std::vector<BiasValue>& chosen() const;
  std::optional<double> mean() const;
};

/// Throws OrderMissing, or InvalidOrder for odd orders.
BiasReport bias_series(const MomentSeries& series, int order, const NormalizerRequest& normalizer = {});

/// Fills report.groups from the chosen normalization. A trailing partial
/// group is dropped.
BiasReport group_stats(BiasReport report, std::size_t group_size);

/// 2 * P(X >= max(n_pos, n - n_pos)) for X ~ Binomial(n, 1/2), clamped to 1.
double binom_sign_test(std::size_t n_pos, std::size_t n);

/// Freedman-Diaconis bin width with at least 10 bins.
Histogram freedman_diaconis_histogram(const std::vector<double>& values);

struct OddCoefficientSeries {
  int order = 1;
  std::vector<Prime> primes;
  std::vector<Rational> exact;
  std::vector<double> values;
  std::optional<double> mean;
};

/// c_r(p) = S_r / p^{(r+1)/2}, so c_1 = S_1 / p and c_3 = S_3 / p^2
/// (divided by a further p^(k-1) for k-parameter families).
OddCoefficientSeries odd_coefficient_series(const MomentSeries& series, int order);

/// Chebyshev recursion U_0 = 1, U_1 = x, U_k = x U_{k-1} - U_{k-2}; U_k(2 cos t) = sym_k(t).
double sym_polynomial(int k, double x);

struct SymSum {
  int k = 0;
  double sum = 0.0;
  /// sum / sqrt(p)
  double normalized = 0.0;
};

/// sum_t U_k(a_t(p) / sqrt(p)) for each k in ks (1..6).
std::vector<SymSum> sym_sums(const OneParamFamily& fam, const Prime& p, const std::vector<int>& ks);
SymSum sym_sum(const OneParamFamily& fam, const Prime& p, int k);

/// (1/x) sum_{p <= x} (-S_1(p)/p) log p with x the largest prime in the series.
double rank_estimate(const MomentSeries& series);
double rank_estimate(const OneParamFamily& fam, std::span<const Prime> primes,
                     const SweepOptions& opts = {});

struct MichelResidualSeries {
  std::vector<Prime> primes;
  std::vector<double> residual;      ///< (S_2 - p^2) / p^{3/2}
  std::vector<double> running_mean;
  std::vector<double> reference;     ///< 1 / sqrt(N)
};

MichelResidualSeries michel_residual_series(const MomentSeries& series);

/// Neumaier-compensated mean; empty input gives nullopt.
std::optional<double> compensated_mean(const std::vector<double>& values);

}  // namespace ecm
