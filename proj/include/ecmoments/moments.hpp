#pragma once

// Dirichlet coefficients a_t(p) = -sum_x chi(g_t(x)) and their exact power
// sums over every fiber t mod p (or (t, s) mod p for two parameters).
//
// Bad-reduction fibers are not skipped: a_t(p) is always the Legendre-sum
// value, which is the convention the closed forms are stated under.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ecmoments/family.hpp"
#include "ecmoments/ffield.hpp"

namespace ecm {

inline constexpr int kMaxOrder = 8;

/// Sorted, de-duplicated, every entry in 1..kMaxOrder. Throws InvalidOrder.
std::vector<int> normalize_orders(std::vector<int> orders);

struct MomentRecord {
  Prime prime;
  int parameter_count = 1;
  /// order r -> S_r = sum over fibers of a^r
  std::map<int, BigInt> raw_sums;

  /// Throws OrderMissing.
  const BigInt& raw(int order) const;
  /// p for one parameter, p^2 for two.
  BigInt denominator() const;
};

struct MomentSeries {
  std::string family;
  int parameter_count = 1;
  std::vector<int> orders;
  std::vector<MomentRecord> records;
};

struct SweepOptions {
  unsigned workers = 1;
  /// Largest prime accepted by the O(p^3) two-parameter sweeps.
  std::uint64_t two_param_cap = 211;
};

/// sum_{x mod p} chi(c3 x^3 + c2 x^2 + c1 x + c0), coefficients already in 0..p-1.
std::int64_t cubic_character_sum(const ResidueTable& table, std::uint64_t c3, std::uint64_t c2,
                                 std::uint64_t c1, std::uint64_t c0);

std::int64_t a_coeff(const CubicForm& cf, std::int64_t t, const ResidueTable& table);

/// a_t(p) for t = 0..p-1.
std::vector<std::int64_t> dirichlet_coefficients(const OneParamFamily& fam, const ResidueTable& table);

/// a_{t,s}(p) for one fixed t and s = 0..p-1.
std::vector<std::int64_t> dirichlet_coefficients_row(const TwoParamFamily& fam, std::int64_t t,
                                                     const ResidueTable& table);

MomentRecord moment_sums(const OneParamFamily& fam, const Prime& p, std::span<const int> orders);

/// Throws CapExceeded when p > opts.two_param_cap.
MomentRecord two_param_moment_sums(const TwoParamFamily& fam, const Prime& p,
                                   std::span<const int> orders, const SweepOptions& opts = {});

/// sum over all (a, b) mod p of a_{E(a,b)}(p)^r, r in {1, 2}.
BigInt birch_all_curves_sum(const Prime& p, int r, const SweepOptions& opts = {});
MomentRecord birch_moment_sums(const Prime& p, std::span<const int> orders,
                               const SweepOptions& opts = {});

MomentRecord family_moment_sums(const Family& fam, const Prime& p, std::span<const int> orders,
                                const SweepOptions& opts = {});

/// One record per prime, in the order given. Primes may be evaluated
/// concurrently; the result does not depend on the worker count.
MomentSeries moment_series(const Family& fam, std::span<const Prime> primes,
                           std::span<const int> orders, const SweepOptions& opts = {});

/// Exact sums of a^r for several r; 128-bit fast path with big-integer spill.
class PowerSums {
 public:
  explicit PowerSums(std::span<const int> orders);

  void add(std::int64_t a);
  std::map<int, BigInt> result() const;

 private:
  void spill(int order);
  std::vector<int> orders_;
  int max_order_ = 0;
  __int128 acc_[kMaxOrder + 1] = {};
  BigInt big_[kMaxOrder + 1];
};

BigInt to_bigint(__int128 v);

}  // namespace ecm
