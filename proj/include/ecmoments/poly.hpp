#pragma once

// Exact integer polynomials in one (T) and two (T, S) variables.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecmoments/ffield.hpp"

namespace ecm {

/// Dense univariate polynomial over Z; index = exponent of T.
/// The highest stored coefficient is nonzero; zero is the empty list.
class PolynomialZ {
 public:
  PolynomialZ() = default;
  explicit PolynomialZ(std::vector<BigInt> coeffs);
  PolynomialZ(std::initializer_list<long> coeffs);

  static PolynomialZ constant(const BigInt& c);
  static PolynomialZ monomial(const BigInt& c, unsigned exponent);
  static PolynomialZ variable() { return monomial(1, 1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  /// Coefficient of T^i; zero beyond the degree.
  BigInt coeff(std::size_t i) const;
  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }

  PolynomialZ& operator+=(const PolynomialZ& rhs);
  PolynomialZ& operator-=(const PolynomialZ& rhs);
  PolynomialZ& operator*=(const PolynomialZ& rhs);
  friend PolynomialZ operator+(PolynomialZ lhs, const PolynomialZ& rhs) { return lhs += rhs; }
  friend PolynomialZ operator-(PolynomialZ lhs, const PolynomialZ& rhs) { return lhs -= rhs; }
  friend PolynomialZ operator*(const PolynomialZ& lhs, const PolynomialZ& rhs);
  friend PolynomialZ operator*(const BigInt& c, const PolynomialZ& f);
  PolynomialZ operator-() const;
  friend bool operator==(const PolynomialZ&, const PolynomialZ&) = default;

  PolynomialZ pow(unsigned exponent) const;
  /// f(T + shift).
  PolynomialZ shifted(const BigInt& shift) const;

  BigInt eval(const BigInt& t) const;
  std::uint64_t eval_mod(std::int64_t t, const Prime& p) const;
  std::uint64_t eval_mod(const BigInt& t, const Prime& p) const;
  /// Coefficients reduced into 0..p-1, for repeated evaluation in sweeps.
  std::vector<std::uint64_t> reduce_mod(const Prime& p) const;

  /// Human-readable form such as "2*T^3 - T + 5".
  std::string to_string(char var = 'T') const;

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

/// Horner evaluation of coefficients already reduced mod p.
std::uint64_t horner_mod(std::span<const std::uint64_t> coeffs, std::uint64_t t, std::uint64_t p);

/// ord_{T=0} of T^12 * delta(1/T), i.e. 12 - deg(delta).
/// Throws ZeroPolynomial for delta = 0 and DegreeTooLarge above degree 12.
int ord_at_zero_reversed(const PolynomialZ& delta);

/// Sparse bivariate polynomial over Z in T and S, keyed by (exp_t, exp_s).
/// std::map keeps the canonical (exp_t, exp_s) order; zero terms are never stored.
class PolynomialZ2 {
 public:
  using Exponents = std::pair<unsigned, unsigned>;

  PolynomialZ2() = default;
  PolynomialZ2(std::initializer_list<std::pair<const Exponents, BigInt>> terms);
  /// Lift a univariate polynomial in T.
  static PolynomialZ2 from_t(const PolynomialZ& f);
  static PolynomialZ2 term(const BigInt& c, unsigned exp_t, unsigned exp_s);

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Exponents, BigInt>& terms() const noexcept { return terms_; }
  unsigned degree_t() const noexcept;
  unsigned degree_s() const noexcept;

  PolynomialZ2& operator+=(const PolynomialZ2& rhs);
  PolynomialZ2& operator-=(const PolynomialZ2& rhs);
  friend PolynomialZ2 operator+(PolynomialZ2 lhs, const PolynomialZ2& rhs) { return lhs += rhs; }
  friend PolynomialZ2 operator-(PolynomialZ2 lhs, const PolynomialZ2& rhs) { return lhs -= rhs; }
  friend PolynomialZ2 operator*(const PolynomialZ2& lhs, const PolynomialZ2& rhs);
  friend bool operator==(const PolynomialZ2&, const PolynomialZ2&) = default;
  PolynomialZ2 pow(unsigned exponent) const;

  std::uint64_t eval2_mod(std::int64_t t, std::int64_t s, const Prime& p) const;

  /// Collect as a polynomial in S whose coefficients are polynomials in T
  /// reduced mod p; used by the two-parameter sweep.
  std::vector<std::vector<std::uint64_t>> reduce_mod_by_s(const Prime& p) const;

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const BigInt& c);
  std::map<Exponents, BigInt> terms_;
};

}  // namespace ecm
