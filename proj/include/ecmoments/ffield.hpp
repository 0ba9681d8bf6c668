#pragma once

// Prime-field primitives: primality, Legendre symbols, residue tables.
//
// Every prime handled by this library is >= 5. The closed forms this code
// checks are all stated for p > 3, so 2 and 3 are rejected when a Prime is
// constructed rather than special-cased downstream.

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace ecm {

using BigInt = mpz_class;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

class Prime {
 public:
  /// Throws Error(InvalidPrime) unless value is a prime >= 5.
  explicit Prime(std::uint64_t value);

  std::uint64_t value() const noexcept { return value_; }
  operator std::uint64_t() const noexcept { return value_; }

  friend auto operator<=>(const Prime&, const Prime&) = default;

 private:
  std::uint64_t value_;
};

std::uint64_t mod_reduce(std::int64_t a, const Prime& p);
std::uint64_t mod_reduce(const BigInt& a, const Prime& p);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Legendre symbol (a/p) in {-1, 0, 1}; any sign or magnitude of a.
int legendre(std::int64_t a, const Prime& p);
int legendre(const BigInt& a, const Prime& p);

/// Inverse of a modulo p in 1..p-1. Throws Error(ZeroInverse) when p | a.
std::uint64_t mod_inverse(std::int64_t a, const Prime& p);

/// The first `count` primes >= min, ascending. min below 5 is raised to 5.
std::vector<Prime> primes_from(std::uint64_t min, std::size_t count);

/// All primes in [lo, hi] that are >= 5, ascending.
std::vector<Prime> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// chi[x] = (x/p) for x in 0..p-1. Immutable once built; share freely
/// between threads.
class ResidueTable {
 public:
  explicit ResidueTable(const Prime& p);

  const Prime& prime() const noexcept { return prime_; }
  int operator[](std::uint64_t x) const noexcept { return chi_[x]; }
  std::span<const std::int8_t> values() const noexcept { return chi_; }
  const std::int8_t* data() const noexcept { return chi_.data(); }

  /// chi of a mod p for an arbitrary signed argument.
  int at(std::int64_t a) const noexcept;

 private:
  Prime prime_;
  std::vector<std::int8_t> chi_;
};

}  // namespace ecm
