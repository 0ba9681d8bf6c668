#include "ecmoments/ffield.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <string>

#include "ecmoments/error.hpp"

namespace ecm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::AllFibersSingular: return "AllFibersSingular";
    case ErrorCode::NotConvertible: return "NotConvertible";
    case ErrorCode::DegenerateFamily: return "DegenerateFamily";
    case ErrorCode::OrderMissing: return "OrderMissing";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::UnknownOracle: return "UnknownOracle";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::OutsideValidity: return "OutsideValidity";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::ResourceError: return "ResourceError";
  }
  return "Unknown";
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t q : kSmall) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is exact for n < 3.3e24, so for all 64-bit n.
  for (std::uint64_t a : kSmall) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t value) : value_(value) {
  if (value < 5) {
    throw Error(ErrorCode::InvalidPrime, std::to_string(value) + " is below 5");
  }
  if (value > (std::uint64_t{1} << 63)) {
    throw Error(ErrorCode::InvalidPrime, std::to_string(value) + " exceeds 2^63");
  }
  if (!is_prime_u64(value)) {
    throw Error(ErrorCode::InvalidPrime, std::to_string(value) + " is not prime");
  }
}

std::uint64_t mod_reduce(std::int64_t a, const Prime& p) {
  const auto m = static_cast<std::int64_t>(p.value());
  std::int64_t r = a % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mod_reduce(const BigInt& a, const Prime& p) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p.value());
  return r.get_ui();
}

namespace {

// Binary Jacobi symbol (a/n) for odd n, 0 <= a < n.
int jacobi(std::uint64_t a, std::uint64_t n) {
  int sign = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::uint64_t r = n & 7;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) sign = -sign;
    a %= n;
  }
  return n == 1 ? sign : 0;
}

}  // namespace

int legendre(std::int64_t a, const Prime& p) {
  return jacobi(mod_reduce(a, p), p.value());
}

int legendre(const BigInt& a, const Prime& p) {
  return jacobi(mod_reduce(a, p), p.value());
}

std::uint64_t mod_inverse(std::int64_t a, const Prime& p) {
  const std::uint64_t r = mod_reduce(a, p);
  if (r == 0) {
    throw Error(ErrorCode::ZeroInverse,
                std::to_string(a) + " is divisible by " + std::to_string(p.value()));
  }
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 old_r = r, cur_r = p.value();
  __int128 old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    const __int128 q = old_r / cur_r;
    std::swap(old_r, cur_r);
    cur_r -= q * old_r;
    std::swap(old_s, cur_s);
    cur_s -= q * old_s;
  }
  __int128 inv = old_s % static_cast<__int128>(p.value());
  if (inv < 0) inv += p.value();
  return static_cast<std::uint64_t>(inv);
}

std::vector<Prime> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  lo = std::max<std::uint64_t>(lo, 5);
  std::vector<Prime> out;
  if (hi < lo) return out;

  // Segmented sieve over [lo, hi] using base primes up to sqrt(hi).
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(hi))) + 1;
  std::vector<bool> small(root + 1, true);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
  }
  const std::uint64_t span = hi - lo + 1;
  std::vector<bool> composite(span, false);
  for (std::uint64_t q : base) {
    std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
    for (std::uint64_t j = start; j <= hi; j += q) composite[j - lo] = true;
  }
  for (std::uint64_t i = 0; i < span; ++i) {
    if (!composite[i]) out.emplace_back(lo + i);
  }
  return out;
}

std::vector<Prime> primes_from(std::uint64_t min, std::size_t count) {
  min = std::max<std::uint64_t>(min, 5);
  std::vector<Prime> out;
  out.reserve(count);
  std::uint64_t lo = min;
  // Window sized from the prime number theorem, then extended as needed.
  std::uint64_t width = 64 + static_cast<std::uint64_t>(
                                 static_cast<double>(count) *
                                 (std::log(static_cast<double>(min) + count + 16) + 2.0));
  while (out.size() < count) {
    const std::uint64_t hi = lo + width;
    for (const Prime& p : primes_in_range(lo, hi)) {
      if (out.size() == count) break;
      out.push_back(p);
    }
    lo = hi + 1;
  }
  return out;
}

ResidueTable::ResidueTable(const Prime& p) : prime_(p) {
  const std::uint64_t n = p.value();
  if (n > (std::uint64_t{1} << 36)) {
    throw Error(ErrorCode::ResourceError,
                "residue table for p = " + std::to_string(n) + " is too large");
  }
  try {
    chi_.assign(n, -1);
  } catch (const std::bad_alloc&) {
    throw Error(ErrorCode::ResourceError, "cannot allocate residue table");
  }
  chi_[0] = 0;
  // x^2 for x in 1..(p-1)/2 hits every nonzero square exactly once.
  std::uint64_t sq = 0;
  for (std::uint64_t x = 1; x <= (n - 1) / 2; ++x) {
    sq += 2 * x - 1;
    if (sq >= n) sq %= n;
    chi_[sq] = 1;
  }
}

int ResidueTable::at(std::int64_t a) const noexcept {
  const auto m = static_cast<std::int64_t>(prime_.value());
  std::int64_t r = a % m;
  if (r < 0) r += m;
  return chi_[static_cast<std::size_t>(r)];
}

}  // namespace ecm
