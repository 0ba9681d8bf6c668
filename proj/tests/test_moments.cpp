#include <doctest.h>

#include <cmath>

#include "ecmoments/builtins.hpp"
#include "ecmoments/error.hpp"
#include "ecmoments/moments.hpp"

using namespace ecm;

namespace {

const OneParamFamily& one(std::string_view name) {
  static std::map<std::string, OneParamFamily, std::less<>> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(std::string(name), std::get<OneParamFamily>(make_builtin(name))).first;
  return it->second;
}

// p minus the number of (x, y) with y^2 = c3 x^3 + c2 x^2 + c1 x + c0, computed
// without the residue table.
std::int64_t brute_a(const CubicForm& cf, std::int64_t t, const Prime& p) {
  const std::int64_t q = p.value();
  const std::int64_t c3 = cf.c3.eval_mod(t, p), c2 = cf.c2.eval_mod(t, p), c1 = cf.c1.eval_mod(t, p),
                     c0 = cf.c0.eval_mod(t, p);
  std::vector<int> squares(q, 0);
  for (std::int64_t y = 0; y < q; ++y) ++squares[y * y % q];
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < q; ++x) count += squares[(c3 * x % q * x % q * x + c2 * x % q * x + c1 * x + c0) % q];
  return q - count;
}

const std::vector<int> kOrders12{1, 2};

}  // namespace

TEST_CASE("order normalization") {
  CHECK(normalize_orders({2, 1, 2}) == std::vector<int>{1, 2});
  CHECK_THROWS_AS(normalize_orders({0}), Error);
  CHECK_THROWS_AS(normalize_orders({9}), Error);
}

TEST_CASE("single coefficient example") {
  Prime p(5);
  ResidueTable table(p);
  // y^2 = x^3 + 1 over F_5 has 5 affine points
  CHECK(a_coeff(CubicForm{PolynomialZ{1}, {}, {}, PolynomialZ{1}}, 0, table) == 0);
}

TEST_CASE("one-parameter examples") {
  CHECK(moment_sums(one("T1R3"), Prime(7), kOrders12).raw(1) == -7);
  CHECK(moment_sums(one("T1R2"), Prime(13), kOrders12).raw(1) == -26);
  CHECK(moment_sums(one("T1R2"), Prime(5), kOrders12).raw(1) == 0);
  auto rec = moment_sums(one("T1R3"), Prime(7), kOrders12);
  CHECK(rec.denominator() == 7);
  CHECK_THROWS_AS(rec.raw(3), Error);
}

TEST_CASE("two-parameter examples") {
  auto fam = std::get<TwoParamFamily>(make_builtin("T2R2"));
  auto rec = two_param_moment_sums(fam, Prime(7), kOrders12);
  CHECK(rec.raw(2) == 168);
  CHECK(rec.raw(1) == 0);
  CHECK(rec.denominator() == 49);
  SweepOptions small;
  small.two_param_cap = 61;
  CHECK_THROWS_AS(two_param_moment_sums(fam, Prime(67), kOrders12, small), Error);
  try {
    two_param_moment_sums(fam, Prime(67), kOrders12, small);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

TEST_CASE("Birch all-curves sums") {
  CHECK(birch_all_curves_sum(Prime(5), 2) == 100);
  CHECK(birch_all_curves_sum(Prime(7), 2) == 294);
  CHECK(birch_all_curves_sum(Prime(5), 1) == 0);
  auto rec = family_moment_sums(make_builtin("BIRCH"), Prime(11), kOrders12);
  CHECK(rec.raw(2) == 1331 - 121);
}

TEST_CASE("Hasse bound and singular fibers") {
  for (const auto& entry : builtin_families()) {
    auto fam = entry.make(entry.defaults);
    auto* f = std::get_if<OneParamFamily>(&fam);
    if (!f) continue;
    const auto cf = to_cubic_form(*f);
    const auto delta = discriminant_poly(*f);
    for (auto p : primes_in_range(5, 101)) {
      ResidueTable table(p);
      auto as = dirichlet_coefficients(*f, table);
      for (std::int64_t t = 0; t < (std::int64_t)p.value(); ++t) {
        const double a = (double)as[t];
        INFO(entry.name, " p=", p.value(), " t=", t);
        if (delta.eval_mod(t, p) != 0)
          REQUIRE(a * a <= 4.0 * (double)p.value());
        else if (cf.c3.eval_mod(t, p) != 0)
          REQUIRE(std::abs(a) <= 1.0);
        REQUIRE(a_coeff(cf, t, table) == a_coeff(cf, t + (std::int64_t)p.value(), table));
      }
    }
  }
}

TEST_CASE("brute-force equivalence") {
  for (const auto& entry : builtin_families()) {
    auto fam = entry.make(entry.defaults);
    auto* f = std::get_if<OneParamFamily>(&fam);
    if (!f) continue;
    const auto cf = to_cubic_form(*f);
    for (auto p : primes_in_range(5, 31)) {
      ResidueTable table(p);
      for (std::int64_t t = 0; t < (std::int64_t)p.value(); ++t) {
        INFO(entry.name, " p=", p.value(), " t=", t);
        REQUIRE(a_coeff(cf, t, table) == brute_a(cf, t, p));
      }
    }
  }
}

TEST_CASE("two-parameter rows match direct evaluation") {
  auto fam = std::get<TwoParamFamily>(make_builtin("T2R4"));
  auto cf = to_cubic_form(fam);
  for (auto p : primes_in_range(5, 23)) {
    ResidueTable table(p);
    for (std::int64_t t = 0; t < (std::int64_t)p.value(); ++t) {
      auto row = dirichlet_coefficients_row(fam, t, table);
      for (std::int64_t s = 0; s < (std::int64_t)p.value(); ++s)
        REQUIRE(row[s] == -cubic_character_sum(table, cf.c3.eval2_mod(t, s, p), cf.c2.eval2_mod(t, s, p),
                                               cf.c1.eval2_mod(t, s, p), cf.c0.eval2_mod(t, s, p)));
    }
  }
}

TEST_CASE("Legendre-sum lemma by exhaustion") {
  for (auto p : primes_in_range(5, 31)) {
    const std::int64_t q = p.value();
    ResidueTable table(p);
    for (std::int64_t a = 1; a < q; ++a)
      for (std::int64_t b = 0; b < q; ++b) {
        std::int64_t lin = 0;
        for (std::int64_t x = 0; x < q; ++x) lin += table[(a * x + b) % q];
        REQUIRE(lin == 0);
        for (std::int64_t c = 0; c < q; ++c) {
          std::int64_t quad = 0;
          for (std::int64_t x = 0; x < q; ++x) quad += table[(a * x % q * x + b * x + c) % q];
          const std::int64_t disc = ((b * b - 4 * a * c) % q + q) % q;
          REQUIRE(quad == (disc != 0 ? -table[a] : (q - 1) * table[a]));
        }
      }
  }
}

TEST_CASE("power sums spill into big integers") {
  std::vector<int> orders{1, 8};
  PowerSums sums(orders);
  const std::int64_t big = 3000000000LL;  // big^8 ~ 6.6e75, beyond 128 bits
  BigInt expect8 = 0, expect1 = 0;
  for (int i = 0; i < 5; ++i) {
    sums.add(big);
    sums.add(-7);
    BigInt b(std::to_string(big));
    mpz_class b8;
    mpz_pow_ui(b8.get_mpz_t(), b.get_mpz_t(), 8);
    expect8 += b8 + 5764801;
    expect1 += b - 7;
  }
  auto r = sums.result();
  CHECK(r.at(1) == expect1);
  CHECK(r.at(8) == expect8);
  CHECK(to_bigint(-(__int128(1) << 100)) == -(BigInt(1) << 100));
}

TEST_CASE("series are independent of the worker count") {
  auto primes = primes_from(5, 40);
  std::vector<int> orders{1, 2, 3, 4};
  Family fam = make_builtin("RANK1");
  SweepOptions one_worker, four;
  four.workers = 4;
  auto a = moment_series(fam, primes, orders, one_worker);
  auto b = moment_series(fam, primes, orders, four);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].prime == primes[i]);
    CHECK(a.records[i].raw_sums == b.records[i].raw_sums);
  }
  std::vector<Prime> unsorted{Prime(7), Prime(5)};
  CHECK_THROWS_AS(moment_series(fam, unsorted, orders), Error);
}
