#include <doctest.h>

#include <random>

#include "ecmoments/error.hpp"
#include "ecmoments/poly.hpp"

using namespace ecm;

namespace {

PolynomialZ random_poly(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<long> d(-50, 50);
  std::vector<BigInt> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(d(rng));
  return PolynomialZ(c);
}

}  // namespace

TEST_CASE("construction trims leading zeros") {
  PolynomialZ f{1, 2, 0, 0};
  CHECK(f.degree() == 1);
  CHECK(PolynomialZ{0, 0}.is_zero());
  CHECK(PolynomialZ{}.degree() == -1);
  CHECK(PolynomialZ{3, -1, 2}.to_string() == "2*T^2 - T + 3");
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_poly(rng, trial % 6), b = random_poly(rng, (trial + 2) % 5),
         c = random_poly(rng, (trial + 4) % 7);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a + (-a) == PolynomialZ{});
    CHECK(a.pow(3) == a * a * a);
    for (long t : {-3L, 0L, 5L, 12345L}) {
      CHECK((a * b).eval(t) == a.eval(t) * b.eval(t));
      CHECK(a.shifted(4).eval(t) == a.eval(t + 4));
    }
  }
}

TEST_CASE("eval_mod agrees with exact evaluation") {
  std::mt19937_64 rng(11);
  for (auto p : primes_in_range(5, 97)) {
    auto f = random_poly(rng, 5);
    auto red = f.reduce_mod(p);
    for (std::int64_t t = -20; t < 20; ++t) {
      auto exact = f.eval(t);
      CHECK(f.eval_mod(t, p) == mod_reduce(exact, p));
      CHECK(horner_mod(red, mod_reduce(t, p), p) == mod_reduce(exact, p));
    }
    // periodicity in t
    CHECK(f.eval_mod(3, p) == f.eval_mod(3 + (std::int64_t)p.value(), p));
  }
}

TEST_CASE("large constants reduce correctly") {
  PolynomialZ q(std::vector<BigInt>{BigInt("-8916100448255999999"), BigInt(2), BigInt(1)});
  // -8916100448255999999 mod 7
  BigInt c("-8916100448255999999");
  BigInt r = c % 7;
  if (r < 0) r += 7;
  CHECK(q.eval_mod(0, Prime(7)) == r.get_ui());
  CHECK(q.eval_mod(BigInt("100000000000000000000000"), Prime(7)) ==
        mod_reduce(q.eval(BigInt("100000000000000000000000")), Prime(7)));
}

TEST_CASE("ord at zero of the reversed discriminant") {
  CHECK(ord_at_zero_reversed(PolynomialZ{1, 0, 0, 1}) == 9);
  CHECK(ord_at_zero_reversed(PolynomialZ::monomial(5, 12)) == 0);
  CHECK_THROWS_AS(ord_at_zero_reversed(PolynomialZ{}), Error);
  CHECK_THROWS_AS(ord_at_zero_reversed(PolynomialZ::monomial(1, 13)), Error);
}

TEST_CASE("bivariate polynomials") {
  auto T = PolynomialZ2::term(1, 1, 0), S = PolynomialZ2::term(1, 0, 1);
  auto f = T * T * S - T * S + PolynomialZ2::term(3, 0, 0);
  CHECK(f.degree_t() == 2);
  CHECK(f.degree_s() == 1);
  Prime p(11);
  // t = 2, s = 5: 4*5 - 10 + 3 = 13 = 2 mod 11
  CHECK(f.eval2_mod(2, 5, p) == 2);
  CHECK(f.eval2_mod(-9, 5, p) == 2);
  CHECK((f - f).is_zero());
  CHECK(f.pow(2) == f * f);
  CHECK(PolynomialZ2::from_t(PolynomialZ{1, 1}) == T + PolynomialZ2::term(1, 0, 0));
  auto by_s = f.reduce_mod_by_s(p);
  REQUIRE(by_s.size() == 2);
  for (std::int64_t t = 0; t < 11; ++t)
    for (std::int64_t s = 0; s < 11; ++s) {
      std::uint64_t v = 0, sp = 1;
      for (auto& ct : by_s) {
        v = (v + horner_mod(ct, t, 11) * sp) % 11;
        sp = sp * s % 11;
      }
      CHECK(v == f.eval2_mod(t, s, p));
    }
}
