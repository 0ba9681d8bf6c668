#include <doctest.h>

#include <cmath>

#include "ecmoments/analysis.hpp"
#include "ecmoments/builtins.hpp"
#include "ecmoments/error.hpp"

using namespace ecm;

namespace {

MomentSeries synthetic(const std::vector<long>& s2, int order = 2) {
  MomentSeries m;
  m.family = "SYN";
  m.orders = {order};
  auto primes = primes_from(5, s2.size());
  for (std::size_t i = 0; i < s2.size(); ++i) {
    MomentRecord r{primes[i], 1, {}};
    r.raw_sums[order] = BigInt(s2[i]);
    m.records.push_back(r);
  }
  return m;
}

}  // namespace

TEST_CASE("catalan numbers and main terms") {
  CHECK(catalan(1) == 1);
  CHECK(catalan(2) == 2);
  CHECK(catalan(3) == 5);
  CHECK(catalan(4) == 14);
  auto m4 = main_term(4);
  CHECK(m4.coefficient == 2);
  CHECK(m4.exponent == 3);
  CHECK(m4.at(Prime(7)) == 686);
  CHECK(main_term(2, 2).exponent == 3);
  CHECK(main_term(3).coefficient == 0);
}

TEST_CASE("normalizer parsing") {
  CHECK(NormalizerRequest::parse("auto").kind == NormalizerRequest::Kind::Auto);
  CHECK(NormalizerRequest::parse("p32").twice_exponent == 3);
  CHECK(NormalizerRequest::parse("p").twice_exponent == 2);
  CHECK(NormalizerRequest::parse("p2").twice_exponent == 4);
  CHECK_THROWS_AS(NormalizerRequest::parse("q7"), Error);
  CHECK(exponent_suffix(3) == "p32");
  CHECK(exponent_suffix(2) == "p");
  CHECK(exponent_label(5) == "p^{5/2}");
}

TEST_CASE("sign test") {
  CHECK(binom_sign_test(63, 100) == doctest::Approx(0.0124).epsilon(0.0005 / 0.0124));
  CHECK(binom_sign_test(63, 100) == doctest::Approx(binom_sign_test(37, 100)));
  CHECK(binom_sign_test(50, 100) == 1.0);
  CHECK(binom_sign_test(100, 100) == doctest::Approx(2.0 * std::pow(2.0, -100)));
  CHECK(binom_sign_test(0, 0) == 1.0);
}

TEST_CASE("sym polynomial identities") {
  for (double x = -2.0; x <= 2.0; x += 1.0 / 512) {
    CHECK(std::abs(sym_polynomial(2, x) - (x * x - 1)) < 1e-12);
    CHECK(std::abs(sym_polynomial(3, x) - (x * x * x - 2 * x)) < 1e-12);
    for (int k = 0; k <= 6; ++k) CHECK(std::abs(sym_polynomial(k, x)) <= k + 1 + 1e-9);
  }
  const double th = 0.7;
  CHECK(sym_polynomial(4, 2 * std::cos(th)) == doctest::Approx(std::sin(5 * th) / std::sin(th)));
}

TEST_CASE("sym sums against moments") {
  auto fam = std::get<OneParamFamily>(make_builtin("GENERIC"));
  std::vector<int> orders{1, 2};
  for (auto p : primes_from(5, 15)) {
    auto rec = moment_sums(fam, p, orders);
    const double pd = (double)p.value();
    auto ss = sym_sums(fam, p, {1, 2});
    CHECK(ss[0].sum == doctest::Approx(rec.raw(1).get_d() / std::sqrt(pd)));
    CHECK(std::abs(ss[1].sum - (rec.raw(2).get_d() - pd * pd) / pd) < 1e-9);
    CHECK(ss[1].normalized == doctest::Approx(ss[1].sum / std::sqrt(pd)));
  }
  CHECK_THROWS_AS(sym_sum(fam, Prime(5), 7), Error);
}

TEST_CASE("bias for Birch is exactly -1") {
  auto series = moment_series(make_builtin("BIRCH"), primes_in_range(5, 31), std::vector<int>{2});
  auto report = bias_series(series, 2, NormalizerRequest::parse("p"));
  for (const auto& v : report.bias_low) {
    REQUIRE(v.exact);
    CHECK(*v.exact == -1);
  }
}

TEST_CASE("bias normalization choices") {
  // residual = -2p exactly: stays bounded after dividing by p
  std::vector<long> s2;
  for (auto p : primes_from(5, 200)) s2.push_back((long)(p.value() * p.value()) - 2 * (long)p.value());
  auto series = synthetic(s2);
  auto r = bias_series(series, 2);
  CHECK(r.decision.automatic);
  CHECK(r.chosen_twice_exponent() == 2);
  CHECK(*r.mean() == doctest::Approx(-2.0));
  auto explicit_low = bias_series(series, 2, NormalizerRequest::parse("p"));
  CHECK(*explicit_low.mean() == *r.mean());
  auto explicit_high = bias_series(series, 2, NormalizerRequest::parse("p32"));
  CHECK(*explicit_high.mean() == doctest::Approx(*r.mean_high));

  // residual = p^2 / 8 grows past the lower normalizer
  std::vector<long> grow;
  for (auto p : primes_from(5, 200)) grow.push_back((long)(p.value() * p.value() * 9 / 8));
  auto g = bias_series(synthetic(grow), 2);
  CHECK(g.chosen_twice_exponent() == 3);

  CHECK_THROWS_AS(bias_series(series, 3), Error);
  CHECK_THROWS_AS(bias_series(series, 4), Error);
}

TEST_CASE("group statistics") {
  std::vector<long> s2;
  auto primes = primes_from(5, 1000);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const long p = (long)primes[i].value();
    s2.push_back(p * p + (i % 3 == 0 ? 5 * p : -p));
  }
  auto base = bias_series(synthetic(s2), 2, NormalizerRequest::parse("p"));
  auto g50 = group_stats(base, 50);
  REQUIRE(g50.groups);
  CHECK(g50.groups->means.size() == 20);
  CHECK(g50.groups->dropped == 0);
  CHECK(g50.groups->n_pos + g50.groups->n_neg + g50.groups->n_zero == 20);
  CHECK(group_stats(base, 10).groups->means.size() == 100);
  auto g300 = group_stats(base, 300);
  CHECK(g300.groups->means.size() == 3);
  CHECK(g300.groups->dropped == 100);
  auto huge = group_stats(base, 5000);
  CHECK(huge.groups->no_groups);
  CHECK(huge.groups->means.empty());

  // group means average back to the overall mean
  double acc = 0;
  for (double m : g50.groups->means) acc += m;
  CHECK(acc / 20 == doctest::Approx(*base.mean()));
  std::size_t total = 0;
  for (auto c : g50.groups->histogram.counts) total += c;
  CHECK(total == 20);
  CHECK(g50.groups->histogram.counts.size() >= 10);
}

TEST_CASE("histogram") {
  auto h = freedman_diaconis_histogram({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  CHECK(h.counts.size() >= 10);
  CHECK(h.edges.size() == h.counts.size() + 1);
  auto flat = freedman_diaconis_histogram({2, 2, 2});
  std::size_t n = 0;
  for (auto c : flat.counts) n += c;
  CHECK(n == 3);
}

TEST_CASE("odd coefficients and rank estimate") {
  auto primes = primes_from(5, 100);
  auto series = moment_series(make_builtin("T1R3"), primes, std::vector<int>{1, 3});
  auto c1 = odd_coefficient_series(series, 1);
  for (const auto& v : c1.exact) CHECK(v == -1);
  auto c3 = odd_coefficient_series(series, 3);
  REQUIRE(c3.values.size() == 100);
  const BigInt p2 = BigInt(5) * 5;
  Rational expect(series.records[0].raw(3), p2);
  expect.canonicalize();
  CHECK(c3.exact[0] == expect);
  const double est = rank_estimate(series);
  double theta = 0;
  for (auto p : primes) theta += std::log((double)p.value());
  CHECK(est == doctest::Approx(theta / (double)primes.back().value()));
  CHECK(rank_estimate(moment_series(make_builtin("T1R1"), primes, std::vector<int>{1})) == 0.0);
}

TEST_CASE("michel residuals and compensated mean") {
  auto series = moment_series(make_builtin("T1R1"), primes_from(5, 50), std::vector<int>{2});
  auto m = michel_residual_series(series);
  CHECK(m.residual.size() == 50);
  CHECK(m.reference.back() == doctest::Approx(1 / std::sqrt(50.0)));
  CHECK(m.running_mean.size() == 50);
  CHECK_FALSE(compensated_mean({}).has_value());
  CHECK(*compensated_mean({1e16, 1.0, -1e16}) == doctest::Approx(1.0 / 3));
}
