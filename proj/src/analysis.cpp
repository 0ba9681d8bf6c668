#include "ecmoments/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ecmoments/error.hpp"

namespace ecm {

BigInt catalan(unsigned n) {
  if (n > 30) throw Error(ErrorCode::InvalidArgument, "catalan index above 30");
  BigInt c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * n, n);
  return c / (n + 1);
}

BigInt MainTerm::at(const Prime& p) const {
  BigInt pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), p.value(), static_cast<unsigned long>(exponent));
  return coefficient * pw;
}

MainTerm main_term(int order, int parameter_count) {
  if (order < 1) throw Error(ErrorCode::InvalidOrder, "order must be positive");
  if (order % 2 == 1) return {0, 0};
  const int m = order / 2;
  return {catalan(static_cast<unsigned>(m)), m + parameter_count};
}

NormalizerRequest NormalizerRequest::parse(const std::string& text) {
  if (text == "auto") return {Kind::Auto, 0};
  if (text == "low") return {Kind::Low, 0};
  if (text == "high") return {Kind::High, 0};
  // p, p32, p2, p52, p3, p72, p4, p92
  for (int twice = 2; twice <= 2 * kMaxOrder + 2; ++twice) {
    if (exponent_suffix(twice) == text) return {Kind::Explicit, twice};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown normalizer '" + text + "'");
}

std::string exponent_suffix(int twice) {
  if (twice == 2) return "p";
  if (twice % 2 == 0) return "p" + std::to_string(twice / 2);
  return "p" + std::to_string(twice) + "2";
}

std::string exponent_label(int twice) {
  if (twice == 2) return "p";
  if (twice % 2 == 0) return "p^" + std::to_string(twice / 2);
  return "p^{" + std::to_string(twice) + "/2}";
}

std::optional<double> compensated_mean(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return (sum + comp) / static_cast<double>(values.size());
}

namespace {

BigInt pow_p(const Prime& p, int e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), p.value(), static_cast<unsigned long>(e));
  return out;
}

// residual / (p^(k-1) * p^(twice/2)).
BiasValue normalize(const BigInt& residual, const Prime& p, int parameter_count, int twice) {
  const BigInt den = pow_p(p, parameter_count - 1 + twice / 2);
  Rational q(residual, den);
  q.canonicalize();
  if (twice % 2 == 0) return {q.get_d(), q};
  return {q.get_d() / std::sqrt(static_cast<double>(p.value())), std::nullopt};
}

std::vector<double> values_of(const std::vector<BiasValue>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& b : v) out.push_back(b.value);
  return out;
}

}  // namespace

const std::vector<BiasValue>& BiasReport::chosen() const {
  return decision.chosen_twice_exponent == high_twice_exponent ? bias_high : bias_low;
}

std::optional<double> BiasReport::mean() const {
  return decision.chosen_twice_exponent == high_twice_exponent ? mean_high : mean_low;
}

BiasReport bias_series(const MomentSeries& series, int order, const NormalizerRequest& normalizer) {
  if (order < 2 || order % 2 != 0) {
    throw Error(ErrorCode::InvalidOrder, "bias needs an even order, got " + std::to_string(order));
  }
  if (std::find(series.orders.begin(), series.orders.end(), order) == series.orders.end()) {
    throw Error(ErrorCode::OrderMissing, "order " + std::to_string(order) + " not in series");
  }
  BiasReport rep;
  rep.family = series.family;
  rep.order = order;
  rep.parameter_count = series.parameter_count;
  rep.low_twice_exponent = order;       // r = 2 -> p, r = 4 -> p^2, ...
  rep.high_twice_exponent = order + 1;  // r = 2 -> p^{3/2}, ...
  const MainTerm mt = main_term(order, series.parameter_count);

  for (const auto& rec : series.records) {
    const BigInt& s = rec.raw(order);
    const BigInt m = mt.at(rec.prime);
    const BigInt res = s - m;
    rep.primes.push_back(rec.prime);
    rep.raw.push_back(s);
    rep.main.push_back(m);
    rep.residual.push_back(res);
    rep.bias_low.push_back(normalize(res, rec.prime, series.parameter_count, rep.low_twice_exponent));
    rep.bias_high.push_back(normalize(res, rec.prime, series.parameter_count, rep.high_twice_exponent));
  }
  rep.mean_low = compensated_mean(values_of(rep.bias_low));
  rep.mean_high = compensated_mean(values_of(rep.bias_high));

  // Evidence for the automatic choice is always recorded.
  AutoDecision& d = rep.decision;
  const std::size_t n = rep.bias_low.size();
  const std::size_t q = n / 4;
  if (q > 0) {
    for (std::size_t i = 0; i < q; ++i) {
      d.first_quartile_max = std::max(d.first_quartile_max, std::abs(rep.bias_low[i].value));
      d.last_quartile_max = std::max(d.last_quartile_max, std::abs(rep.bias_low[n - 1 - i].value));
    }
  }
  const bool unbounded = q > 0 && d.last_quartile_max > d.ratio_threshold * d.first_quartile_max &&
                         d.last_quartile_max > d.absolute_threshold;

  using Kind = NormalizerRequest::Kind;
  switch (normalizer.kind) {
    case Kind::Auto:
      d.automatic = true;
      d.chosen_twice_exponent = unbounded ? rep.high_twice_exponent : rep.low_twice_exponent;
      if (q == 0) {
        d.reason = "fewer than 4 primes; kept the smaller exponent";
      } else {
        d.reason = unbounded ? "residual / " + exponent_label(rep.low_twice_exponent) +
                                   " grows across the series"
                             : "residual / " + exponent_label(rep.low_twice_exponent) +
                                   " stays bounded across the series";
      }
      break;
    case Kind::Low:
      d.chosen_twice_exponent = rep.low_twice_exponent;
      d.reason = "requested";
      break;
    case Kind::High:
      d.chosen_twice_exponent = rep.high_twice_exponent;
      d.reason = "requested";
      break;
    case Kind::Explicit:
      if (normalizer.twice_exponent != rep.low_twice_exponent &&
          normalizer.twice_exponent != rep.high_twice_exponent) {
        throw Error(ErrorCode::InvalidArgument,
                    "normalizer " + exponent_suffix(normalizer.twice_exponent) + " does not apply to order " +
                        std::to_string(order) + " (use " + exponent_suffix(rep.low_twice_exponent) +
                        " or " + exponent_suffix(rep.high_twice_exponent) + ")");
      }
      d.chosen_twice_exponent = normalizer.twice_exponent;
      d.reason = "requested";
      break;
  }
  return rep;
}

double binom_sign_test(std::size_t n_pos, std::size_t n) {
  if (n_pos > n || n > 10000) {
    throw Error(ErrorCode::InvalidArgument, "binom_sign_test needs 0 <= n_pos <= n <= 10000");
  }
  const std::size_t k = std::max(n_pos, n - n_pos);
  BigInt tail = 0, c;
  for (std::size_t i = k; i <= n; ++i) {
    mpz_bin_uiui(c.get_mpz_t(), n, i);
    tail += c;
  }
  BigInt total;
  mpz_ui_pow_ui(total.get_mpz_t(), 2, n);
  Rational prob(2 * tail, total);
  prob.canonicalize();
  if (prob > 1) return 1.0;
  return prob.get_d();
}

namespace {

double quantile(std::vector<double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

Histogram freedman_diaconis_histogram(const std::vector<double>& values) {
  Histogram h;
  h.rule = "freedman-diaconis, min 10 bins";
  if (values.empty()) return h;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front(), hi = sorted.back();
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
  std::size_t bins = 10;
  if (width > 0.0 && hi > lo) {
    const auto fd = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    bins = std::clamp<std::size_t>(fd, 10, std::max<std::size_t>(10, sorted.size()));
  }
  double left = lo, right = hi;
  if (!(right > left)) {
    left -= 0.5;
    right += 0.5;
  }
  const double step = (right - left) / static_cast<double>(bins);
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = left + step * static_cast<double>(i);
  h.edges.back() = right;
  h.counts.assign(bins, 0);
  for (double v : values) {
    auto idx = static_cast<std::size_t>((v - left) / step);
    if (idx >= bins) idx = bins - 1;
    ++h.counts[idx];
  }
  return h;
}

BiasReport group_stats(BiasReport report, std::size_t group_size) {
  if (group_size < 1) throw Error(ErrorCode::InvalidArgument, "group size must be at least 1");
  GroupStats g;
  g.group_size = group_size;
  const auto& vals = report.chosen();
  const std::size_t groups = vals.size() / group_size;
  g.dropped = vals.size() - groups * group_size;
  g.no_groups = groups == 0;
  for (std::size_t k = 0; k < groups; ++k) {
    std::vector<double> chunk;
    for (std::size_t i = 0; i < group_size; ++i) chunk.push_back(vals[k * group_size + i].value);
    const double m = *compensated_mean(chunk);
    g.means.push_back(m);
    const int sign = (m > 0) - (m < 0);
    g.signs.push_back(sign);
    (sign > 0 ? g.n_pos : sign < 0 ? g.n_neg : g.n_zero)++;
  }
  g.binomial_tail = binom_sign_test(g.n_pos, g.n_pos + g.n_neg);
  g.histogram = freedman_diaconis_histogram(g.means);
  report.groups = std::move(g);
  return report;
}

OddCoefficientSeries odd_coefficient_series(const MomentSeries& series, int order) {
  if (order != 1 && order != 3 && order != 5 && order != 7) {
    throw Error(ErrorCode::InvalidOrder, "odd coefficients need r in {1, 3, 5, 7}");
  }
  if (std::find(series.orders.begin(), series.orders.end(), order) == series.orders.end()) {
    throw Error(ErrorCode::OrderMissing, "order " + std::to_string(order) + " not in series");
  }
  OddCoefficientSeries out;
  out.order = order;
  // S_r is a sum of p terms of size p^{r/2}; square-root cancellation leaves
  // p^{(r+1)/2}, which is also the scale of c_1 = S_1 / p.
  const int e = (order + 1) / 2;
  for (const auto& rec : series.records) {
    Rational q(rec.raw(order), pow_p(rec.prime, e + series.parameter_count - 1));
    q.canonicalize();
    out.primes.push_back(rec.prime);
    out.values.push_back(q.get_d());
    out.exact.push_back(std::move(q));
  }
  out.mean = compensated_mean(out.values);
  return out;
}

double sym_polynomial(int k, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int i = 2; i <= k; ++i) {
    const double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<SymSum> sym_sums(const OneParamFamily& fam, const Prime& p, const std::vector<int>& ks) {
  for (int k : ks) {
    if (k < 1 || k > 6) throw Error(ErrorCode::InvalidArgument, "k must be in 1..6");
  }
  const ResidueTable table(p);
  const auto coeffs = dirichlet_coefficients(fam, table);
  const double root = std::sqrt(static_cast<double>(p.value()));
  std::vector<SymSum> out;
  for (int k : ks) {
    std::vector<double> terms;
    terms.reserve(coeffs.size());
    for (std::int64_t a : coeffs) terms.push_back(sym_polynomial(k, static_cast<double>(a) / root));
    const double sum = *compensated_mean(terms) * static_cast<double>(terms.size());
    out.push_back({k, sum, sum / root});
  }
  return out;
}

SymSum sym_sum(const OneParamFamily& fam, const Prime& p, int k) { return sym_sums(fam, p, {k}).front(); }

double rank_estimate(const MomentSeries& series) {
  if (series.records.empty()) return 0.0;
  std::vector<double> terms;
  for (const auto& rec : series.records) {
    Rational q(-rec.raw(1), rec.denominator());
    q.canonicalize();
    terms.push_back(q.get_d() * std::log(static_cast<double>(rec.prime.value())));
  }
  const double x = static_cast<double>(series.records.back().prime.value());
  return *compensated_mean(terms) * static_cast<double>(terms.size()) / x;
}

double rank_estimate(const OneParamFamily& fam, std::span<const Prime> primes, const SweepOptions& opts) {
  const int orders[] = {1};
  return rank_estimate(moment_series(fam, primes, orders, opts));
}

MichelResidualSeries michel_residual_series(const MomentSeries& series) {
  if (std::find(series.orders.begin(), series.orders.end(), 2) == series.orders.end()) {
    throw Error(ErrorCode::OrderMissing, "order 2 not in series");
  }
  MichelResidualSeries out;
  const MainTerm mt = main_term(2, series.parameter_count);
  double sum = 0.0, comp = 0.0;
  for (const auto& rec : series.records) {
    const BiasValue v = normalize(rec.raw(2) - mt.at(rec.prime), rec.prime, series.parameter_count, 3);
    out.primes.push_back(rec.prime);
    out.residual.push_back(v.value);
    const double t = sum + v.value;
    comp += std::abs(sum) >= std::abs(v.value) ? (sum - t) + v.value : (v.value - t) + sum;
    sum = t;
    const auto n = static_cast<double>(out.residual.size());
    out.running_mean.push_back((sum + comp) / n);
    out.reference.push_back(1.0 / std::sqrt(n));
  }
  return out;
}

}  // namespace ecm
