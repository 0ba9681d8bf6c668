#include "ecmoments/moments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <optional>
#include <thread>

#include "ecmoments/error.hpp"

namespace ecm {

std::vector<int> normalize_orders(std::vector<int> orders) {
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  for (int r : orders) {
    if (r < 1 || r > kMaxOrder) {
      throw Error(ErrorCode::InvalidOrder,
                  "order " + std::to_string(r) + " outside 1.." + std::to_string(kMaxOrder));
    }
  }
  return orders;
}

const BigInt& MomentRecord::raw(int order) const {
  auto it = raw_sums.find(order);
  if (it == raw_sums.end()) {
    throw Error(ErrorCode::OrderMissing, "order " + std::to_string(order) + " not computed at p = " +
                                             std::to_string(prime.value()));
  }
  return it->second;
}

BigInt MomentRecord::denominator() const {
  BigInt p(static_cast<unsigned long>(prime.value()));
  return parameter_count == 1 ? p : BigInt(p * p);
}

BigInt to_bigint(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi(static_cast<unsigned long>(mag >> 64));
  BigInt lo(static_cast<unsigned long>(mag & ~std::uint64_t{0}));
  BigInt out = (hi << 64) + lo;
  return neg ? BigInt(-out) : out;
}

// ---------------------------------------------------------------------------

PowerSums::PowerSums(std::span<const int> orders) : orders_(orders.begin(), orders.end()) {
  for (int r : orders_) max_order_ = std::max(max_order_, r);
}

void PowerSums::spill(int order) {
  big_[order] += to_bigint(acc_[order]);
  acc_[order] = 0;
}

void PowerSums::add(std::int64_t a) {
  __int128 pw = 1;
  bool fast = true;
  BigInt big_pw;
  for (int r = 1; r <= max_order_; ++r) {
    if (fast && __builtin_mul_overflow(pw, static_cast<__int128>(a), &pw)) {
      fast = false;
      big_pw = BigInt(static_cast<long>(a));
      mpz_pow_ui(big_pw.get_mpz_t(), big_pw.get_mpz_t(), static_cast<unsigned long>(r));
    } else if (!fast) {
      big_pw *= static_cast<long>(a);
    }
    if (std::find(orders_.begin(), orders_.end(), r) == orders_.end()) continue;
    if (!fast) {
      big_[r] += big_pw;
    } else if (__builtin_add_overflow(acc_[r], pw, &acc_[r])) {
      spill(r);
      acc_[r] = pw;
    }
  }
}

std::map<int, BigInt> PowerSums::result() const {
  std::map<int, BigInt> out;
  for (int r : orders_) out[r] = big_[r] + to_bigint(acc_[r]);
  return out;
}

// ---------------------------------------------------------------------------

std::int64_t cubic_character_sum(const ResidueTable& table, std::uint64_t c3, std::uint64_t c2,
                                 std::uint64_t c1, std::uint64_t c0) {
  const std::uint64_t p = table.prime().value();
  const std::int8_t* chi = table.data();
  // Forward differences of g at x = 0: g(0), g(1)-g(0), second and third differences.
  std::uint64_t g = c0;
  std::uint64_t d1 = (c3 + c2 + c1) % p;
  std::uint64_t d2 = (6 * (c3 % p) + 2 * c2) % p;
  const std::uint64_t d3 = (6 * (c3 % p)) % p;
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    sum += chi[g];
    g += d1;
    if (g >= p) g -= p;
    d1 += d2;
    if (d1 >= p) d1 -= p;
    d2 += d3;
    if (d2 >= p) d2 -= p;
  }
  return sum;
}

namespace {

struct ReducedCubic {
  std::vector<std::uint64_t> c3, c2, c1, c0;

  ReducedCubic(const CubicForm& cf, const Prime& p)
      : c3(cf.c3.reduce_mod(p)), c2(cf.c2.reduce_mod(p)), c1(cf.c1.reduce_mod(p)),
        c0(cf.c0.reduce_mod(p)) {}

  std::int64_t a_at(std::uint64_t t, const ResidueTable& table) const {
    const std::uint64_t p = table.prime().value();
    return -cubic_character_sum(table, horner_mod(c3, t, p), horner_mod(c2, t, p),
                                horner_mod(c1, t, p), horner_mod(c0, t, p));
  }
};

// Coefficients of each c_i as polynomials in S whose coefficients are
// polynomials in T, all reduced mod p.
struct ReducedCubic2 {
  std::vector<std::vector<std::uint64_t>> rows[4];

  ReducedCubic2(const CubicForm2& cf, const Prime& p)
      : rows{cf.c3.reduce_mod_by_s(p), cf.c2.reduce_mod_by_s(p), cf.c1.reduce_mod_by_s(p),
             cf.c0.reduce_mod_by_s(p)} {}

  // Specialize T = t, leaving polynomials in S.
  std::vector<std::uint64_t> at_t(int which, std::uint64_t t, std::uint64_t p) const {
    std::vector<std::uint64_t> out;
    for (const auto& row : rows[which]) out.push_back(horner_mod(row, t, p));
    return out;
  }
};

void check_cap(const Prime& p, const SweepOptions& opts) {
  if (p.value() > opts.two_param_cap) {
    throw Error(ErrorCode::CapExceeded, "p = " + std::to_string(p.value()) +
                                            " exceeds the two-parameter cap " +
                                            std::to_string(opts.two_param_cap));
  }
}

}  // namespace

std::int64_t a_coeff(const CubicForm& cf, std::int64_t t, const ResidueTable& table) {
  return ReducedCubic(cf, table.prime()).a_at(mod_reduce(t, table.prime()), table);
}

std::vector<std::int64_t> dirichlet_coefficients(const OneParamFamily& fam, const ResidueTable& table) {
  const ReducedCubic rc(to_cubic_form(fam), table.prime());
  const std::uint64_t p = table.prime().value();
  std::vector<std::int64_t> out(p);
  for (std::uint64_t t = 0; t < p; ++t) out[t] = rc.a_at(t, table);
  return out;
}

std::vector<std::int64_t> dirichlet_coefficients_row(const TwoParamFamily& fam, std::int64_t t,
                                                     const ResidueTable& table) {
  const Prime& prime = table.prime();
  const std::uint64_t p = prime.value();
  const ReducedCubic2 rc(to_cubic_form(fam), prime);
  const std::uint64_t tr = mod_reduce(t, prime);
  const auto s3 = rc.at_t(0, tr, p), s2 = rc.at_t(1, tr, p), s1 = rc.at_t(2, tr, p),
             s0 = rc.at_t(3, tr, p);
  std::vector<std::int64_t> out(p);
  for (std::uint64_t s = 0; s < p; ++s) {
    out[s] = -cubic_character_sum(table, horner_mod(s3, s, p), horner_mod(s2, s, p),
                                  horner_mod(s1, s, p), horner_mod(s0, s, p));
  }
  return out;
}

MomentRecord moment_sums(const OneParamFamily& fam, const Prime& p, std::span<const int> orders) {
  const auto ord = normalize_orders({orders.begin(), orders.end()});
  const ResidueTable table(p);
  const ReducedCubic rc(to_cubic_form(fam), p);
  PowerSums sums(ord);
  for (std::uint64_t t = 0; t < p.value(); ++t) sums.add(rc.a_at(t, table));
  return {p, 1, sums.result()};
}

MomentRecord two_param_moment_sums(const TwoParamFamily& fam, const Prime& p,
                                   std::span<const int> orders, const SweepOptions& opts) {
  check_cap(p, opts);
  const auto ord = normalize_orders({orders.begin(), orders.end()});
  const ResidueTable table(p);
  PowerSums sums(ord);
  for (std::uint64_t t = 0; t < p.value(); ++t) {
    for (std::int64_t a : dirichlet_coefficients_row(fam, static_cast<std::int64_t>(t), table)) {
      sums.add(a);
    }
  }
  return {p, 2, sums.result()};
}

namespace {

const TwoParamFamily& birch_as_two_param() {
  static const TwoParamFamily fam("BIRCH", PolynomialZ2::term(1, 1, 0), PolynomialZ2::term(1, 0, 1));
  return fam;
}

}  // namespace

MomentRecord birch_moment_sums(const Prime& p, std::span<const int> orders, const SweepOptions& opts) {
  return two_param_moment_sums(birch_as_two_param(), p, orders, opts);
}

BigInt birch_all_curves_sum(const Prime& p, int r, const SweepOptions& opts) {
  if (r != 1 && r != 2) {
    throw Error(ErrorCode::InvalidOrder, "Birch sum is defined for r = 1 or 2");
  }
  const int ord[] = {r};
  return birch_moment_sums(p, ord, opts).raw(r);
}

MomentRecord family_moment_sums(const Family& fam, const Prime& p, std::span<const int> orders,
                                const SweepOptions& opts) {
  struct Visitor {
    const Prime& p;
    std::span<const int> orders;
    const SweepOptions& opts;
    MomentRecord operator()(const OneParamFamily& f) const { return moment_sums(f, p, orders); }
    MomentRecord operator()(const TwoParamFamily& f) const {
      return two_param_moment_sums(f, p, orders, opts);
    }
    MomentRecord operator()(const BirchFamily&) const { return birch_moment_sums(p, orders, opts); }
  };
  return std::visit(Visitor{p, orders, opts}, fam);
}

MomentSeries moment_series(const Family& fam, std::span<const Prime> primes,
                           std::span<const int> orders, const SweepOptions& opts) {
  MomentSeries series;
  series.family = family_name(fam);
  series.parameter_count = parameter_count(fam);
  series.orders = normalize_orders({orders.begin(), orders.end()});
  for (std::size_t i = 1; i < primes.size(); ++i) {
    if (!(primes[i - 1] < primes[i])) {
      throw Error(ErrorCode::InvalidArgument, "primes must be strictly ascending");
    }
  }

  const std::size_t n = primes.size();
  std::vector<std::optional<MomentRecord>> results(n);
  std::vector<std::exception_ptr> errors(n);
  // Largest primes first so the expensive units do not land last.
  std::vector<std::size_t> schedule(n);
  std::iota(schedule.begin(), schedule.end(), 0);
  std::reverse(schedule.begin(), schedule.end());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      const std::size_t i = schedule[k];
      try {
        results[i] = family_moment_sums(fam, primes[i], series.orders, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(n)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "at p = " + std::to_string(primes[i].value()) + ": " + e.what());
    }
  }
  series.records.reserve(n);
  for (auto& r : results) series.records.push_back(std::move(*r));
  return series;
}

}  // namespace ecm
