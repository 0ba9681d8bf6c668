#include "ecmoments/poly.hpp"

#include <algorithm>
#include <sstream>

#include "ecmoments/error.hpp"

namespace ecm {

PolynomialZ::PolynomialZ(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

PolynomialZ::PolynomialZ(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

PolynomialZ PolynomialZ::constant(const BigInt& c) { return PolynomialZ(std::vector<BigInt>{c}); }

PolynomialZ PolynomialZ::monomial(const BigInt& c, unsigned exponent) {
  std::vector<BigInt> coeffs(exponent + 1);
  coeffs[exponent] = c;
  return PolynomialZ(std::move(coeffs));
}

void PolynomialZ::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt PolynomialZ::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

PolynomialZ& PolynomialZ::operator+=(const PolynomialZ& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

PolynomialZ& PolynomialZ::operator-=(const PolynomialZ& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

PolynomialZ operator*(const PolynomialZ& lhs, const PolynomialZ& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<BigInt> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return PolynomialZ(std::move(out));
}

PolynomialZ& PolynomialZ::operator*=(const PolynomialZ& rhs) { return *this = *this * rhs; }

PolynomialZ operator*(const BigInt& c, const PolynomialZ& f) {
  std::vector<BigInt> out(f.coeffs_.begin(), f.coeffs_.end());
  for (auto& x : out) x *= c;
  return PolynomialZ(std::move(out));
}

PolynomialZ PolynomialZ::operator-() const { return BigInt(-1) * *this; }

PolynomialZ PolynomialZ::pow(unsigned exponent) const {
  PolynomialZ result = constant(1);
  PolynomialZ base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

PolynomialZ PolynomialZ::shifted(const BigInt& shift) const {
  // Horner in the ring: f(T+c) = (...(a_n (T+c) + a_{n-1}) (T+c) + ...).
  const PolynomialZ lin(std::vector<BigInt>{shift, 1});
  PolynomialZ out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    out = out * lin + constant(*it);
  }
  return out;
}

BigInt PolynomialZ::eval(const BigInt& t) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<std::uint64_t> PolynomialZ::reduce_mod(const Prime& p) const {
  std::vector<std::uint64_t> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(ecm::mod_reduce(c, p));
  return out;
}

std::uint64_t horner_mod(std::span<const std::uint64_t> coeffs, std::uint64_t t, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = mul_mod(acc, t, p) + *it;
    if (acc >= p) acc -= p;
  }
  return acc;
}

std::uint64_t PolynomialZ::eval_mod(std::int64_t t, const Prime& p) const {
  return horner_mod(reduce_mod(p), ecm::mod_reduce(t, p), p.value());
}

std::uint64_t PolynomialZ::eval_mod(const BigInt& t, const Prime& p) const {
  return horner_mod(reduce_mod(p), ecm::mod_reduce(t, p), p.value());
}

namespace {

void append_term(std::ostringstream& os, const BigInt& c, const std::string& monomial, bool first) {
  BigInt mag = abs(c);
  if (first) {
    if (c < 0) os << "-";
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  if (monomial.empty()) {
    os << mag.get_str();
  } else if (mag == 1) {
    os << monomial;
  } else {
    os << mag.get_str() << "*" << monomial;
  }
}

std::string power(char var, unsigned e) {
  if (e == 0) return {};
  if (e == 1) return std::string(1, var);
  return std::string(1, var) + "^" + std::to_string(e);
}

}  // namespace

std::string PolynomialZ::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == 0) continue;
    append_term(os, coeffs_[i], power(var, static_cast<unsigned>(i)), first);
    first = false;
  }
  return os.str();
}

int ord_at_zero_reversed(const PolynomialZ& delta) {
  if (delta.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "discriminant is identically zero");
  if (delta.degree() > 12) {
    throw Error(ErrorCode::DegreeTooLarge,
                "degree " + std::to_string(delta.degree()) + " exceeds 12");
  }
  return 12 - delta.degree();
}

// ---------------------------------------------------------------------------
// PolynomialZ2

PolynomialZ2::PolynomialZ2(std::initializer_list<std::pair<const Exponents, BigInt>> terms) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

PolynomialZ2 PolynomialZ2::from_t(const PolynomialZ& f) {
  PolynomialZ2 out;
  const auto cs = f.coeffs();
  for (std::size_t i = 0; i < cs.size(); ++i) out.add_term({static_cast<unsigned>(i), 0u}, cs[i]);
  return out;
}

PolynomialZ2 PolynomialZ2::term(const BigInt& c, unsigned exp_t, unsigned exp_s) {
  PolynomialZ2 out;
  out.add_term({exp_t, exp_s}, c);
  return out;
}

void PolynomialZ2::add_term(const Exponents& e, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned PolynomialZ2::degree_t() const noexcept {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

unsigned PolynomialZ2::degree_s() const noexcept {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

PolynomialZ2& PolynomialZ2::operator+=(const PolynomialZ2& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

PolynomialZ2& PolynomialZ2::operator-=(const PolynomialZ2& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

PolynomialZ2 operator*(const PolynomialZ2& lhs, const PolynomialZ2& rhs) {
  PolynomialZ2 out;
  for (const auto& [el, cl] : lhs.terms_) {
    for (const auto& [er, cr] : rhs.terms_) {
      out.add_term({el.first + er.first, el.second + er.second}, cl * cr);
    }
  }
  return out;
}

PolynomialZ2 PolynomialZ2::pow(unsigned exponent) const {
  PolynomialZ2 result = term(1, 0, 0);
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

std::uint64_t PolynomialZ2::eval2_mod(std::int64_t t, std::int64_t s, const Prime& p) const {
  const std::uint64_t m = p.value();
  const std::uint64_t tr = ecm::mod_reduce(t, p);
  const std::uint64_t sr = ecm::mod_reduce(s, p);
  std::uint64_t acc = 0;
  for (const auto& [e, c] : terms_) {
    std::uint64_t v = ecm::mod_reduce(c, p);
    v = mul_mod(v, pow_mod(tr, e.first, m), m);
    v = mul_mod(v, pow_mod(sr, e.second, m), m);
    acc += v;
    if (acc >= m) acc -= m;
  }
  return acc;
}

std::vector<std::vector<std::uint64_t>> PolynomialZ2::reduce_mod_by_s(const Prime& p) const {
  std::vector<std::vector<std::uint64_t>> out(is_zero() ? 0 : degree_s() + 1);
  for (const auto& [e, c] : terms_) {
    auto& row = out[e.second];
    if (row.size() <= e.first) row.resize(e.first + 1, 0);
    row[e.first] = (row[e.first] + ecm::mod_reduce(c, p)) % p.value();
  }
  return out;
}

std::string PolynomialZ2::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono = power('T', e.first);
    const std::string s = power('S', e.second);
    if (!mono.empty() && !s.empty()) mono += "*";
    mono += s;
    append_term(os, c, mono, first);
    first = false;
  }
  return os.str();
}

}  // namespace ecm
