#include "ecmoments/family.hpp"

#include <algorithm>
#include <random>

#include "ecmoments/error.hpp"

namespace ecm {

namespace {

PolynomialZ c(long v) { return PolynomialZ::constant(v); }
PolynomialZ2 c2(long v) { return PolynomialZ2::term(v, 0, 0); }

}  // namespace

OneParamFamily::OneParamFamily(std::string name, Source source, std::optional<int> declared_rank)
    : name_(std::move(name)), source_(std::move(source)), declared_rank_(declared_rank) {
  if (const auto* cf = std::get_if<CubicForm>(&source_); cf && cf->c3.is_zero()) {
    throw Error(ErrorCode::DegenerateFamily, name_ + ": cubic coefficient c3 is zero");
  }
  if (declared_rank_ && *declared_rank_ < 0) {
    throw Error(ErrorCode::InvalidSpec, name_ + ": declared rank is negative");
  }
  if (discriminant_poly(*this).is_zero()) {
    throw Error(ErrorCode::DegenerateFamily, name_ + ": discriminant is identically zero");
  }
}

TwoParamFamily::TwoParamFamily(std::string name, PolynomialZ2 A, PolynomialZ2 B, PolynomialZ2 C)
    : name_(std::move(name)), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
  const PolynomialZ2 delta = discriminant_poly(*this);
  const Prime q(2147483647);
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::int64_t> dist(0, static_cast<std::int64_t>(q.value()) - 1);
  for (int i = 0; i < 100; ++i) {
    const std::int64_t t = dist(rng);
    const std::int64_t s = dist(rng);
    if (delta.eval2_mod(t, s, q) != 0) return;
  }
  throw Error(ErrorCode::DegenerateFamily, name_ + ": discriminant vanishes at every sample");
}

const std::string& family_name(const Family& fam) {
  return std::visit([](const auto& f) -> const std::string& {
    if constexpr (std::is_same_v<std::decay_t<decltype(f)>, BirchFamily>) {
      return f.name;
    } else {
      return f.name();
    }
  }, fam);
}

int parameter_count(const Family& fam) { return std::holds_alternative<OneParamFamily>(fam) ? 1 : 2; }

BInvariants b_invariants(const WeierstrassForm& w) {
  BInvariants b;
  b.b2 = w.a1 * w.a1 + c(4) * w.a2;
  b.b4 = c(2) * w.a4 + w.a1 * w.a3;
  b.b6 = w.a3 * w.a3 + c(4) * w.a6;
  b.b8 = w.a1 * w.a1 * w.a6 + c(4) * w.a2 * w.a6 - w.a1 * w.a3 * w.a4 + w.a2 * w.a3 * w.a3 -
         w.a4 * w.a4;
  return b;
}

CInvariants c_invariants(const WeierstrassForm& w) {
  const BInvariants b = b_invariants(w);
  CInvariants out;
  out.c4 = b.b2 * b.b2 - c(24) * b.b4;
  out.c6 = -(b.b2.pow(3)) + c(36) * b.b2 * b.b4 - c(216) * b.b6;
  return out;
}

PolynomialZ weierstrass_discriminant(const WeierstrassForm& w) {
  const BInvariants b = b_invariants(w);
  return -(b.b2 * b.b2 * b.b8) - c(8) * b.b4.pow(3) - c(27) * b.b6 * b.b6 +
         c(9) * b.b2 * b.b4 * b.b6;
}

PolynomialZ cubic_discriminant(const CubicForm& f) {
  return f.c2 * f.c2 * f.c1 * f.c1 - c(4) * f.c3 * f.c1.pow(3) - c(4) * f.c2.pow(3) * f.c0 -
         c(27) * f.c3 * f.c3 * f.c0 * f.c0 + c(18) * f.c3 * f.c2 * f.c1 * f.c0;
}

PolynomialZ2 cubic_discriminant(const CubicForm2& f) {
  return f.c2 * f.c2 * f.c1 * f.c1 - c2(4) * f.c3 * f.c1.pow(3) - c2(4) * f.c2.pow(3) * f.c0 -
         c2(27) * f.c3 * f.c3 * f.c0 * f.c0 + c2(18) * f.c3 * f.c2 * f.c1 * f.c0;
}

CubicForm to_cubic_form(const OneParamFamily& fam) {
  struct Visitor {
    CubicForm operator()(const ShortForm& s) const { return {c(1), {}, s.A, s.B}; }
    CubicForm operator()(const WeierstrassForm& w) const {
      const BInvariants b = b_invariants(w);
      return {c(4), b.b2, c(2) * b.b4, b.b6};
    }
    CubicForm operator()(const CubicForm& cf) const { return cf; }
  };
  return std::visit(Visitor{}, fam.source());
}

CubicForm2 to_cubic_form(const TwoParamFamily& fam) { return {c2(1), fam.C(), fam.A(), fam.B()}; }

WeierstrassForm weierstrass_model(const OneParamFamily& fam) {
  struct Visitor {
    const std::string& name;
    WeierstrassForm operator()(const ShortForm& s) const { return {{}, {}, {}, s.A, s.B}; }
    WeierstrassForm operator()(const WeierstrassForm& w) const { return w; }
    WeierstrassForm operator()(const CubicForm& cf) const {
      if (!cf.c3.is_constant()) {
        throw Error(ErrorCode::NotConvertible, name + ": c3 depends on T");
      }
      const PolynomialZ k = cf.c3;
      return {{}, cf.c2, {}, k * cf.c1, k * k * cf.c0};
    }
  };
  return std::visit(Visitor{fam.name()}, fam.source());
}

PolynomialZ discriminant_poly(const OneParamFamily& fam) {
  if (const auto* s = std::get_if<ShortForm>(&fam.source())) {
    return c(-16) * (c(4) * s->A.pow(3) + c(27) * s->B * s->B);
  }
  if (const auto* cf = std::get_if<CubicForm>(&fam.source()); cf && !cf->c3.is_constant()) {
    return cubic_discriminant(*cf);
  }
  return weierstrass_discriminant(weierstrass_model(fam));
}

PolynomialZ2 discriminant_poly(const TwoParamFamily& fam) {
  return c2(16) * cubic_discriminant(to_cubic_form(fam));
}

namespace {

// N/D is constant iff N(T) D(T0) - D(T) N(T0) == 0 for any T0 with D(T0) != 0.
bool ratio_is_constant(const PolynomialZ& num, const PolynomialZ& den) {
  if (den.is_zero()) throw Error(ErrorCode::AllFibersSingular, "j-invariant denominator is zero");
  BigInt t0 = 0;
  for (long k = 0;; ++k) {
    t0 = (k % 2 == 0) ? BigInt(k / 2) : BigInt(-(k + 1) / 2);
    if (den.eval(t0) != 0) break;
  }
  return (num * PolynomialZ::constant(den.eval(t0)) - den * PolynomialZ::constant(num.eval(t0)))
      .is_zero();
}

}  // namespace

bool j_is_constant(const OneParamFamily& fam) {
  if (const auto* s = std::get_if<ShortForm>(&fam.source())) {
    const PolynomialZ num = c(4) * s->A.pow(3);
    return ratio_is_constant(num, num + c(27) * s->B * s->B);
  }
  const WeierstrassForm w = weierstrass_model(fam);
  return ratio_is_constant(c_invariants(w).c4.pow(3), weierstrass_discriminant(w));
}

bool is_rational_surface(const OneParamFamily& fam) {
  PolynomialZ A, B;
  if (const auto* s = std::get_if<ShortForm>(&fam.source())) {
    A = s->A;
    B = s->B;
  } else {
    const CInvariants ci = c_invariants(weierstrass_model(fam));
    A = c(-27) * ci.c4;
    B = c(-54) * ci.c6;
  }
  // The zero polynomial has degree -1 and never wins the max.
  const int wa = 3 * A.degree();
  const int wb = 2 * B.degree();
  const int top = std::max(wa, wb);
  if (top > 0 && top < 12) return true;
  if (wa == 12 && wb == 12) {
    const PolynomialZ delta = c(-16) * (c(4) * A.pow(3) + c(27) * B * B);
    return ord_at_zero_reversed(delta) == 0;
  }
  return false;
}

}  // namespace ecm
