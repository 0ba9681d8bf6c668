#pragma once

// Elliptic-curve families and their applicability checks.

#include <optional>
#include <string>
#include <variant>

#include "ecmoments/poly.hpp"

namespace ecm {

/// y^2 = x^3 + A(T) x + B(T)
struct ShortForm {
  PolynomialZ A, B;
  friend bool operator==(const ShortForm&, const ShortForm&) = default;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassForm {
  PolynomialZ a1, a2, a3, a4, a6;
  friend bool operator==(const WeierstrassForm&, const WeierstrassForm&) = default;
};

/// Fiber at t is y^2 = c3(t) x^3 + c2(t) x^2 + c1(t) x + c0(t).
/// This is the form the moment engine counts points on.
struct CubicForm {
  PolynomialZ c3, c2, c1, c0;
  friend bool operator==(const CubicForm&, const CubicForm&) = default;
};

struct CubicForm2 {
  PolynomialZ2 c3, c2, c1, c0;
  friend bool operator==(const CubicForm2&, const CubicForm2&) = default;
};

struct BInvariants {
  PolynomialZ b2, b4, b6, b8;
};

struct CInvariants {
  PolynomialZ c4, c6;
};

class OneParamFamily {
 public:
  using Source = std::variant<ShortForm, WeierstrassForm, CubicForm>;

  /// Throws DegenerateFamily if the discriminant is identically zero or a
  /// cubic source has c3 = 0.
  OneParamFamily(std::string name, Source source, std::optional<int> declared_rank = {});

  const std::string& name() const noexcept { return name_; }
  const Source& source() const noexcept { return source_; }
  std::optional<int> declared_rank() const noexcept { return declared_rank_; }

  friend bool operator==(const OneParamFamily&, const OneParamFamily&) = default;

 private:
  std::string name_;
  Source source_;
  std::optional<int> declared_rank_;
};

/// y^2 = x^3 + C(T,S) x^2 + A(T,S) x + B(T,S); C is zero for short forms.
class TwoParamFamily {
 public:
  /// Throws DegenerateFamily if the discriminant vanishes at 100 sampled
  /// points modulo a 31-bit prime.
  TwoParamFamily(std::string name, PolynomialZ2 A, PolynomialZ2 B, PolynomialZ2 C = {});

  const std::string& name() const noexcept { return name_; }
  const PolynomialZ2& A() const noexcept { return A_; }
  const PolynomialZ2& B() const noexcept { return B_; }
  const PolynomialZ2& C() const noexcept { return C_; }

  friend bool operator==(const TwoParamFamily&, const TwoParamFamily&) = default;

 private:
  std::string name_;
  PolynomialZ2 A_, B_, C_;
};

/// Every short-form curve y^2 = x^3 + a x + b, summed over (a, b) mod p.
struct BirchFamily {
  std::string name = "BIRCH";
  friend bool operator==(const BirchFamily&, const BirchFamily&) = default;
};

using Family = std::variant<OneParamFamily, TwoParamFamily, BirchFamily>;

const std::string& family_name(const Family& fam);
/// 1 for one-parameter families, 2 for two-parameter and Birch.
int parameter_count(const Family& fam);

BInvariants b_invariants(const WeierstrassForm& w);
CInvariants c_invariants(const WeierstrassForm& w);
PolynomialZ weierstrass_discriminant(const WeierstrassForm& w);

/// Discriminant of the cubic c3 x^3 + c2 x^2 + c1 x + c0.
PolynomialZ cubic_discriminant(const CubicForm& cf);
PolynomialZ2 cubic_discriminant(const CubicForm2& cf);

/// Short input maps to (1, 0, A, B); Weierstrass input to (4, b2, 2 b4, b6),
/// obtained by completing the square y -> 2y + a1 x + a3, which is a bijection
/// for odd p and so preserves point counts.
CubicForm to_cubic_form(const OneParamFamily& fam);
CubicForm2 to_cubic_form(const TwoParamFamily& fam);

/// Integral Weierstrass model. A cubic source with constant c3 = k is scaled
/// (x, y) -> (x/k, y/k), giving a2 = c2, a4 = k c1, a6 = k^2 c0. Throws
/// NotConvertible when c3 depends on T.
WeierstrassForm weierstrass_model(const OneParamFamily& fam);

/// Short form: -16(4A^3 + 27B^2). Weierstrass: the standard Delta from the
/// b-invariants. Cubic with constant c3: Delta of weierstrass_model; cubic
/// with T-dependent c3: the plain cubic discriminant.
PolynomialZ discriminant_poly(const OneParamFamily& fam);
/// 16 * disc(x^3 + C x^2 + A x + B); reduces to -16(4A^3 + 27B^2) when C = 0.
PolynomialZ2 discriminant_poly(const TwoParamFamily& fam);

/// Exact test of whether j(T) is constant. Throws AllFibersSingular when the
/// denominator vanishes identically.
bool j_is_constant(const OneParamFamily& fam);

/// Degree criteria for a rational elliptic surface, applied to the short
/// model (A, B) or, for Weierstrass data, to (-27 c4, -54 c6).
bool is_rational_surface(const OneParamFamily& fam);

}  // namespace ecm
