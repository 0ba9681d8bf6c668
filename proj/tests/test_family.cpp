#include <doctest.h>

#include <filesystem>

#include "ecmoments/builtins.hpp"
#include "ecmoments/error.hpp"
#include "ecmoments/family.hpp"
#include "ecmoments/family_spec.hpp"
#include "ecmoments/moments.hpp"

using namespace ecm;
using P = PolynomialZ;

namespace {

P T(unsigned e = 1, long c = 1) { return P::monomial(c, e); }
P K(long c) { return P::constant(c); }

OneParamFamily short_family(P A, P B) { return OneParamFamily("X", ShortForm{std::move(A), std::move(B)}); }

// p minus the affine solution count of the Weierstrass equation at t.
std::int64_t brute_weierstrass_a(const WeierstrassForm& w, std::int64_t t, const Prime& p) {
  const std::int64_t q = p.value();
  auto m = [&](const P& f) { return (std::int64_t)f.eval_mod(t, p); };
  const std::int64_t a1 = m(w.a1), a2 = m(w.a2), a3 = m(w.a3), a4 = m(w.a4), a6 = m(w.a6);
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < q; ++x) {
    const std::int64_t rhs = ((x * x % q * x + a2 * x % q * x + a4 * x + a6) % q);
    for (std::int64_t y = 0; y < q; ++y) {
      const std::int64_t lhs = (y * y + a1 * x % q * y + a3 * y) % q;
      if (lhs == rhs) ++count;
    }
  }
  return q - count;
}

}  // namespace

TEST_CASE("cubic form examples") {
  auto cf = to_cubic_form(short_family(K(-4), K(4)));
  CHECK(cf == CubicForm{K(1), {}, K(-4), K(4)});

  OneParamFamily w1("W", WeierstrassForm{{}, {}, {}, {}, T()});
  CHECK(to_cubic_form(w1) == CubicForm{K(4), {}, {}, T(1, 4)});

  OneParamFamily w2("W", WeierstrassForm{K(1), T(), K(-1), T(1, -1) + K(-1), {}});
  CHECK(to_cubic_form(w2) == CubicForm{K(4), K(1) + T(1, 4), T(1, -4) + K(-6), K(1)});
}

TEST_CASE("discriminant examples") {
  CHECK(discriminant_poly(short_family({}, K(1))) == K(-432));
  CHECK(discriminant_poly(short_family(T(), {})) == T(3, -64));
  CHECK(discriminant_poly(short_family(K(1), {})) == K(-64));
  CHECK_THROWS_AS(short_family({}, {}), Error);
  CHECK_THROWS_AS(OneParamFamily("bad", CubicForm{{}, K(1), K(1), K(1)}), Error);
}

TEST_CASE("cubic discriminant is 16 Delta for Weierstrass data") {
  for (const auto& entry : builtin_families()) {
    auto fam = entry.make(entry.defaults);
    auto* one = std::get_if<OneParamFamily>(&fam);
    if (!one || !std::holds_alternative<WeierstrassForm>(one->source())) continue;
    CAPTURE(entry.name);
    CHECK(cubic_discriminant(to_cubic_form(*one)) == BigInt(16) * discriminant_poly(*one));
  }
}

TEST_CASE("j-invariant constancy") {
  CHECK(j_is_constant(short_family({}, T())));
  CHECK_FALSE(j_is_constant(short_family(T(), K(1))));
  CHECK(j_is_constant(short_family(K(-1), K(3))));
  CHECK(j_is_constant(short_family(T(2, -1), T(3))));  // A^3/B^2 constant
  CHECK_FALSE(j_is_constant(std::get<OneParamFamily>(make_builtin("T1R3"))));
  CHECK_FALSE(j_is_constant(std::get<OneParamFamily>(make_builtin("RANK1"))));
  CHECK_THROWS_AS(j_is_constant(OneParamFamily("c", CubicForm{K(1), T(), {}, {}})), Error);

  // invariant under T -> T + 1
  for (auto [A, B] : {std::pair{T(), K(1)}, std::pair{T(2) + K(3), T(3, 2)}, std::pair{T(2, -1), T(3)},
                      std::pair{P{}, T(1) + K(5)}}) {
    CHECK(j_is_constant(short_family(A, B)) == j_is_constant(short_family(A.shifted(1), B.shifted(1))));
  }
}

TEST_CASE("rational surface criteria") {
  CHECK(is_rational_surface(short_family(T(), T())));
  CHECK_FALSE(is_rational_surface(short_family(K(2), K(3))));
  // deg A = 4, deg B = 6, deg Delta = 12
  CHECK(is_rational_surface(short_family(T(4), T(6))));
  // deg A = 4, deg B = 6 but leading terms cancel in 4A^3 + 27B^2
  CHECK_FALSE(is_rational_surface(short_family(T(4, -3), T(6, 2) + K(1))));
  CHECK_FALSE(is_rational_surface(short_family(T(5), T(1))));
  CHECK(is_rational_surface(std::get<OneParamFamily>(make_builtin("T1R3"))));
  CHECK(is_rational_surface(std::get<OneParamFamily>(make_builtin("RANK1"))));
}

TEST_CASE("counting bijection for Weierstrass builtins") {
  for (const auto& entry : builtin_families()) {
    auto fam = entry.make(entry.defaults);
    auto* one = std::get_if<OneParamFamily>(&fam);
    if (!one) continue;
    const auto* w = std::get_if<WeierstrassForm>(&one->source());
    if (!w) continue;
    const auto cf = to_cubic_form(*one);
    for (auto p : primes_in_range(5, 61)) {
      ResidueTable table(p);
      for (std::int64_t t = 0; t < (std::int64_t)p.value(); ++t) {
        INFO(entry.name, " p=", p.value(), " t=", t);
        REQUIRE(a_coeff(cf, t, table) == brute_weierstrass_a(*w, t, p));
      }
    }
  }
}

TEST_CASE("discriminant vanishes exactly at repeated roots") {
  for (const auto& entry : builtin_families()) {
    auto fam = entry.make(entry.defaults);
    auto* one = std::get_if<OneParamFamily>(&fam);
    if (!one) continue;
    const auto cf = to_cubic_form(*one);
    const auto delta = discriminant_poly(*one);
    for (auto p : primes_in_range(5, 31)) {
      const std::int64_t q = p.value();
      for (std::int64_t t = 0; t < q; ++t) {
        const std::int64_t c3 = cf.c3.eval_mod(t, p), c2 = cf.c2.eval_mod(t, p),
                           c1 = cf.c1.eval_mod(t, p), c0 = cf.c0.eval_mod(t, p);
        auto g = [&](std::int64_t x) { return ((c3 * x % q * x % q * x) + c2 * x % q * x + c1 * x + c0) % q; };
        auto dg = [&](std::int64_t x) { return (3 * c3 % q * x % q * x + 2 * c2 * x + c1) % q; };
        bool repeated = false;
        if (c3 % q != 0) {
          // over the algebraic closure: gcd(g, g') nontrivial; for a cubic a
          // repeated root is always rational, so scan F_p
          for (std::int64_t x = 0; x < q && !repeated; ++x) repeated = g(x) == 0 && dg(x) == 0;
        }
        INFO(entry.name, " p=", q, " t=", t);
        if (c3 % q != 0) CHECK((delta.eval_mod(t, p) == 0) == repeated);
      }
    }
  }
}

TEST_CASE("builtin registry") {
  CHECK(builtin_families().size() >= 14);
  CHECK_THROWS_AS(find_builtin("NOPE"), Error);
  CHECK(find_builtin("T1R2").citation == "Table 1 row 2");
  CHECK_THROWS_AS(make_builtin("S4A", {{"zz", 1}}), Error);
  auto s4a = make_builtin("S4A", {{"d", 3}});
  CHECK(std::get<OneParamFamily>(s4a).source().index() == 2);
  CHECK(parameter_count(make_builtin("BIRCH")) == 2);
  CHECK(parameter_count(make_builtin("T2R1")) == 2);
  CHECK(parameter_count(make_builtin("T1R1")) == 1);
  CHECK_THROWS_AS(weierstrass_model(OneParamFamily("c", CubicForm{T(), K(0), K(1), K(1)})), Error);
}

TEST_CASE("family spec round trip") {
  for (const auto& entry : builtin_families()) {
    auto fam = entry.make(entry.defaults);
    auto spec = family_to_spec(fam);
    CAPTURE(entry.name);
    CHECK(family_from_spec(spec) == fam);
    CHECK(family_from_spec(nlohmann::json::parse(spec.dump())) == fam);
  }
  auto path = std::filesystem::temp_directory_path() / "ecm_spec_roundtrip.json";
  auto rank6 = make_builtin("RANK6");
  save_family_spec(path, rank6);
  CHECK(load_family_spec(path) == rank6);
  std::filesystem::remove(path);
}

TEST_CASE("family spec rejects malformed input") {
  using nlohmann::json;
  auto bad = [](const char* text) { return family_from_spec(json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"name":"X","kind":"one_param","form":"short","A":{"1":"1"},"B":{"0":"x"}})"), Error);
  CHECK_THROWS_AS(bad(R"({"name":"X","kind":"one_param","form":"short","A":{"-1":"1"},"B":{"0":"1"}})"), Error);
  CHECK_THROWS_AS(bad(R"({"name":"X","kind":"one_param","form":"short","A":{"1":"1.5"},"B":{"0":"1"}})"), Error);
  CHECK_THROWS_AS(bad(R"({"name":"X","kind":"one_param","form":"short","A":{"1":"1"},"B":{"0":"1"},"zz":1})"), Error);
  CHECK_THROWS_AS(bad(R"({"name":"X","kind":"three_param"})"), Error);
  CHECK_THROWS_AS(bad(R"({"name":"X","kind":"one_param","form":"short","A":{},"B":{}})"), Error);
  auto ok = bad(R"({"name":"X","kind":"one_param","form":"short","A":{"1":"1"},"B":{"0":1},"declared_rank":0})");
  CHECK(std::get<OneParamFamily>(ok).declared_rank() == 0);
  auto two = bad(R"({"name":"Y","kind":"two_param","form":"short","A":{"1,0":"1"},"B":{},"C":{"0,1":"1"}})");
  CHECK(std::get<TwoParamFamily>(two).C() == PolynomialZ2::term(1, 0, 1));
}
