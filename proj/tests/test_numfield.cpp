#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "betauto/error.hpp"
#include "betauto/numfield.hpp"
#include "doctest.h"

using namespace betauto;

namespace {

IntPoly P(std::vector<long long> c) { return make_int_poly(c); }

std::vector<double> sorted_moduli(std::vector<Embedding> const& e) {
  std::vector<double> out;
  for (auto const& x : e) out.push_back(std::abs(x.approx));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("minimal polynomial validation") {
  CHECK_THROWS_AS(MinPoly(P({5})), Error);
  CHECK_THROWS_AS(MinPoly(P({2, 4})), Error);
  try {
    MinPoly(P({1, -2, 1}));
    FAIL("expected not_squarefree");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::not_squarefree);
  }
  CHECK(MinPoly(P({1, -3, 1})).degree() == 2);
}

TEST_CASE("quadratic roots agree with the closed form") {
  auto const emb = compute_embeddings(P({1, -3, 1}), 1e-20);
  REQUIRE(emb.size() == 2);
  auto const m = sorted_moduli(emb);
  CHECK(m[0] == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-14));
  CHECK(m[1] == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-14));
  for (auto const& e : emb) {
    CHECK(e.radius <= 1e-20);
    CHECK(e.modulus.lower() == doctest::Approx(std::abs(e.approx)).epsilon(1e-15));
  }
  int expanding = 0;
  for (auto const& e : emb) expanding += e.cls == EmbeddingClass::expanding;
  CHECK(expanding == 1);
}

TEST_CASE("complex roots of a cubic") {
  // x^3 - x - 1: one real root near 1.3247, a conjugate pair of modulus 1/sqrt(1.3247).
  auto const emb = compute_embeddings(P({-1, -1, 0, 1}), 1e-15);
  REQUIRE(emb.size() == 3);
  double const rho = 1.324717957244746;
  auto const m = sorted_moduli(emb);
  CHECK(m[0] == doctest::Approx(1 / std::sqrt(rho)).epsilon(1e-12));
  CHECK(m[2] == doctest::Approx(rho).epsilon(1e-12));
}

TEST_CASE("unit-circle conjugates block a self-reciprocal base") {
  auto ctx = make_context(P({1, -2, 1, -2, 1}), {P({0}), P({1})});
  CHECK(ctx.self_reciprocal());
  CHECK(ctx.blocked());
  int units = 0;
  for (auto const& e : ctx.embeddings()) units += e.cls == EmbeddingClass::unit;
  CHECK(units == 2);
}

TEST_CASE("base multiplication reduces modulo the minimal polynomial") {
  auto ctx = make_context(P({-1, -1, 1}), {P({0}), P({1})});
  auto beta = ctx.base();
  auto beta2 = fe_mul_base(ctx, beta);
  // β^2 = β + 1
  CHECK(beta2 == ctx.reduce({Rational(1), Rational(1)}));
  auto beta3 = fe_mul_base(ctx, beta2);
  CHECK(beta3 == ctx.reduce({Rational(1), Rational(2)}));
  // |σ(β^3)| at the dominant embedding equals φ^3.
  double const phi = (1 + std::sqrt(5.0)) / 2;
  bool found = false;
  for (std::size_t i = 0; i < ctx.embeddings().size(); ++i) {
    if (ctx.embeddings()[i].cls == EmbeddingClass::expanding) {
      CHECK(fe_abs_at(ctx, beta3, i).mid() == doctest::Approx(std::pow(phi, 3)).epsilon(1e-14));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("integer base behaves like Z") {
  auto ctx = make_context(P({-3, 1}), {P({0}), P({1}), P({3})});
  CHECK(ctx.dim() == 1);
  CHECK_FALSE(ctx.inverted());
  CHECK(ctx.digit_differences().size() == 6);
  auto x = fe_mul_base(ctx, ctx.digits()[1]);
  CHECK(x.coeffs()[0] == 3);
  REQUIRE(ctx.prune_bounds().size() == 1);
  // max|a-b| / (3-1) = 3/2
  CHECK(ctx.prune_bounds()[0].contains(1.5));
  CHECK(mahler_measure(ctx).contains(3.0));
}

TEST_CASE("rational base is inverted") {
  auto ctx = make_context(P({-1, 3}), {P({0}), P({1})});
  CHECK(ctx.inverted());
  CHECK(ctx.variable() == "u");
  // working minpoly of u = 1/β = 3
  CHECK(ctx.minpoly()->coeffs() == P({-3, 1}));
  CHECK_THROWS_AS(make_context(P({-2, 3}), {P({0}), P({1})}), Error);
}

TEST_CASE("inverted digits are rescaled") {
  // 2x^2 - 2x - 1: constant ±1, leading 2, so u = 1/β is a root of x^2 + 2x - 2.
  auto ctx = make_context(P({-1, -2, 2}), {P({0}), P({1}), P({0, 1})});
  CHECK(ctx.inverted());
  // u^1 · 1 = u, u^1 · (1/u) = 1
  CHECK(ctx.digits()[1] == ctx.reduce({Rational(0), Rational(1)}));
  CHECK(ctx.digits()[2] == ctx.reduce({Rational(1)}));
}

TEST_CASE("digit validation") {
  try {
    make_context(P({-3, 1}), {});
    FAIL("expected empty_digits");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::empty_digits);
  }
  try {
    // β = 3, so the digits 3 and β coincide.
    make_context(P({-3, 1}), {P({3}), P({0, 1})});
    FAIL("expected duplicate_digits");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::duplicate_digits);
  }
}

TEST_CASE("transcendental context") {
  auto ctx = make_context(std::nullopt, {P({0}), P({1}), P({0, 1})});
  CHECK(ctx.mode() == Mode::transcendental);
  CHECK(ctx.dim() == 0);
  auto const& pb = ctx.poly_bounds();
  CHECK(pb.max_degree == 1);
  REQUIRE(pb.coeff_bound.size() == 2);
  CHECK(pb.coeff_bound[0] == 2);
  CHECK(pb.coeff_bound[1] == 1);
  auto x = fe_mul_base(ctx, ctx.digits()[2]);
  CHECK(x.coeffs() == RatPoly{Rational(0), Rational(0), Rational(1)});
  CHECK(ctx.names()[2] == "X");
}

TEST_CASE("context from json") {
  auto doc = nlohmann::json::parse(R"({"beta": {"minpoly": [-3, 1]}, "digits": [[0], [1], [3]]})");
  auto ctx = context_from_json(doc);
  CHECK(ctx.alphabet_size() == 3);
  CHECK(ctx.names() == std::vector<std::string>{"0", "1", "3"});
  auto t = nlohmann::json::parse(R"({"beta": "transcendental", "digits": [[0], [1], [0, 1]], "names": ["a","b","c"]})");
  CHECK(context_from_json(t).names()[2] == "c");
  try {
    context_from_json(nlohmann::json::parse(R"({"digits": []})"));
    FAIL("expected malformed_json");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::malformed_json);
  }
}
