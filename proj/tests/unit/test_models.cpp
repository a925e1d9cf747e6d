#include <doctest.h>

#include "minred/generators.hpp"
#include "minred/io.hpp"
#include "minred/models.hpp"

using namespace minred;

TEST_SUITE("models") {
  TEST_CASE("determinant and composition of transformations") {
    std::mt19937_64 rng(5);
    const Transformation g{to_rat(random_unimodular(rng, 20)), rat_identity(5)};
    Transformation h = Transformation::identity();
    h.A(0, 0) = 2;
    h.B(1, 1) = 3;
    CHECK(h.determinant() == 12);
    CHECK(compose(g, h).determinant() == g.determinant() * 12);
    const Model5 m = random_integral_model(3, 4);
    CHECK(apply_transformation(compose(g, h), m) == apply_transformation(g, apply_transformation(h, m)));
    CHECK(apply_transformation(inverse(h), apply_transformation(h, m)) == m);
  }

  TEST_CASE("random unimodular matrices respect the bound") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
      const IntMat U = random_unimodular(rng, 50);
      CHECK(abs(det_int(U)) == 1);
      for (const auto& x : U.a) CHECK(abs(x) <= 50);
    }
  }

  TEST_CASE("inflation raises the determinant valuation by k") {
    const Model5 m = hesse_model(1, 2);
    const Scramble s = scramble(m, 4, 10, Inflation{Int(3), 5});
    CHECK(valuation(s.g.determinant(), Int(3)) == 5);
    CHECK(is_integral(s.model));
  }

  TEST_CASE("Hesse model shape") {
    const Model5 h = hesse_model(2, 3);
    CHECK(sup_norm(h) == 3);
    CHECK(min_valuation(scale_model(h, 8), Int(2)) == 3);
    CHECK(is_zero_model(scale_model(h, 0)));
  }

  TEST_CASE("model text round trip") {
    const Model5 m = random_integral_model(17, 30);
    const ParsedModel p = parse_model(format_model(m));
    CHECK(p.model == m);
    CHECK(p.ring == RingTag::Z);
    const Model5 q = scale_model(m, Rat(1, 3));
    CHECK(parse_model(format_model(q)).model == q);
    CHECK(parse_model(format_model(q)).ring == RingTag::Q);
  }

  TEST_CASE("transformation text round trip") {
    std::mt19937_64 rng(2);
    const Transformation g{to_rat(random_unimodular(rng, 9)), to_rat(random_unimodular(rng, 9))};
    const Transformation h = parse_transformation(format_transformation(g));
    CHECK(h.A == g.A);
    CHECK(h.B == g.B);
  }

  TEST_CASE("parse errors carry line and column") {
    const std::string good = format_model(hesse_model(1, 1));
    try {
      std::string bad = good;
      bad.replace(bad.find("1 3 :"), 5, "1 3 ;");
      parse_model(bad);
      FAIL("no exception");
    } catch (const ParseError& e) {
      CHECK(e.line == 3);
      CHECK(e.column >= 1);
    }
    CHECK_THROWS_AS(parse_model("g1model 4 Z\n"), ParseError);
    CHECK_THROWS_AS(parse_model(""), ParseError);
    std::string frac = good;
    frac.replace(frac.rfind('0'), 1, "1/2");
    CHECK_THROWS_AS(parse_model(frac), ParseError);  // fraction in a Z model
  }

  TEST_CASE("degree 4 and degree 5 models of the same curve") {
    const WeierstrassCoefficients w{0, -1, 1, -10, -20};
    const QI qi = weierstrass_to_deg4(w);
    const Model5 m = deg4_to_deg5(qi);
    CHECK(is_integral(m));
    CHECK_THROWS_AS(weierstrass_to_deg4(WeierstrassCoefficients{0, 0, 0, 0, 0}), SingularModel);
  }
}
