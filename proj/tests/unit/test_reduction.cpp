#include <doctest.h>

#include "minred/generators.hpp"
#include "minred/invariants.hpp"
#include "minred/io.hpp"
#include "minred/minimise.hpp"
#include "minred/reduction.hpp"

using namespace minred;

TEST_SUITE("reduction") {
  TEST_CASE("Hessian on Hesse parameters") {
    const HesseParameters h = hessian_on_hesse(1, 1);
    CHECK(h.a == 76);
    CHECK(h.b == -56);
    const HesseParameters z = hessian_on_hesse(1, 0);
    CHECK(z.a == -1);
    CHECK(z.b == 0);
  }

  TEST_CASE("transported Hessian is covariant") {
    const Scramble sc = scramble(hesse_model(1, 2), 5, 20);
    const HessianHandle h = HessianHandle::transported(sc.g, 1, 2);
    const Model5 H = hessian(sc.model, h);
    const HesseParameters hp = hessian_on_hesse(1, 2);
    // det g = +-1, so H(g Phi) = g H(Phi).
    CHECK(H == apply_transformation(sc.g, hesse_model(hp.a, hp.b)));
    CHECK_THROWS_AS(hessian(hesse_model(1, 3), h), MathError);
  }

  TEST_CASE("hint files round trip") {
    const Scramble sc = scramble(hesse_model(2, -1), 6, 30);
    const HessianHandle h = HessianHandle::transported(sc.g, 2, -1);
    const HessianHandle back = parse_hessian_hint(format_hessian_hint(h));
    CHECK(back.kind == HessianHandle::Kind::TransportedFromHesse);
    CHECK(back.a == 2);
    CHECK(back.b == -1);
    CHECK(back.g.A == sc.g.A);
    CHECK(back.g.B == sc.g.B);
    const HessianHandle c = parse_hessian_hint(read_file(std::string(MINRED_FIXTURE_DIR) + "/wuthrich.hint"));
    CHECK(c.kind == HessianHandle::Kind::Coordinates);
    CHECK_THROWS_AS(parse_hessian_hint("hessian-hint sideways\n"), ParseError);
  }

  TEST_CASE("numeric kernels") {
    PrecisionScope scope(128);
    // (z - 1)(z - 2)(z + 3)
    const std::vector<Complex> f{Complex(6), Complex(-7), Complex(0), Complex(1)};
    const auto roots = poly_roots(f);
    REQUIRE(roots.size() == 3);
    Real sum_re = 0;
    for (const auto& r : roots) {
      CHECK(abs(poly_eval(f, r)) < Real(1e-30));
      CHECK(abs(r.im) < Real(1e-30));
      sum_re += r.re;
    }
    CHECK(abs(sum_re) < Real(1e-30));
    RMat s(3, 3, Real(0));
    s(0, 0) = 2, s(1, 1) = 3, s(2, 2) = 4, s(0, 1) = s(1, 0) = 1;
    std::vector<Real> vals;
    RMat vecs;
    symmetric_eigen(s, vals, vecs);
    CHECK(abs(vals[0] + vals[1] + vals[2] - 9) < Real(1e-30));
    CHECK(vals[0] <= vals[1]);
    CHECK(abs(vals[2] - 4) < Real(1e-30));
  }

  TEST_CASE("Gram of a Hesse model is the identity") {
    const GramReport gr = compute_gram(hesse_model(1, 2), HessianHandle::transported(Transformation::identity(), 1, 2));
    CHECK(gr.points == 30);
    CHECK(gr.real_tuples == 2);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) CHECK(abs(gr.gram(i, j) - Real(i == j ? 1 : 0)) < Real(1e-20));
  }

  TEST_CASE("reduction of a scrambled Hesse model") {
    const Scramble sc = scramble(hesse_model(-2, 3), 21, 1000);
    const ReductionResult r = reduce(sc.model, HessianHandle::transported(sc.g, -2, 3));
    REQUIRE(r.reduced);
    CHECK(sup_norm(r.model) <= 3);
    CHECK(r.warnings.empty());
    CHECK(apply_transformation(r.g, sc.model) == r.model);
  }

  TEST_CASE("without a Hessian the model comes back unchanged with a warning") {
    const Model5 m = random_integral_model(4, 3);
    const ReductionResult r = reduce(m, HessianHandle::none());
    CHECK_FALSE(r.reduced);
    CHECK(r.model == m);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("no Hessian available") != std::string::npos);
    CHECK_THROWS_AS(reduce(scale_model(m, Rat(1, 2)), HessianHandle::none()), MathError);
  }
}
