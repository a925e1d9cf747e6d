#include <doctest.h>

#include "minred/generators.hpp"
#include "minred/invariants.hpp"
#include "minred/io.hpp"

using namespace minred;

TEST_SUITE("invariants") {
  TEST_CASE("Hesse (1,1)") {
    const InvariantTriple t = invariants(hesse_model(1, 1));
    CHECK(t.c4 == 496);
    CHECK(t.c6 == 20008);
    CHECK(t.disc == -161051);
    CHECK(t == hesse_invariants(1, 1));
  }

  TEST_CASE("closed forms on rational Hesse parameters") {
    for (const auto& [a, b] : std::vector<std::pair<Rat, Rat>>{{Rat(1, 2), 3}, {-2, Rat(5, 3)}, {7, -1}}) {
      const InvariantTriple t = invariants(hesse_model(a, b));
      CHECK(t == hesse_invariants(a, b));
      CHECK(t.satisfies_syzygy());
    }
  }

  TEST_CASE("unimodular invariance and scaling") {
    const Model5 m = make_model(WeierstrassCoefficients{1, 0, 1, -7, 5});
    const InvariantTriple t = invariants(m);
    const Scramble s = scramble(m, 12, 300);
    CHECK(invariants(s.model) == t);
    Transformation d = Transformation::identity();
    d.B(2, 2) = 2;
    d.A(0, 0) = 3;
    CHECK(invariants(apply_transformation(d, m)) == t.scaled(18));
  }

  TEST_CASE("Weierstrass round trip through make") {
    const WeierstrassCoefficients w{1, 1, 1, -3146, 39049};
    const InvariantTriple t = invariants(make_model(w));
    CHECK(t.c4 == w.c4());
    CHECK(t.c6 == w.c6());
    CHECK(t.disc == w.disc());
    const JacobianResult j = jacobian(make_model(w));
    CHECK_FALSE(j.fallback);
    CHECK(j.w.c4() == w.c4());
    CHECK(j.w.c6() == w.c6());
  }

  TEST_CASE("Kraus lift") {
    const WeierstrassCoefficients w{0, 1, 1, -2, 0};
    CHECK(kraus_lift_exists(w.c4(), w.c6()));
    const WeierstrassCoefficients l = kraus_lift(w.c4(), w.c6());
    CHECK(l.c4() == w.c4());
    CHECK(l.c6() == w.c6());
    CHECK_FALSE(kraus_lift_exists(Int(1), Int(1)));
    CHECK_THROWS_AS(kraus_lift(Int(1), Int(1)), KrausConditionFailed);
    // No integral Weierstrass equation: the Jacobian falls back to the short form.
    const JacobianResult j = jacobian_from_invariants(make_triple(Rat(1), Rat(1729)));
    CHECK(j.fallback);
  }

  TEST_CASE("levels and minimal discriminants") {
    const WeierstrassCoefficients w{0, 0, 0, -1, 0};  // y^2 = x^3 - x, disc 64
    const InvariantTriple t = make_triple(Rat(w.c4()), Rat(w.c6()));
    CHECK(minimal_discriminant_valuation(t, Int(2)) == 6);
    CHECK(level_from_invariants(t.scaled(4), Int(2)).level == 2);
    CHECK(level_from_invariants(t.scaled(4), Int(3)).level == 0);
  }

  TEST_CASE("singular models") {
    CHECK(invariants(hesse_model(0, 1)).disc == 0);  // degenerate but still of degree 5
    CHECK_THROWS_AS(invariants(scale_model(hesse_model(1, 1), 0)), SingularModel);
  }
}
