#include <doctest.h>

#include "minred/generators.hpp"
#include "minred/invariants.hpp"
#include "minred/io.hpp"
#include "minred/minimise.hpp"
#include "minred/singular.hpp"

using namespace minred;

namespace {
const std::string kFixtures = MINRED_FIXTURE_DIR;
}

TEST_SUITE("minimisation") {
  TEST_CASE("saturation") {
    const Model5 h = hesse_model(1, 2);
    CHECK(is_saturated(h, Int(3)));
    Transformation d = Transformation::identity();
    d.A(4, 4) = 3;
    const Model5 m = apply_transformation(d, h);  // one Pfaffian column divisible by 3
    CHECK_FALSE(is_saturated(m, Int(3)));
    const StepResult s = saturate(m, Int(3));
    CHECK(is_saturated(s.model, Int(3)));
    CHECK(s.v_det <= 0);
    CHECK(apply_transformation(s.g, m) == s.model);
  }

  TEST_CASE("size reduction is unimodular") {
    const Scramble sc = scramble(hesse_model(1, 2), 3, 500);
    const StepResult r = size_reduce(sc.model);
    CHECK(abs(r.g.determinant()) == 1);
    CHECK(sup_norm(r.model) < sup_norm(sc.model));
    CHECK(apply_transformation(r.g, sc.model) == r.model);
  }

  TEST_CASE("singular span matches brute force on the cusp orbit") {
    const Model5 cusp = read_model_file(kFixtures + "/cusp.g1").model;
    const SingularSpan a = singular_span(cusp, 2);
    CHECK(a.forms == singular_span_bruteforce(cusp, 2, 3).forms);
    const StepModeReport rep = step_mode(cusp, Int(2), 20);
    CHECK(rep.iterations() == 5);
    CHECK(rep.reached_non_saturated);
    std::vector<int> ks;
    for (const auto& s : rep.steps) ks.push_back(s.span_forms);
    CHECK(ks.front() == a.k());
  }

  TEST_CASE("local minimisation of an inflated model") {
    const Model5 base = make_model(WeierstrassCoefficients{0, 0, 1, -1, 0});
    const Scramble sc = scramble(base, 8, 10, Inflation{Int(5), 3});
    const LocalMinimisation lm = minimise_local(sc.model, Int(5));
    CHECK(lm.level_before == 3);
    CHECK(lm.level_after == 0);
    CHECK(apply_transformation(lm.g, sc.model) == lm.model);
    CHECK(is_integral(lm.model));
    CHECK(invariants(lm.model).disc == invariants(base).disc);
  }

  TEST_CASE("global minimisation of the Wuthrich fixture") {
    const Model5 w = read_model_file(kFixtures + "/wuthrich.g1").model;
    const GlobalMinimisation gm = minimise_global(w, {Int(2)});
    REQUIRE(gm.primes.size() == 1);
    CHECK(gm.primes[0].level_before == 11);
    CHECK(gm.primes[0].level_after == 0);
    CHECK(invariants(gm.model) == gm.invariants);
  }

  TEST_CASE("non-integral input is cleared first") {
    const Model5 h = scale_model(hesse_model(1, 2), Rat(1, 4));
    CHECK_FALSE(is_integral(h));
    const GlobalMinimisation gm = minimise_global(h);
    CHECK(is_integral(gm.model));
    CHECK(gm.invariants.disc == minimise_global(hesse_model(1, 2)).invariants.disc);
  }

  TEST_CASE("unfactored cofactor is reported") {
    const Model5 w = read_model_file(kFixtures + "/wuthrich.g1").model;
    const GlobalMinimisation gm = minimise_global(w, {}, 10);
    CHECK(gm.unfactored != 1);
  }
}
