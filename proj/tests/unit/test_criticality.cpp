#include <doctest.h>

#include "minred/criticality.hpp"
#include "minred/io.hpp"

using namespace minred;

TEST_SUITE("criticality") {
  TEST_CASE("the p = 5 fixture") {
    const Model5 m = read_model_file(std::string(MINRED_FIXTURE_DIR) + "/critical_p5.g1").model;
    CHECK(is_critical_form(m, Int(5)));
    const CriticalLevel lv = critical_level_check(m, Int(5));
    CHECK(lv.level == 2);
    const InsolubilityCertificate cert = insolubility_certificate(m, Int(5));
    CHECK(cert.steps.size() == 5);
    CHECK_FALSE(cert.to_text().empty());
    const CycleReport cyc = detect_critical_cycle(m, Int(5));
    CHECK(cyc.detected);
    CHECK(cyc.period == 5);
    CHECK(cyc.orbit.size() == cyc.steps.size());
  }

  TEST_CASE("random critical models") {
    for (long p : {3L, 7L}) {
      const Model5 m = random_critical_model(Int(p), 42);
      CHECK(critical_pattern_violations(m, Int(p)).empty());
      const CriticalLevel lv = critical_level_check(m, Int(p));
      CHECK(lv.level == 1);
      CHECK(lv.level_one_certified);
    }
  }

  TEST_CASE("pattern violations are reported") {
    const Model5 h = hesse_model(1, 2);
    const auto v = critical_pattern_violations(h, Int(3));
    CHECK_FALSE(v.empty());
    CHECK_FALSE(is_critical_form(h, Int(3)));
    CHECK_THROWS_AS(critical_level_check(h, Int(3)), NotCritical);
    CHECK_THROWS_AS(insolubility_certificate(h, Int(3)), NotCritical);
    CHECK_THROWS_AS(detect_critical_cycle(h, Int(3)), MathError);
  }

  TEST_CASE("shape resultant is nonzero") { CHECK(critical_shape_resultant() != 0); }
}
