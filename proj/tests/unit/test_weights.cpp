#include <doctest.h>

#include "minred/weights.hpp"

using namespace minred;

TEST_SUITE("weights") {
  TEST_CASE("weight validity") {
    const Weight w = make_weight({0, 0, 0, 0, 1}, {0, 0, 0, 0, 1});
    CHECK(is_valid_weight(w));
    CHECK_THROWS_AS(make_weight({0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}), MathError);
    CHECK_THROWS_AS(make_weight({0, 0, 0, 0, 1}, {0, 0, 0, 0, 2}), MathError);
    CHECK(is_valid_weight(shift(w, 2)));
    CHECK(format_weight(w) == "(0,0,0,0,1;0,0,0,0,1)");
  }

  TEST_CASE("domination") {
    for (const auto& w : twenty_nine_weight_table()) {
      CHECK(is_valid_weight(w));
      CHECK(dominates(w, w));
    }
    CHECK(twenty_nine_weight_table().size() == 29);
    CHECK(seven_weight_table().size() == 7);
  }

  TEST_CASE("implication between standard inequalities") {
    const StandardInequality a{0, 1, 2, 0}, b{0, 1, 2, 1}, c{1, 2, 0, 0};
    CHECK(implies(a, b));
    CHECK_FALSE(implies(b, a));
    CHECK(implies(c, a));  // r1 <= r2, r2 <= r3 and s1 <= s3
    CHECK(format_inequality(a) == "r1+r2<=s3");
  }

  TEST_CASE("non-domination disjunction is exact") {
    auto holds = [](const StandardInequality& q, const Weight& v) { return v.r[q.i] + v.r[q.j] <= v.s[q.k] + q.m; };
    const auto& table = twenty_nine_weight_table();
    for (const auto& w : table) {
      const auto dis = non_domination_disjunction(w);
      CHECK_FALSE(dis.empty());
      for (const auto& v : table) {
        bool any = false;
        for (const auto& q : dis) any = any || holds(q, v);
        CHECK(any == !dominates(v, w));
      }
    }
  }

  TEST_CASE("seven-weight certificate") {
    const VerificationCertificate c = verify_domination_table(seven_weight_table(), seven_weight_side_conditions());
    CHECK(c.pass);
    CHECK(c.remaining.back() == 0);
    CHECK(c.to_text().find("result = PASS") != std::string::npos);
  }

  TEST_CASE("a deficient table fails with a witness") {
    std::vector<Weight> t = seven_weight_table();
    t.erase(t.begin() + 2);
    VerifyOptions vo;
    vo.jobs = 2;
    const VerificationCertificate c = verify_domination_table(t, seven_weight_side_conditions(), vo);
    CHECK_FALSE(c.pass);
    REQUIRE(c.witness.has_value());
    for (const auto& w : t) CHECK_FALSE(dominates(*c.witness, w));
  }
}
