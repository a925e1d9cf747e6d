#include <doctest.h>

#include "minred/arith.hpp"
#include "minred/fq.hpp"
#include "minred/lll.hpp"
#include "minred/lp.hpp"
#include "minred/matrix.hpp"
#include "minred/ring.hpp"
#include "minred/snf.hpp"
#include "minred/upoly.hpp"

using namespace minred;

TEST_SUITE("rings") {
  TEST_CASE("valuations") {
    CHECK(valuation(Int(96), Int(2)) == 5);
    CHECK(valuation(Rat(9, 250), Int(5)) == -3);
    CHECK(valuation(Rat(0), Int(3)) == kValInf);
    CHECK(is_prime(Int(1000003)));
    CHECK_FALSE(is_prime(Int(1000001)));
    CHECK_THROWS_AS(PAdicContext(Int(12)), MathError);
  }

  TEST_CASE("factor with budget") {
    Int rest;
    // A prime cofactor is recognised without splitting.
    auto ps = factor_with_budget(Int(2 * 2 * 3) * Int(1000003), 1000, rest);
    CHECK(ps == std::vector<Int>{2, 3, 1000003});
    CHECK(rest == 1);
    // Two 40-digit primes are out of reach of a 100-step budget.
    Int p, q;
    mpz_nextprime(p.get_mpz_t(), Int("1000000000000000000000000000000000000000").get_mpz_t());
    mpz_nextprime(q.get_mpz_t(), p.get_mpz_t());
    ps = factor_with_budget(Int(5) * p * q, 100, rest);
    CHECK(ps == std::vector<Int>{5});
    CHECK(rest == p * q);
  }

  TEST_CASE("rational parsing round trip") {
    CHECK(parse_rat("-7/21") == Rat(-1, 3));
    Rat x(5, -10);
    x.canonicalize();
    CHECK(to_string(x) == "-1/2");
    CHECK_THROWS(parse_rat("1/0"));
  }

  TEST_CASE("prime and extension fields") {
    FqField f7(7, 1);
    CHECK(f7.mul(3, 5) == 1);
    CHECK(f7.inv(3) == 5);
    for (uint64_t p : {2u, 3u, 5u})
      for (int k : {2, 3}) {
        FqField F(p, k);
        const uint64_t q = F.order();
        for (uint64_t a = 1; a < q; ++a) {
          REQUIRE(F.mul(a, F.inv(a)) == 1);
          REQUIRE(F.pow(a, q - 1) == 1);
        }
        // Frobenius is additive.
        CHECK(F.frobenius(F.add(1, F.generator())) == F.add(1, F.frobenius(F.generator())));
      }
    CHECK(extension_degree_for(2, 4096) == 12);
    CHECK(extension_degree_for(101, 4096) == 2);
  }

  TEST_CASE("univariate polynomials") {
    const UPoly x = UPoly::x();
    const UPoly f = x * x - UPoly::constant(2);
    const UPoly g = (x - UPoly::constant(1)) * f;
    UPoly q, r;
    divmod(g, f, q, r);
    CHECK(r.is_zero());
    CHECK(q == x - UPoly::constant(1));
    CHECK(monic(gcd(g, f * f)) == f);
    CHECK(is_squarefree(g));
    CHECK_FALSE(is_squarefree(f * f));
    CHECK(resultant(f, x - UPoly::constant(3)) == 7);
    const UPoly h = interpolate({0, 1, 2, 3}, {1, 2, 5, 10});
    CHECK(h == x * x + UPoly::constant(1));
  }

  TEST_CASE("etale algebra arithmetic") {
    const UPoly x = UPoly::x();
    QAlg A(x * x * x - UPoly::constant(Rat(1, 2)));
    const auto t = A.gen();
    const auto t3 = A.mul(t, A.mul(t, t));
    Rat c;
    CHECK(A.is_constant(t3, c));
    CHECK(c == Rat(1, 2));
    const auto u = A.add(A.one(), A.mul(A.from_rat(Rat(3, 7)), t));
    CHECK(A.mul(u, A.inv(u)) == A.one());
    QAlg B((x - UPoly::constant(1)) * (x - UPoly::constant(2)));
    CHECK_THROWS_AS(B.inv(B.sub(B.gen(), B.one())), ZeroDivisor);
  }

  TEST_CASE("exact matrices") {
    RatMat m(3, 3, Rat(0));
    m(0, 0) = 2, m(0, 1) = 1, m(1, 1) = 3, m(2, 0) = 1, m(2, 2) = Rat(1, 2);
    const RatMat inv = rat_inverse(m);
    CHECK(rat_mul(m, inv) == rat_identity(3));
    CHECK(rat_det(m) == 3);
    RatMat sing(2, 3, Rat(0));
    sing(0, 0) = 1, sing(0, 1) = 2, sing(1, 0) = 2, sing(1, 1) = 4;
    CHECK(rank_of(RatRing{}, sing) == 1);
    CHECK(kernel(RatRing{}, sing).cols == 2);
  }

  TEST_CASE("LLL on a skewed lattice") {
    IntMat M(3, 3, Int(0));
    M(0, 0) = 1, M(0, 1) = 1000, M(0, 2) = 999;
    M(1, 1) = 1, M(1, 2) = 1;
    M(2, 2) = 1;
    const IntMat U = lll_columns(M);
    CHECK(abs(det_int(U)) == 1);
    const IntMat R = int_mul(M, U);
    for (const auto& x : R.a) CHECK(abs(x) <= 2);
    RatMat G(2, 2, Rat(0));
    G(0, 0) = 1, G(0, 1) = 100, G(1, 0) = 100, G(1, 1) = 10001;
    const IntMat V = lll_gram(G);
    const RatMat Gr = rat_mul(rat_mul(transpose(to_rat(V)), G), to_rat(V));
    CHECK(Gr(0, 0) == 1);
    CHECK(Gr(1, 1) == 1);
  }

  TEST_CASE("Smith normal form over Z_(p)") {
    IntMat M(3, 3, Int(0));
    M(0, 0) = 4, M(0, 1) = 2, M(1, 1) = 6, M(1, 2) = 8, M(2, 0) = 3, M(2, 2) = 12;
    const SmithForm s = smith_normal_form(M, Int(2));
    CHECK(rat_mul(rat_mul(s.U, to_rat(M)), to_rat(s.V)) == to_rat(s.D));
    CHECK(abs(det_int(s.V)) == 1);
    for (size_t i = 1; i < s.d.size(); ++i) CHECK(s.d[i - 1] <= s.d[i]);
    const ColumnReduction c = p_column_reduce(M, Int(2));
    CHECK(abs(det_int(c.V)) == 1);
  }

  TEST_CASE("exact simplex") {
    // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
    LPProblem lp;
    lp.n = 2;
    lp.objective = {1, 1};
    lp.constraints = {{{1, 2}, Sense::LE, 4}, {{3, 1}, Sense::LE, 6}};
    const LPResult r = simplex_maximize(lp);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == Rat(14, 5));
    for (const auto& c : lp.constraints) CHECK(satisfies(c, r.x));
    lp.constraints.push_back({{1, 1}, Sense::GE, 5});
    CHECK(simplex_maximize(lp).status == LPStatus::Infeasible);
    LPProblem ub;
    ub.n = 2;
    ub.objective = {1, 0};
    ub.constraints = {{{0, 1}, Sense::LE, 1}};
    CHECK(simplex_maximize(ub).status == LPStatus::Unbounded);
  }
}
