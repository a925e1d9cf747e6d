#include "minred/models.hpp"

namespace minred {

Rat Transformation::determinant() const {
  Rat a = rat_det(A);
  return a * a * rat_det(B);
}

bool Transformation::is_integral() const { return minred::is_integral(A) && minred::is_integral(B); }

Transformation compose(const Transformation& g, const Transformation& h) {
  return {rat_mul(g.A, h.A), rat_mul(g.B, h.B)};
}

Transformation inverse(const Transformation& g) { return {rat_inverse(g.A), rat_inverse(g.B)}; }

Model5 apply_transformation(const Transformation& g, const Model5& m) {
  if (rat_det(g.A) == 0 || rat_det(g.B) == 0) throw MathError("transformation is not invertible");
  return apply_transformation(RatRing{}, g.A, g.B, m);
}

Model5 scale_model(const Model5& m, const Rat& s) {
  Model5 r = m;
  for (auto& l : r.e)
    for (auto& c : l) c *= s;
  return r;
}

bool is_integral(const Model5& m) {
  for (const auto& l : m.e)
    for (const auto& c : l)
      if (c.get_den() != 1) return false;
  return true;
}

bool is_zero_model(const Model5& m) {
  for (const auto& l : m.e)
    for (const auto& c : l)
      if (c != 0) return false;
  return true;
}

long min_valuation(const Model5& m, const Int& p) {
  long v = kValInf;
  for (const auto& l : m.e)
    for (const auto& c : l)
      if (c != 0) v = std::min(v, valuation(c, p));
  return v;
}

Rat sup_norm(const Model5& m) {
  Rat s = 0;
  for (const auto& l : m.e)
    for (const auto& c : l) s = std::max<Rat>(s, abs(c));
  return s;
}

Model5T<uint64_t> reduce_mod_p(const Model5& m, const FqField& F) {
  Int p(static_cast<unsigned long>(F.p()));
  Model5T<uint64_t> r;
  for (int q = 0; q < 10; ++q)
    for (int k = 0; k < 5; ++k) {
      const Rat& c = m.e[q][k];
      if (valuation(c, p) < 0) throw MathError("model is not p-integral");
      Int num = c.get_num(), den = c.get_den();
      r.e[q][k] = F.mul(F.from_mpz(num), F.inv(F.from_mpz(den)));
    }
  return r;
}

Model5 hesse_model(const Rat& a, const Rat& b) {
  Model5 m = zero_model(RatRing{});
  m.at(0, 1)[0] = a;
  m.at(0, 2)[1] = b;
  m.at(0, 3)[2] = -b;
  m.at(0, 4)[3] = -a;
  m.at(1, 2)[2] = a;
  m.at(1, 3)[3] = b;
  m.at(1, 4)[4] = -b;
  m.at(2, 3)[4] = a;
  m.at(2, 4)[0] = b;
  m.at(3, 4)[1] = a;
  return m;
}

QI weierstrass_to_deg4(const WeierstrassCoefficients& w) {
  if (w.disc() == 0) throw SingularModel("singular Weierstrass equation");
  QI qi;
  qi.q1.fill(Rat(0));
  qi.q2.fill(Rat(0));
  // u0..u3 are x1..x4
  qi.q1[mono_index(1, 1, 4)] = 1;
  qi.q1[mono_index(0, 3, 4)] = -1;
  qi.q2[mono_index(2, 2, 4)] = 1;
  qi.q2[mono_index(1, 2, 4)] = Rat(w.a1);
  qi.q2[mono_index(0, 2, 4)] = Rat(w.a3);
  qi.q2[mono_index(1, 3, 4)] = -1;
  qi.q2[mono_index(1, 1, 4)] = Rat(-w.a2);
  qi.q2[mono_index(0, 1, 4)] = Rat(-w.a4);
  qi.q2[mono_index(0, 0, 4)] = Rat(-w.a6);
  return qi;
}

Model5 deg4_to_deg5(const QI& qi) {
  if (qi.q1[mono_index(3, 3, 4)] != 0 || qi.q2[mono_index(3, 3, 4)] != 0)
    throw MathError("quadric intersection does not pass through (0:0:0:1)");
  Model5 m = zero_model(RatRing{});
  m.at(0, 1)[4] = 1;
  // alpha_i (row 1) and beta_i (row 2): terms divisible by x_i but not by x_j, j < i.
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      if (a > 2) continue;
      int idx = mono_index(a, b, 4);
      m.at(0, a + 2)[b] += qi.q1[idx];
      m.at(1, a + 2)[b] += qi.q2[idx];
    }
  m.at(3, 4)[0] = 1;   // l1
  m.at(2, 4)[1] = -1;  // -l2
  m.at(2, 3)[2] = 1;   // l3
  return m;
}

}  // namespace minred
